#include "fspan/functor.hpp"

#include <numeric>

namespace fspan {

bool same_boundary(const GroupoidPtr& a, const GroupoidPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_groupoid(*a, *b);
}

GFunctor identity_functor(const GroupoidPtr& g) {
  GFunctor f;
  f.source = g;
  f.target = g;
  f.ob.resize(g->n_objects());
  std::iota(f.ob.begin(), f.ob.end(), 0);
  f.mor.resize(g->n_morphisms());
  std::iota(f.mor.begin(), f.mor.end(), 0);
  return f;
}

GFunctor compose_functors(const GFunctor& first, const GFunctor& second) {
  if (!same_boundary(first.target, second.source)) {
    throw StructuralError("functor composition: middle groupoids differ");
  }
  GFunctor out;
  out.source = first.source;
  out.target = second.target;
  out.ob.resize(first.ob.size());
  for (std::size_t x = 0; x < first.ob.size(); ++x) out.ob[x] = second.ob[first.ob[x]];
  out.mor.resize(first.mor.size());
  for (std::size_t f = 0; f < first.mor.size(); ++f) out.mor[f] = second.mor[first.mor[f]];
  return out;
}

ValidationReport validate_functor(const GFunctor& f) {
  ValidationReport rep;
  const FiniteGroupoid& s = *f.source;
  const FiniteGroupoid& t = *f.target;
  if (static_cast<int>(f.ob.size()) != s.n_objects() ||
      static_cast<int>(f.mor.size()) != s.n_morphisms()) {
    throw StructuralError("functor tables have the wrong shape");
  }
  for (int v : f.ob) {
    if (v < 0 || v >= t.n_objects()) throw StructuralError("functor object image out of range");
  }
  for (int v : f.mor) {
    if (v < 0 || v >= t.n_morphisms()) throw StructuralError("functor morphism image out of range");
  }

  for (int m = 0; m < s.n_morphisms(); ++m) {
    if (t.src(f.mor[m]) != f.ob[s.src(m)] || t.dst(f.mor[m]) != f.ob[s.dst(m)]) {
      rep.add("endpoints not preserved on " + s.morphism(m).name);
    }
  }
  for (int x = 0; x < s.n_objects(); ++x) {
    if (f.mor[s.identity_at(x)] != t.identity_at(f.ob[x])) {
      rep.add("identity not preserved at " + s.object_name(x));
    }
  }
  for (int x = 0; x < s.n_objects(); ++x) {
    for (int a : s.in_at(x)) {
      for (int b : s.out_at(x)) {
        int c = s.mul(a, b);
        if (c == -1) {
          rep.add("source composition has no entry for (" + s.morphism(a).name +
                  ", " + s.morphism(b).name + ")");
          continue;
        }
        if (t.mul(f.mor[a], f.mor[b]) != f.mor[c]) {
          rep.add("composition not preserved on (" + s.morphism(a).name + ", " +
                  s.morphism(b).name + ")");
        }
      }
    }
  }
  return rep;
}

bool same_functor(const GFunctor& a, const GFunctor& b) {
  return same_boundary(a.source, b.source) && same_boundary(a.target, b.target) &&
         a.ob == b.ob && a.mor == b.mor;
}

}  // namespace fspan
