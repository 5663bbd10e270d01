#include "fspan/span.hpp"

#include <map>
#include <unordered_set>

namespace fspan {

namespace {

std::string fresh_name(std::unordered_set<std::string>& used, std::string base) {
  if (used.insert(base).second) return base;
  int k = 2;
  for (;;) {
    std::string cand = base + "#" + std::to_string(k++);
    if (used.insert(cand).second) return cand;
  }
}

}  // namespace

ValidationReport validate_span(const Span& s) {
  ValidationReport rep;
  if (!s.apex || !s.source || !s.target) {
    rep.add("span has an unset groupoid");
    return rep;
  }
  if (!same_boundary(s.left.source, s.apex)) rep.add("left leg does not start at the apex");
  if (!same_boundary(s.left.target, s.target)) rep.add("left leg does not land in the target");
  if (!same_boundary(s.right.source, s.apex)) rep.add("right leg does not start at the apex");
  if (!same_boundary(s.right.target, s.source)) rep.add("right leg does not land in the source");
  for (const auto& p : validate_functor(s.left).problems) rep.add("left leg: " + p);
  for (const auto& p : validate_functor(s.right).problems) rep.add("right leg: " + p);
  return rep;
}

bool same_span(const Span& a, const Span& b) {
  return same_boundary(a.source, b.source) && same_boundary(a.target, b.target) &&
         same_boundary(a.apex, b.apex) && a.left.ob == b.left.ob && a.left.mor == b.left.mor &&
         a.right.ob == b.right.ob && a.right.mor == b.right.mor;
}

Span identity_span(const GroupoidPtr& g) {
  Span s;
  s.source = g;
  s.target = g;
  s.apex = g;
  s.left = identity_functor(g);
  s.right = identity_functor(g);
  return s;
}

Span zero_span(const GroupoidPtr& source, const GroupoidPtr& target) {
  Span s;
  s.source = source;
  s.target = target;
  s.apex = discrete_groupoid({});
  s.left.source = s.apex;
  s.left.target = target;
  s.right.source = s.apex;
  s.right.target = source;
  return s;
}

Span reverse_span(const Span& s) {
  Span r;
  r.source = s.target;
  r.target = s.source;
  r.apex = s.apex;
  r.left = s.right;
  r.right = s.left;
  return r;
}

int PullbackData::find_object(int x, int y, int f) const {
  std::uint64_t key = (static_cast<std::uint64_t>(x) * ob_stride + y) * ob_stride + f;
  auto it = ob_key.find(key);
  return it == ob_key.end() ? -1 : it->second;
}

int PullbackData::find_morphism(int src_obj, int a, int b) const {
  std::uint64_t key = (static_cast<std::uint64_t>(src_obj) * mor_stride + a) * mor_stride + b;
  auto it = mor_key.find(key);
  return it == mor_key.end() ? -1 : it->second;
}

PullbackData weak_pullback(const GFunctor& j, const GFunctor& g, const Limits& lim) {
  if (!same_boundary(j.target, g.target)) {
    throw StructuralError("weak pullback needs two functors into the same groupoid");
  }
  const FiniteGroupoid& X = *g.source;
  const FiniteGroupoid& Y = *j.source;
  const FiniteGroupoid& B = *g.target;

  PullbackData pd;
  pd.ob_stride = static_cast<std::uint64_t>(std::max(Y.n_objects(), B.n_morphisms())) + 1;
  pd.mor_stride = static_cast<std::uint64_t>(std::max(X.n_morphisms(), Y.n_morphisms())) + 1;

  // Enumerate the triples and pre-count the morphisms so oversize results
  // fail before any table is allocated.
  std::size_t mor_total = 0;
  for (int x = 0; x < X.n_objects(); ++x) {
    for (int y = 0; y < Y.n_objects(); ++y) {
      std::size_t fan = X.out_at(x).size() * Y.out_at(y).size();
      for (int f : B.hom(g.ob[x], j.ob[y])) {
        pd.ob_triple.push_back({x, y, f});
        mor_total += fan;
      }
    }
  }
  if (mor_total > lim.max_morphisms) {
    throw BudgetExceeded("weak pullback would have " + std::to_string(mor_total) +
                         " morphisms, over the limit of " + std::to_string(lim.max_morphisms));
  }

  GroupoidBuilder bld(lim);
  std::unordered_set<std::string> used_ob, used_mor;
  for (std::size_t k = 0; k < pd.ob_triple.size(); ++k) {
    const auto& t = pd.ob_triple[k];
    std::uint64_t key = (static_cast<std::uint64_t>(t[0]) * pd.ob_stride + t[1]) * pd.ob_stride + t[2];
    pd.ob_key.emplace(key, static_cast<int>(k));
    bld.add_object(fresh_name(used_ob, "(" + X.object_name(t[0]) + "," + Y.object_name(t[1]) +
                                           ";" + B.morphism(t[2]).name + ")"));
  }

  std::vector<std::vector<int>> out_mors(pd.ob_triple.size());
  std::vector<int> identity_of(pd.ob_triple.size(), -1);
  for (std::size_t k = 0; k < pd.ob_triple.size(); ++k) {
    const auto& t = pd.ob_triple[k];
    for (int a : X.out_at(t[0])) {
      for (int b : Y.out_at(t[1])) {
        int f2 = B.mul(B.mul(B.inv(g.mor[a]), t[2]), j.mor[b]);
        int dst = pd.find_object(X.dst(a), Y.dst(b), f2);
        int m = bld.add_morphism(
            fresh_name(used_mor, "(" + X.morphism(a).name + "," + Y.morphism(b).name + ")@" +
                                     std::to_string(k)),
            static_cast<int>(k), dst);
        pd.mor_pair.push_back({a, b});
        std::uint64_t key =
            (static_cast<std::uint64_t>(k) * pd.mor_stride + a) * pd.mor_stride + b;
        pd.mor_key.emplace(key, m);
        out_mors[k].push_back(m);
        if (a == X.identity_at(t[0]) && b == Y.identity_at(t[1])) identity_of[k] = m;
      }
    }
  }
  for (std::size_t k = 0; k < pd.ob_triple.size(); ++k) {
    bld.set_identity(static_cast<int>(k), identity_of[k]);
  }
  for (std::size_t k = 0; k < pd.ob_triple.size(); ++k) {
    for (int m : out_mors[k]) {
      int mid = -1;
      {
        // dst of m, recomputed from the pair to avoid a builder query
        const auto& p = pd.mor_pair[m];
        int f2 = B.mul(B.mul(B.inv(g.mor[p[0]]), pd.ob_triple[k][2]), j.mor[p[1]]);
        mid = pd.find_object(X.dst(p[0]), Y.dst(p[1]), f2);
      }
      for (int m2 : out_mors[mid]) {
        int aa = X.mul(pd.mor_pair[m][0], pd.mor_pair[m2][0]);
        int bb = Y.mul(pd.mor_pair[m][1], pd.mor_pair[m2][1]);
        bld.set_compose(m, m2, pd.find_morphism(static_cast<int>(k), aa, bb));
      }
    }
  }
  pd.apex = bld.build();

  pd.p1.source = pd.apex;
  pd.p1.target = g.source;
  pd.p2.source = pd.apex;
  pd.p2.target = j.source;
  pd.p1.ob.resize(pd.ob_triple.size());
  pd.p2.ob.resize(pd.ob_triple.size());
  for (std::size_t k = 0; k < pd.ob_triple.size(); ++k) {
    pd.p1.ob[k] = pd.ob_triple[k][0];
    pd.p2.ob[k] = pd.ob_triple[k][1];
  }
  pd.p1.mor.resize(pd.mor_pair.size());
  pd.p2.mor.resize(pd.mor_pair.size());
  for (std::size_t m = 0; m < pd.mor_pair.size(); ++m) {
    pd.p1.mor[m] = pd.mor_pair[m][0];
    pd.p2.mor[m] = pd.mor_pair[m][1];
  }
  return pd;
}

ComposedSpan compose_spans_data(const Span& after, const Span& first, const Limits& lim) {
  if (!same_boundary(first.target, after.source)) {
    throw StructuralError("span composition: target of the first factor differs from source of the second");
  }
  ComposedSpan out;
  out.pull = weak_pullback(after.right, first.left, lim);
  out.span.source = first.source;
  out.span.target = after.target;
  out.span.apex = out.pull.apex;
  out.span.right = compose_functors(out.pull.p1, first.right);
  out.span.left = compose_functors(out.pull.p2, after.left);
  return out;
}

Span compose_spans(const Span& after, const Span& first, const Limits& lim) {
  return compose_spans_data(after, first, lim).span;
}

Span direct_sum_spans(const Span& s1, const Span& s2, const Limits& lim) {
  if (!same_boundary(s1.source, s2.source) || !same_boundary(s1.target, s2.target)) {
    throw StructuralError("direct sum needs spans with equal boundaries");
  }
  Span out;
  out.source = s1.source;
  out.target = s1.target;
  out.apex = disjoint_union(s1.apex, s2.apex, "0:", "1:", lim);

  auto glue = [&](const GFunctor& f1, const GFunctor& f2, const GroupoidPtr& tgt) {
    GFunctor f;
    f.source = out.apex;
    f.target = tgt;
    f.ob.reserve(f1.ob.size() + f2.ob.size());
    f.ob.insert(f.ob.end(), f1.ob.begin(), f1.ob.end());
    f.ob.insert(f.ob.end(), f2.ob.begin(), f2.ob.end());
    f.mor.reserve(f1.mor.size() + f2.mor.size());
    f.mor.insert(f.mor.end(), f1.mor.begin(), f1.mor.end());
    f.mor.insert(f.mor.end(), f2.mor.begin(), f2.mor.end());
    return f;
  };
  out.left = glue(s1.left, s2.left, s1.target);
  out.right = glue(s1.right, s2.right, s1.source);
  return out;
}

namespace {

void require_parallel(const Span& s1, const Span& s2, const char* what) {
  if (!same_boundary(s1.source, s2.source) || !same_boundary(s1.target, s2.target)) {
    throw StructuralError(std::string(what) + " needs spans with equal boundaries");
  }
}

}  // namespace

std::optional<SpanWitness> span_iso(const Span& s1, const Span& s2, const Limits& lim) {
  require_parallel(s1, s2, "span isomorphism check");
  std::vector<LegConstraint> legs = {{&s1.left, &s2.left}, {&s1.right, &s2.right}};
  auto h = find_constrained_iso(s1.apex, s2.apex, legs, lim);
  if (!h) return std::nullopt;
  SpanWitness w;
  w.mode = "strict";
  w.h = std::move(*h);
  const FiniteGroupoid& T = *s1.target;
  const FiniteGroupoid& S = *s1.source;
  w.nat_left.resize(s1.apex->n_objects());
  w.nat_right.resize(s1.apex->n_objects());
  for (int x = 0; x < s1.apex->n_objects(); ++x) {
    w.nat_left[x] = T.identity_at(s1.left.ob[x]);
    w.nat_right[x] = S.identity_at(s1.right.ob[x]);
  }
  return w;
}

std::optional<SpanWitness> span_equiv(const Span& s1, const Span& s2, const Limits& lim) {
  require_parallel(s1, s2, "span equivalence check");
  const FiniteGroupoid& A1 = *s1.apex;
  const FiniteGroupoid& A2 = *s2.apex;
  const FiniteGroupoid& T = *s1.target;
  const FiniteGroupoid& S = *s1.source;
  const GFunctor& L1 = s1.left;
  const GFunctor& R1 = s1.right;
  const GFunctor& L2 = s2.left;
  const GFunctor& R2 = s2.right;

  const auto& cls1 = A1.iso_classes();
  const auto& cls2 = A2.iso_classes();
  int nc = static_cast<int>(cls1.classes.size());
  if (nc != static_cast<int>(cls2.classes.size())) return std::nullopt;

  SearchGuard guard(lim);

  // A class pair is compatible when one automorphism group isomorphism
  // conjugates both legs through a single pair (u, v) of comparison
  // morphisms. The certificate is kept for witness assembly.
  struct Cert {
    std::vector<int> theta;  // indexed like the rep1 loop list
    int u = -1;
    int v = -1;
  };
  std::map<std::pair<int, int>, Cert> certs;
  std::vector<std::vector<int>> adj(nc);
  for (int i = 0; i < nc; ++i) {
    int rep1 = cls1.representative[i];
    LoopGroup ga = loop_group(A1, rep1);
    for (int jc = 0; jc < nc; ++jc) {
      int rep2 = cls2.representative[jc];
      LoopGroup gb = loop_group(A2, rep2);
      if (ga.n() != gb.n()) continue;
      bool found = false;
      Cert cert;
      for (int u : T.hom(L1.ob[rep1], L2.ob[rep2])) {
        for (int v : S.hom(R1.ob[rep1], R2.ob[rep2])) {
          guard.tick();
          auto constraint = [&](int a, int b) {
            return T.mul(T.mul(T.inv(u), L1.mor[a]), u) == L2.mor[b] &&
                   S.mul(S.mul(S.inv(v), R1.mor[a]), v) == R2.mor[b];
          };
          enumerate_group_isos(
              ga, gb, constraint,
              [&](const std::vector<int>& theta) {
                cert = {theta, u, v};
                found = true;
                return false;
              },
              guard);
          if (found) break;
        }
        if (found) break;
      }
      if (found) {
        adj[i].push_back(jc);
        certs[{i, jc}] = std::move(cert);
      }
    }
  }
  auto match = perfect_matching(nc, nc, adj);
  if (!match) return std::nullopt;

  SpanWitness w;
  w.mode = "equivalence";
  w.h.source = s1.apex;
  w.h.target = s2.apex;
  w.h.ob.resize(A1.n_objects());
  w.h.mor.resize(A1.n_morphisms());
  w.nat_left.resize(A1.n_objects());
  w.nat_right.resize(A1.n_objects());

  // Loop position lookup per class of A1.
  std::vector<std::unordered_map<int, int>> loop_pos(nc);
  for (int i = 0; i < nc; ++i) {
    const auto& loops = A1.loops_at(cls1.representative[i]);
    for (std::size_t p = 0; p < loops.size(); ++p) loop_pos[i].emplace(loops[p], static_cast<int>(p));
  }

  for (int x = 0; x < A1.n_objects(); ++x) {
    int c = cls1.class_of[x];
    const Cert& cert = certs.at({c, (*match)[c]});
    w.h.ob[x] = cls2.representative[(*match)[c]];
    w.nat_left[x] = T.mul(T.inv(L1.mor[A1.connecting(x)]), cert.u);
    w.nat_right[x] = S.mul(S.inv(R1.mor[A1.connecting(x)]), cert.v);
  }
  for (int m = 0; m < A1.n_morphisms(); ++m) {
    int x = A1.src(m), y = A1.dst(m);
    int c = cls1.class_of[x];
    const Cert& cert = certs.at({c, (*match)[c]});
    int gamma = A1.mul(A1.mul(A1.connecting(x), m), A1.inv(A1.connecting(y)));
    w.h.mor[m] = cert.theta[loop_pos[c].at(gamma)];
  }

  // Insurance: the assembled witness must be a functor and both tables
  // must satisfy their naturality squares.
  if (!validate_functor(w.h).ok()) return std::nullopt;
  for (int m = 0; m < A1.n_morphisms(); ++m) {
    int x = A1.src(m), y = A1.dst(m);
    if (T.mul(L1.mor[m], w.nat_left[y]) != T.mul(w.nat_left[x], L2.mor[w.h.mor[m]])) {
      return std::nullopt;
    }
    if (S.mul(R1.mor[m], w.nat_right[y]) != S.mul(w.nat_right[x], R2.mor[w.h.mor[m]])) {
      return std::nullopt;
    }
  }
  return w;
}

}  // namespace fspan
