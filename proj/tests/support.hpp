#pragma once

// Shared builders for randomized span and functor tests. Groupoids built
// here are disjoint unions of "codiscrete x group" components: component c
// has `width` objects, all isomorphic, with hom(x, y) a torsor over the
// component's group. That family is closed under the constructions the
// tests exercise and makes functor images easy to randomize while staying
// honestly functorial.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fspan/functor.hpp"
#include "fspan/group.hpp"
#include "fspan/groupoid.hpp"
#include "fspan/span.hpp"

namespace fspan::testing {

struct Component {
  GroupTable group;
  int width = 1;
};

struct Built {
  GroupoidPtr g;
  std::vector<Component> comps;
  std::vector<int> ob_base;   // first object index per component
  std::vector<int> mor_base;  // first morphism index per component
};

inline int ob_of(const Built& b, int c, int x) { return b.ob_base[c] + x; }

// Morphism (x, g, y) of component c: from object x to object y with group
// label g. Composition multiplies labels: (x,g,y);(y,h,z) = (x, gh, z).
inline int mor_of(const Built& b, int c, int x, int g, int y) {
  int n = b.comps[c].group.n();
  int w = b.comps[c].width;
  return b.mor_base[c] + (x * w + y) * n + g;
}

inline Built make_groupoid(std::vector<Component> comps, const Limits& lim = {}) {
  Built out;
  out.comps = std::move(comps);
  GroupoidBuilder b(lim);
  for (std::size_t c = 0; c < out.comps.size(); ++c) {
    const Component& comp = out.comps[c];
    out.ob_base.push_back(c == 0 ? 0 : out.ob_base[c - 1] + out.comps[c - 1].width);
    std::string tag = "c" + std::to_string(c);
    for (int x = 0; x < comp.width; ++x) b.add_object(tag + "o" + std::to_string(x));
  }
  for (std::size_t c = 0; c < out.comps.size(); ++c) {
    const Component& comp = out.comps[c];
    int n = comp.group.n();
    std::string tag = "c" + std::to_string(c);
    out.mor_base.push_back(
        c == 0 ? 0 : out.mor_base[c - 1] +
                         out.comps[c - 1].width * out.comps[c - 1].width * out.comps[c - 1].group.n());
    for (int x = 0; x < comp.width; ++x) {
      for (int y = 0; y < comp.width; ++y) {
        for (int g = 0; g < n; ++g) {
          b.add_morphism(tag + "m" + std::to_string(x) + "_" + std::to_string(g) + "_" +
                             std::to_string(y),
                         out.ob_base[c] + x, out.ob_base[c] + y);
        }
      }
    }
  }
  for (std::size_t c = 0; c < out.comps.size(); ++c) {
    const Component& comp = out.comps[c];
    int n = comp.group.n();
    for (int x = 0; x < comp.width; ++x) {
      b.set_identity(out.ob_base[c] + x, out.mor_base[c] + (x * comp.width + x) * n);
    }
    for (int x = 0; x < comp.width; ++x) {
      for (int y = 0; y < comp.width; ++y) {
        for (int z = 0; z < comp.width; ++z) {
          for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h) {
              b.set_compose(out.mor_base[c] + (x * comp.width + y) * n + g,
                            out.mor_base[c] + (y * comp.width + z) * n + h,
                            out.mor_base[c] + (x * comp.width + z) * n + comp.group.mul(g, h));
            }
          }
        }
      }
    }
  }
  out.g = b.build();
  return out;
}

// All group homomorphisms a -> b as full image tables. Elements of a are
// decomposed greedily over generators (breadth-first closure recording one
// product decomposition per element), then generator images are enumerated
// with an order-divisibility cut and each completed table is verified.
inline std::vector<std::vector<int>> all_homs(const GroupTable& a, const GroupTable& b) {
  int n = a.n();
  std::vector<int> gens;
  std::vector<int> order;             // closure order, starts at the identity
  std::vector<std::pair<int, int>> parent(n, {-1, -1});  // element, gen slot
  std::vector<char> known(n, 0);
  known[0] = 1;
  order.push_back(0);
  while (static_cast<int>(order.size()) < n) {
    int fresh = -1;
    for (int e = 0; e < n; ++e) {
      if (!known[e]) {
        fresh = e;
        break;
      }
    }
    gens.push_back(fresh);
    known[fresh] = 1;
    parent[fresh] = {0, static_cast<int>(gens.size()) - 1};
    order.push_back(fresh);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        int prod = a.mul(order[i], gens[gi]);
        if (!known[prod]) {
          known[prod] = 1;
          parent[prod] = {order[i], static_cast<int>(gi)};
          order.push_back(prod);
        }
      }
    }
  }

  std::vector<std::vector<int>> found;
  std::vector<int> img(gens.size(), -1);
  auto build_and_check = [&]() {
    std::vector<int> theta(n, -1);
    theta[0] = 0;
    for (int e : order) {
      if (e == 0) continue;
      auto [p, gi] = parent[e];
      theta[e] = b.mul(theta[p], img[gi]);
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (theta[a.mul(x, y)] != b.mul(theta[x], theta[y])) return;
      }
    }
    found.push_back(theta);
  };
  auto rec = [&](auto&& self, std::size_t gi) -> void {
    if (gi == gens.size()) {
      build_and_check();
      return;
    }
    int ord = a.order_of(gens[gi]);
    for (int cand = 0; cand < b.n(); ++cand) {
      if (ord % b.order_of(cand) != 0) continue;
      img[gi] = cand;
      self(self, gi + 1);
    }
  };
  rec(rec, 0);
  return found;
}

// Uniformly random functor between two built groupoids: each source
// component picks a target component, a group homomorphism, and per-object
// images plus conjugating labels. F((x,g,y)) = (ox, lx^-1 phi(g) ly, oy).
inline GFunctor random_functor(const Built& from, const Built& to, std::mt19937& rng) {
  GFunctor f;
  f.source = from.g;
  f.target = to.g;
  f.ob.assign(from.g->n_objects(), -1);
  f.mor.assign(from.g->n_morphisms(), -1);
  for (std::size_t c = 0; c < from.comps.size(); ++c) {
    const GroupTable& ga = from.comps[c].group;
    int d = std::uniform_int_distribution<int>(0, static_cast<int>(to.comps.size()) - 1)(rng);
    const GroupTable& gb = to.comps[d].group;
    auto homs = all_homs(ga, gb);
    const std::vector<int>& phi =
        homs[std::uniform_int_distribution<std::size_t>(0, homs.size() - 1)(rng)];
    int w = from.comps[c].width;
    std::vector<int> obj(w), lab(w);
    for (int x = 0; x < w; ++x) {
      obj[x] = std::uniform_int_distribution<int>(0, to.comps[d].width - 1)(rng);
      lab[x] = std::uniform_int_distribution<int>(0, gb.n() - 1)(rng);
    }
    for (int x = 0; x < w; ++x) f.ob[ob_of(from, static_cast<int>(c), x)] = ob_of(to, d, obj[x]);
    for (int x = 0; x < w; ++x) {
      for (int y = 0; y < w; ++y) {
        for (int g = 0; g < ga.n(); ++g) {
          int lbl = gb.mul(gb.mul(gb.inv(lab[x]), phi[g]), lab[y]);
          f.mor[mor_of(from, static_cast<int>(c), x, g, y)] =
              mor_of(to, d, obj[x], lbl, obj[y]);
        }
      }
    }
  }
  return f;
}

// Small pool of groups with automorphism-friendly sizes for random apexes.
inline std::vector<GroupTable> small_group_pool() {
  return {cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4),
          symmetric_group(3)};
}

inline Built random_built(std::mt19937& rng, int max_comps = 2, int max_width = 2) {
  auto pool = small_group_pool();
  int nc = std::uniform_int_distribution<int>(1, max_comps)(rng);
  std::vector<Component> comps;
  for (int c = 0; c < nc; ++c) {
    const GroupTable& g =
        pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    int w = std::uniform_int_distribution<int>(1, max_width)(rng);
    comps.push_back({g, w});
  }
  return make_groupoid(std::move(comps));
}

inline Span random_span(const Built& source, const Built& target, const Built& apex,
                        std::mt19937& rng) {
  Span s;
  s.source = source.g;
  s.target = target.g;
  s.apex = apex.g;
  s.left = random_functor(apex, target, rng);
  s.right = random_functor(apex, source, rng);
  return s;
}

}  // namespace fspan::testing
