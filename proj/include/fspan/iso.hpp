#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fspan/core.hpp"
#include "fspan/functor.hpp"
#include "fspan/groupoid.hpp"

namespace fspan {

// Automorphism group of one object, with its ambient groupoid for the
// multiplication. Elements are morphism ids.
struct LoopGroup {
  const FiniteGroupoid* g = nullptr;
  int object = -1;
  std::vector<int> elems;

  int n() const { return static_cast<int>(elems.size()); }
  int id() const { return g->identity_at(object); }
  int mul(int a, int b) const { return g->mul(a, b); }
  int inv(int a) const { return g->inv(a); }
  int order_of(int a) const;
};

LoopGroup loop_group(const FiniteGroupoid& g, int x);

// Greedy generating set (lowest unreached element first) plus a breadth
// first decomposition of every element as parent * generator, so that a
// choice of generator images extends to the whole group in one pass.
struct GenDecomp {
  std::vector<int> gens;                       // morphism ids
  std::vector<int> order;                      // all elements, identity first
  std::vector<std::pair<int, int>> parent;     // per order position: (parent position, gen index)
};

GenDecomp decompose(const LoopGroup& g);

// Visits every group isomorphism g1 -> g2 that satisfies the per-element
// constraint. theta is indexed like g1.elems and holds g2 morphism ids.
// visit returning false stops the enumeration; the function returns false
// when stopped early.
bool enumerate_group_isos(
    const LoopGroup& g1, const LoopGroup& g2,
    const std::function<bool(int, int)>& constraint,
    const std::function<bool(const std::vector<int>&)>& visit,
    SearchGuard& guard);

std::optional<std::vector<int>> find_group_iso(const LoopGroup& g1, const LoopGroup& g2,
                                               const Limits& lim = {});

// Pair of functors with a common target; a constrained iso h must satisfy
// p2(h(-)) == p1(-) on objects and morphisms.
struct LegConstraint {
  const GFunctor* p1 = nullptr;
  const GFunctor* p2 = nullptr;
};

// Backtracking search for a groupoid isomorphism g1 -> g2 commuting with
// every leg constraint, pruned by class counts, automorphism orders and
// leg images. Deterministic: equal inputs yield equal witnesses.
std::optional<GFunctor> find_constrained_iso(const GroupoidPtr& g1, const GroupoidPtr& g2,
                                             const std::vector<LegConstraint>& legs,
                                             const Limits& lim = {});

std::optional<GFunctor> groupoid_iso(const GroupoidPtr& g1, const GroupoidPtr& g2,
                                     const Limits& lim = {});

// Skeletal groupoid (one object per class, loops of the representative)
// plus the retraction built from the precomputed connecting morphisms.
std::pair<GroupoidPtr, GFunctor> skeleton(const GroupoidPtr& g, const Limits& lim = {});

struct EquivWitness {
  std::vector<int> class_map;               // per class of g1: class of g2
  std::vector<std::vector<int>> aut_iso;    // per class of g1: rep-loop ids of g2,
                                            // indexed like the g1 rep's loop list
};

std::optional<EquivWitness> groupoid_equivalence(const GroupoidPtr& g1,
                                                 const GroupoidPtr& g2,
                                                 const Limits& lim = {});

// Maximum bipartite matching (Kuhn); returns a full left-to-right matching
// or nothing. Deterministic for fixed adjacency order.
std::optional<std::vector<int>> perfect_matching(int n_left, int n_right,
                                                 const std::vector<std::vector<int>>& adj);

}  // namespace fspan
