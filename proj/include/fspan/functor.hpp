#pragma once

#include <vector>

#include "fspan/core.hpp"
#include "fspan/groupoid.hpp"

namespace fspan {

// Object map + morphism map between two finite groupoids. Shares the
// groupoids it points at; cheap to copy.
struct GFunctor {
  GroupoidPtr source;
  GroupoidPtr target;
  std::vector<int> ob;   // per source object
  std::vector<int> mor;  // per source morphism

  int on_ob(int x) const { return ob[x]; }
  int on_mor(int f) const { return mor[f]; }
};

GFunctor identity_functor(const GroupoidPtr& g);

// "first then second"; requires second.source to be the same groupoid as
// first.target (same instance or structurally equal).
GFunctor compose_functors(const GFunctor& first, const GFunctor& second);

// Checks table shapes, endpoint preservation, identities and composition
// on every composable pair of the source.
ValidationReport validate_functor(const GFunctor& f);

bool same_functor(const GFunctor& a, const GFunctor& b);

// True when the two share the instance or are structurally equal; used by
// every operation that glues functors along a common groupoid.
bool same_boundary(const GroupoidPtr& a, const GroupoidPtr& b);

}  // namespace fspan
