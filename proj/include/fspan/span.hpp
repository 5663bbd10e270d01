#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fspan/core.hpp"
#include "fspan/functor.hpp"
#include "fspan/groupoid.hpp"
#include "fspan/iso.hpp"

namespace fspan {

// Span of groupoids, read as a morphism from source to target: the right
// leg points at the source, the left leg at the target. Composition glues
// the left leg of the earlier factor to the right leg of the later one.
struct Span {
  GroupoidPtr source;
  GroupoidPtr target;
  GroupoidPtr apex;
  GFunctor left;   // apex -> target
  GFunctor right;  // apex -> source
};

ValidationReport validate_span(const Span& s);

// Structural equality: boundaries and apex agree (instance or table), and
// both leg tables match entry for entry.
bool same_span(const Span& a, const Span& b);

Span identity_span(const GroupoidPtr& g);

// Empty apex; degroupoidifies to the zero map.
Span zero_span(const GroupoidPtr& source, const GroupoidPtr& target);

// Legs swapped: a span from A to B becomes one from B to A.
Span reverse_span(const Span& s);

// Weak pullback of j: Y -> B against g: X -> B. Objects are the triples
// (x, y, f) with f: g(x) -> j(y) in B; every pair (a out of x, b out of y)
// is a morphism, landing on the transported triple. p1 and p2 project to
// X and Y.
struct PullbackData {
  GroupoidPtr apex;
  GFunctor p1;  // apex -> X
  GFunctor p2;  // apex -> Y
  std::vector<std::array<int, 3>> ob_triple;  // per apex object: x, y, f
  std::vector<std::array<int, 2>> mor_pair;   // per apex morphism: a, b

  // -1 when the triple or pair is not present.
  int find_object(int x, int y, int f) const;
  int find_morphism(int src_obj, int a, int b) const;

  // Lookup tables, filled by weak_pullback. Keys pack the arguments with
  // the strides below; exact, no collisions.
  std::unordered_map<std::uint64_t, int> ob_key;
  std::unordered_map<std::uint64_t, int> mor_key;
  std::uint64_t ob_stride = 1, mor_stride = 1;
};

PullbackData weak_pullback(const GFunctor& j, const GFunctor& g, const Limits& lim = {});

// Composite with provenance: `after` is applied second. The apex is the
// weak pullback of after.right against first.left over the middle
// groupoid; p1 projects to first.apex, p2 to after.apex.
struct ComposedSpan {
  Span span;
  PullbackData pull;
};

ComposedSpan compose_spans_data(const Span& after, const Span& first, const Limits& lim = {});
Span compose_spans(const Span& after, const Span& first, const Limits& lim = {});

// Disjoint union of apexes over equal boundaries.
Span direct_sum_spans(const Span& s1, const Span& s2, const Limits& lim = {});

// Sameness certificate for parallel spans. Strict mode: h is a
// leg-commuting isomorphism of apexes and both transformation tables hold
// identities. Equivalence mode: h collapses each apex component onto a
// representative and nat_left / nat_right are the comparison morphisms
// L1(x) -> L2(h x) and R1(x) -> R2(h x); both tables satisfy the
// naturality squares.
struct SpanWitness {
  std::string mode;  // "strict" or "equivalence"
  GFunctor h;        // s1.apex -> s2.apex
  std::vector<int> nat_left;   // per s1.apex object, morphism of the target
  std::vector<int> nat_right;  // per s1.apex object, morphism of the source
};

// Leg-commuting apex isomorphism, or nothing.
std::optional<SpanWitness> span_iso(const Span& s1, const Span& s2, const Limits& lim = {});

// Class-by-class matching of apex components: matched classes must admit
// an automorphism group isomorphism conjugating both legs through a single
// pair of comparison morphisms. Subsumes span_iso up to equivalence of
// apexes.
std::optional<SpanWitness> span_equiv(const Span& s1, const Span& s2, const Limits& lim = {});

}  // namespace fspan
