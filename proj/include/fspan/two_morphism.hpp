#pragma once

#include <optional>
#include <vector>

#include "fspan/core.hpp"
#include "fspan/functor.hpp"
#include "fspan/groupoid.hpp"
#include "fspan/span.hpp"

namespace fspan {

// Cell between two parallel spans: an inner groupoid mapping into both
// apexes, plus comparison tables filling the leg triangles. mu[z] lives in
// the shared target and runs from.left(S z) -> to.left(R z); nu[z] lives
// in the shared source. Both tables are natural in z; validate_2morphism
// checks that.
struct TwoMorphism {
  Span from;
  Span to;
  GroupoidPtr inner;
  GFunctor S;  // inner -> from.apex
  GFunctor R;  // inner -> to.apex
  std::vector<int> mu;  // per inner object, morphism of the target groupoid
  std::vector<int> nu;  // per inner object, morphism of the source groupoid

  // The cell viewed as a span between the apexes it connects.
  Span inner_span() const;
};

ValidationReport validate_2morphism(const TwoMorphism& c);

TwoMorphism identity_2(const Span& s);

// Reverses the cell: from and to swap, S and R swap, the comparison
// tables invert entrywise.
TwoMorphism dagger_2(const TwoMorphism& c);

// Vertical composite: `first` runs P => Q, `after` runs Q => O; the two
// must carry structurally identical middle spans. The composite inner is
// the weak pullback of after.S against first.R over the middle apex.
TwoMorphism vert_compose_2(const TwoMorphism& after, const TwoMorphism& first,
                           const Limits& lim = {});

// Horizontal composite: `inner_cell` sits over spans A -> B, `outer` over
// B -> C; the result sits over the span composites, outer factor applied
// second.
TwoMorphism horiz_compose_2(const TwoMorphism& outer, const TwoMorphism& inner_cell,
                            const Limits& lim = {});

// Sum of two cells between the same pair of spans: disjoint union of the
// inner groupoids, tables copied sidewise.
TwoMorphism direct_sum_2(const TwoMorphism& a, const TwoMorphism& b, const Limits& lim = {});

enum class CellEqMode { strict, equivalence };

// Sameness of two cells, ignoring the comparison tables unless
// check_coherence is set (then the witness must also carry mu and nu into
// each other). Strict mode wants structurally identical boundaries and a
// leg-commuting isomorphism of inner groupoids; equivalence mode compares
// the inner spans up to equivalence and, for merely equivalent boundaries,
// transports one cell along a boundary witness first.
std::optional<SpanWitness> two_morphism_eq(const TwoMorphism& a, const TwoMorphism& b,
                                           CellEqMode mode, bool check_coherence = false,
                                           const Limits& lim = {});

// Rebracketing data between parallel composite spans: an apex functor
// plus per-object comparison morphisms for both legs (dl in the target,
// dr in the source, both natural).
struct Transport {
  Span from;
  Span to;
  GFunctor q;  // from.apex -> to.apex
  std::vector<int> dl;  // per from.apex object: from.left(x) -> to.left(q x)
  std::vector<int> dr;  // per from.apex object: from.right(x) -> to.right(q x)
};

ValidationReport validate_transport(const Transport& t);

Transport identity_transport(const Span& s);

Transport compose_transports(const Transport& first, const Transport& second);

// compose(compose(k, h), l) -> compose(k, compose(h, l)); all composites
// are rebuilt internally, which is safe because span composition is
// deterministic.
Transport associator(const Span& k, const Span& h, const Span& l, const Limits& lim = {});

// compose(identity, h) -> h.
Transport left_unitor(const Span& h, const Limits& lim = {});

// compose(k, identity) -> k.
Transport right_unitor(const Span& k, const Limits& lim = {});

// Whiskers a transport t: P -> P' to compose(e, P) -> compose(e, P').
Transport lift_left(const Span& e, const Transport& t, const Limits& lim = {});

// Replace a cell's boundary along a transport whose `from` equals that
// boundary structurally. The comparison tables absorb the transport's leg
// morphisms.
TwoMorphism retarget_from(const TwoMorphism& c, const Transport& t);
TwoMorphism retarget_to(const TwoMorphism& c, const Transport& t);

// Same cell with a skeletal inner groupoid: the inner is replaced by one
// object per iso class carrying the representative's loops, with S, R, mu
// and nu restricted along the inclusion of representatives. Composites of
// cells grow multiplicatively in the inner groupoid, so compressing after
// each step keeps long verification chains inside the morphism budget.
// Equal to the input under equivalence-mode two_morphism_eq.
TwoMorphism compress_2(const TwoMorphism& c, const Limits& lim = {});

}  // namespace fspan
