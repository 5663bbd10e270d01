#pragma once

#include <string>

#include "fspan/core.hpp"
#include "fspan/group.hpp"
#include "fspan/groupoid.hpp"
#include "fspan/span.hpp"
#include "fspan/two_morphism.hpp"

namespace fspan {

// Accepted forms: "Z<n>" (cyclic, n <= 24), "S<n>" (symmetric, n <= 4),
// "cayley:<path>" (text file, square table of 0-based indices, row = left
// factor), "perm:<gens>" (cycle-notation generators separated by ';',
// closure capped at 24 elements).
GroupTable parse_group_spec(const std::string& spec);

// The model over a gauge group G. psi has a vacuum object A and an
// occupied object A*, each with loop group G; the loops at A* compose in
// reversed order, which is exactly what makes the occupied-side labeling
// g -> (g^-1)* a functor. h is the one-object groupoid of G.
//
// f (annihilation) points its right leg at A* via t_star and its left leg
// at A via i_incl; f_dag is the reverse. eta and eps are the unit and
// counit cells of the adjunction, built over the composite spans
// compose(f_dag, f) and compose(f, f_dag).
struct FermionModel {
  GroupTable group;
  std::string group_spec;
  std::string t_convention = "inverse-star";

  GroupoidPtr psi;
  GroupoidPtr h;
  GroupoidPtr unit;  // one object, trivial loop group

  GFunctor i_incl;  // h -> psi, loop g at A
  GFunctor t_star;  // h -> psi, loop (g^-1)* at A*

  Span f;
  Span f_dag;
  Span state0;  // point over A
  Span state1;  // point over A*

  TwoMorphism eta;      // id_psi => compose(f_dag, f)
  TwoMorphism eps;      // compose(f, f_dag) => id_psi
  TwoMorphism eta_dag;
  TwoMorphism eps_dag;

  int object_a = -1;       // object indices in psi
  int object_astar = -1;
};

FermionModel build_fermion_model(const GroupTable& group, const std::string& spec,
                                 const Limits& lim = {});
FermionModel build_fermion_model(const std::string& spec, const Limits& lim = {});

}  // namespace fspan
