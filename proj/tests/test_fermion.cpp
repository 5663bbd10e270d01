#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "fspan/fermion.hpp"
#include "fspan/group.hpp"
#include "fspan/span.hpp"

using namespace fspan;

namespace {

std::filesystem::path write_temp(const std::string& stem, const std::string& body) {
  std::filesystem::path p = std::filesystem::temp_directory_path() / stem;
  std::ofstream out(p);
  out << body;
  return p;
}

}  // namespace

TEST_CASE("group specs parse into the expected tables") {
  CHECK(parse_group_spec("Z1").n() == 1);
  CHECK(parse_group_spec("Z6").n() == 6);
  CHECK(parse_group_spec("S3").n() == 6);
  CHECK(parse_group_spec("S4").n() == 24);

  GroupTable perm = parse_group_spec("perm:(1 2 3);(1 2)");
  CHECK(perm.n() == 6);
  check_group_axioms(perm);

  CHECK_THROWS_AS(parse_group_spec("Z0"), StructuralError);
  CHECK_THROWS_AS(parse_group_spec("Z25"), StructuralError);
  CHECK_THROWS_AS(parse_group_spec("S5"), StructuralError);
  CHECK_THROWS_AS(parse_group_spec("Zx"), StructuralError);
  CHECK_THROWS_AS(parse_group_spec("Q8"), StructuralError);
  CHECK_THROWS_AS(parse_group_spec("perm:"), StructuralError);
  CHECK_THROWS_AS(parse_group_spec("perm:(1 2 3 4 5);(1 2)"), BudgetExceeded);
}

TEST_CASE("cayley files load with the identity renumbered to zero") {
  auto p = write_temp("fspan_z3_cayley.txt", "1 2 0\n2 0 1\n0 1 2\n");
  GroupTable t = parse_group_spec("cayley:" + p.string());
  CHECK(t.n() == 3);
  check_group_axioms(t);
  // Identity was row 2 of the input; names keep the original numbering.
  CHECK(t.names[0] == "x2");
  CHECK(t.order_of(1) == 3);
  std::filesystem::remove(p);

  auto bad = write_temp("fspan_bad_cayley.txt", "0 1 2 3 4\n");
  CHECK_THROWS_AS(parse_group_spec("cayley:" + bad.string()), StructuralError);
  std::filesystem::remove(bad);
  CHECK_THROWS_AS(parse_group_spec("cayley:/nonexistent/table.txt"), StructuralError);
}

TEST_CASE("the state groupoid has a vacuum and an occupied class") {
  FermionModel m = build_fermion_model("S3");
  CHECK(m.psi->n_objects() == 2);
  CHECK(m.psi->n_morphisms() == 12);
  CHECK(m.psi->object_name(m.object_a) == "A");
  CHECK(m.psi->object_name(m.object_astar) == "A*");
  CHECK(m.psi->iso_classes().classes.size() == 2);
  CHECK(m.psi->cardinality() == Rational(1, 3));

  // Occupied-side loops carry starred names and compose in reversed
  // order; the relabeling g -> (g^-1)* only lands functorially there.
  CHECK(validate_functor(m.t_star).ok());
  CHECK(validate_functor(m.i_incl).ok());
  for (int g = 0; g < m.group.n(); ++g) {
    CHECK(m.psi->morphism(m.t_star.mor[g]).name == m.group.names[m.group.inv(g)] + "*");
  }

  FermionModel big = build_fermion_model("S4");
  CHECK(validate_functor(big.t_star).ok());
  CHECK(big.psi->cardinality() == Rational(1, 12));
}

TEST_CASE("model spans and states validate") {
  FermionModel m = build_fermion_model("Z3");
  CHECK(validate_span(m.f).ok());
  CHECK(validate_span(m.f_dag).ok());
  CHECK(validate_span(m.state0).ok());
  CHECK(validate_span(m.state1).ok());
  CHECK(m.state0.source == m.unit);
  CHECK(m.state0.target == m.psi);
  CHECK(same_span(m.f_dag, reverse_span(m.f)));
}

TEST_CASE("creation and annihilation act on states up to equivalence") {
  for (const char* spec : {"Z1", "Z2", "Z3", "S3"}) {
    FermionModel m = build_fermion_model(spec);

    Span raised = compose_spans(m.f_dag, m.state0);
    auto w_up = span_equiv(raised, m.state1);
    REQUIRE(w_up.has_value());

    Span lowered = compose_spans(m.f, m.state1);
    CHECK(span_equiv(lowered, m.state0).has_value());

    // Annihilating the vacuum and doubly occupying both give the empty
    // span: there are no morphisms between the two classes.
    CHECK(compose_spans(m.f, m.state0).apex->n_objects() == 0);
    CHECK(compose_spans(m.f_dag, m.state1).apex->n_objects() == 0);
  }
}
