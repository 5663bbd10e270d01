#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fspan/calculus.hpp"
#include "fspan/fermion.hpp"
#include "fspan/span.hpp"
#include "fspan/two_morphism.hpp"

using namespace fspan;

namespace {

bool cells_equiv(const TwoMorphism& a, const TwoMorphism& b) {
  return two_morphism_eq(a, b, CellEqMode::equivalence).has_value();
}

}  // namespace

TEST_CASE("chains are memoized composites of the elementary spans") {
  SpanCalculus calc(build_fermion_model("Z2"));
  const Span& empty = calc.chain("");
  CHECK(same_span(empty, identity_span(calc.model().psi)));
  CHECK(&calc.chain("") == &empty);

  CHECK(same_span(calc.chain("-"), calc.model().f));
  CHECK(same_span(calc.chain("+"), calc.model().f_dag));

  const Span& c2 = calc.chain("+-");
  CHECK(same_span(c2, compose_spans(calc.model().f_dag, calc.model().f)));
  CHECK(validate_span(calc.chain("-+-")).ok());

  CHECK_THROWS_AS(calc.chain("+a"), StructuralError);
}

TEST_CASE("joins are valid transports onto the canonical chain") {
  for (const char* spec : {"Z2", "Z3"}) {
    SpanCalculus calc(build_fermion_model(spec));
    const char* words[] = {"", "-", "+", "-+", "+-", "-+-"};
    for (const char* d1 : words) {
      for (const char* d2 : words) {
        std::string w1 = d1, w2 = d2;
        if (w1.size() + w2.size() > 4) continue;
        const Transport& t = calc.join(w1, w2);
        CHECK(validate_transport(t).ok());
        CHECK(same_span(t.from, compose_spans(calc.chain(w1), calc.chain(w2))));
        CHECK(same_span(t.to, calc.chain(w1 + w2)));
      }
    }
  }
}

TEST_CASE("generator cells land on canonical chain boundaries") {
  SpanCalculus calc(build_fermion_model("Z3"));
  TwoMorphism eta = calc.generator_cell("eta");
  CHECK(validate_2morphism(eta).ok());
  CHECK(same_span(eta.from, calc.chain("")));
  CHECK(same_span(eta.to, calc.chain("+-")));

  TwoMorphism eps = calc.generator_cell("eps");
  CHECK(same_span(eps.from, calc.chain("-+")));
  CHECK(same_span(eps.to, calc.chain("")));

  CHECK(same_span(calc.generator_cell("etadag").from, calc.chain("+-")));
  CHECK(same_span(calc.generator_cell("epsdag").to, calc.chain("-+")));
  CHECK_THROWS_AS(calc.generator_cell("mystery"), StructuralError);
}

TEST_CASE("identity, zero, and sum cells validate on any chain") {
  SpanCalculus calc(build_fermion_model("Z2"));
  TwoMorphism idc = calc.identity_cell("-+");
  CHECK(validate_2morphism(idc).ok());

  TwoMorphism z = calc.zero_cell("-+", "-+");
  CHECK(validate_2morphism(z).ok());
  CHECK(z.inner->n_objects() == 0);

  TwoMorphism s = calc.sum(idc, z);
  CHECK(validate_2morphism(s).ok());
  CHECK(cells_equiv(s, idc));

  TwoMorphism doubled = calc.sum(idc, idc);
  CHECK(!cells_equiv(doubled, idc));
}

TEST_CASE("tensor whiskers cells onto concatenated words") {
  SpanCalculus calc(build_fermion_model("Z2"));
  TwoMorphism left = calc.identity_cell("-");
  TwoMorphism right = calc.identity_cell("+");
  TwoMorphism prod = calc.tensor(left, {"-", "-"}, right, {"+", "+"});
  CHECK(validate_2morphism(prod).ok());
  CHECK(same_span(prod.from, calc.chain("-+")));
  CHECK(same_span(prod.to, calc.chain("-+")));
  CHECK(cells_equiv(prod, calc.identity_cell("-+")));

  // Whiskering the unit cell by an identity strand.
  TwoMorphism eta = calc.generator_cell("eta");
  TwoMorphism wh = calc.tensor(calc.identity_cell("-"), {"-", "-"}, eta, {"", "+-"});
  CHECK(validate_2morphism(wh).ok());
  CHECK(same_span(wh.from, calc.chain("-")));
  CHECK(same_span(wh.to, calc.chain("-+-")));
}

TEST_CASE("the snake composites collapse to identity cells") {
  for (const char* spec : {"Z1", "Z2", "Z3", "S3"}) {
    SpanCalculus calc(build_fermion_model(spec));
    TwoMorphism step1 =
        calc.tensor(calc.identity_cell("-"), {"-", "-"}, calc.generator_cell("eta"), {"", "+-"});
    TwoMorphism step2 =
        calc.tensor(calc.generator_cell("eps"), {"-+", ""}, calc.identity_cell("-"), {"-", "-"});
    TwoMorphism snake = calc.vert(step2, step1);
    CHECK(validate_2morphism(snake).ok());
    CHECK(same_span(snake.from, calc.chain("-")));
    CHECK(same_span(snake.to, calc.chain("-")));
    CHECK(cells_equiv(snake, calc.identity_cell("-")));
  }
}
