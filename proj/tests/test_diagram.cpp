#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "fspan/calculus.hpp"
#include "fspan/diagram.hpp"
#include "fspan/fermion.hpp"
#include "fspan/matrix.hpp"

using namespace fspan;

namespace {

NormalForm nf(const std::string& text, DiagMode mode) {
  return normalize_diagram(text, mode);
}

bool eq(const std::string& a, const std::string& b, DiagMode mode) {
  return diagram_eq(*parse_diagram(a), *parse_diagram(b), mode);
}

}  // namespace

TEST_CASE("parsing respects precedence and round-trips") {
  CHECK(diagram_to_text(*parse_diagram("id(-) * eta ; eps * id(-)")) ==
        "((id(-) * eta) ; (eps * id(-)))");
  CHECK(diagram_to_text(*parse_diagram("2 eta + eps ; epsdag")) ==
        "((2 eta) + (eps ; epsdag))");
  CHECK(diagram_to_text(*parse_diagram("id(1)")) == "id(1)");
  CHECK(diagram_to_text(*parse_diagram("id()")) == "id(1)");
  CHECK(diagram_to_text(*parse_diagram("x(+,-)")) == "x(+,-)");
  CHECK(diagram_to_text(*parse_diagram("(eta)")) == "eta");

  // The rendered form parses back to itself.
  std::string t = diagram_to_text(*parse_diagram("3 (eta ; etadag) + id(1)"));
  CHECK(diagram_to_text(*parse_diagram(t)) == t);

  CHECK_THROWS_AS(parse_diagram("zeta"), StructuralError);
  CHECK_THROWS_AS(parse_diagram("eta eps"), StructuralError);
  CHECK_THROWS_AS(parse_diagram("id(+"), StructuralError);
  CHECK_THROWS_AS(parse_diagram("x(+)"), StructuralError);
  CHECK_THROWS_AS(parse_diagram("(eta"), StructuralError);
  CHECK_THROWS_AS(parse_diagram(""), StructuralError);

  try {
    parse_diagram("eta ; zz");
    CHECK(false);
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()).find("position 6") != std::string::npos);
  }
}

TEST_CASE("types follow the strand arithmetic") {
  auto ty = [](const std::string& s) { return type_of(*parse_diagram(s)); };
  CHECK(ty("eta").dom == "");
  CHECK(ty("eta").cod == "+-");
  CHECK(ty("eps").dom == "-+");
  CHECK(ty("etadag").dom == "+-");
  CHECK(ty("epsdag").cod == "-+");
  CHECK(ty("x(+,-)").dom == "+-");
  CHECK(ty("x(+,-)").cod == "-+");
  CHECK(ty("id(-+) * eta").dom == "-+");
  CHECK(ty("id(-+) * eta").cod == "-++-");
  CHECK(ty("eta ; etadag").dom == "");
  CHECK(!ty("eta ; etadag").zero_object);
  CHECK(ty("id(++)").zero_object);
  CHECK(ty("eta * id(-)").zero_object);  // cod "+--"

  CHECK_THROWS_AS(type_of(*parse_diagram("eta ; eps")), StructuralError);
  CHECK_THROWS_AS(type_of(*parse_diagram("eta + eps")), StructuralError);
}

TEST_CASE("free normalization evaluates circles as polynomial factors") {
  NormalForm cw = nf("eta ; etadag", DiagMode::free);
  REQUIRE(cw.terms.size() == 1);
  CHECK(cw.terms[0].pairing.empty());
  CHECK(cw.terms[0].coeff == std::vector<long long>{0, 1});

  NormalForm ccw = nf("epsdag ; eps", DiagMode::free);
  REQUIRE(ccw.terms.size() == 1);
  CHECK(ccw.terms[0].coeff == std::vector<long long>{1, -1});

  NormalForm both = nf("(eta ; etadag) + (epsdag ; eps)", DiagMode::free);
  REQUIRE(both.terms.size() == 1);
  CHECK(both.terms[0].coeff == std::vector<long long>{1});
  CHECK(eq("(eta ; etadag) + (epsdag ; eps)", "id(1)", DiagMode::free));

  // Nested and side-by-side circle pairs agree here: both are c(1 - c).
  std::string nested = "eta ; (id(+) * (epsdag ; eps) * id(-)) ; etadag";
  std::string beside = "(eta ; etadag) * (epsdag ; eps)";
  NormalForm n1 = nf(nested, DiagMode::free);
  REQUIRE(n1.terms.size() == 1);
  CHECK(n1.terms[0].coeff == std::vector<long long>{0, 1, -1});
  CHECK(eq(nested, beside, DiagMode::free));
}

TEST_CASE("zigzag composites reduce to plain wires") {
  for (DiagMode mode : {DiagMode::free, DiagMode::span}) {
    CHECK(eq("(id(-) * eta) ; (eps * id(-))", "id(-)", mode));
    CHECK(eq("(eta * id(+)) ; (id(+) * eps)", "id(+)", mode));
    CHECK(eq("(id(+) * epsdag) ; (etadag * id(+))", "id(+)", mode));
    CHECK(eq("(epsdag * id(-)) ; (id(-) * etadag)", "id(-)", mode));
  }
}

TEST_CASE("cap over cup equals parallel wires with no circle factor") {
  for (DiagMode mode : {DiagMode::free, DiagMode::span}) {
    CHECK(eq("eps ; epsdag", "id(-+)", mode));
    CHECK(eq("etadag ; eta", "id(+-)", mode));
  }
  NormalForm e = nf("eps ; epsdag", DiagMode::free);
  REQUIRE(e.terms.size() == 1);
  CHECK(e.terms[0].coeff == std::vector<long long>{1});
}

TEST_CASE("crossings and zero objects normalize to zero") {
  for (DiagMode mode : {DiagMode::free, DiagMode::span}) {
    CHECK(nf("x(+,-)", mode).terms.empty());
    CHECK(nf("x(-,-)", mode).terms.empty());
    CHECK(nf("id(++)", mode).terms.empty());
    CHECK(nf("eta * id(-)", mode).terms.empty());
    CHECK(nf("(x(+,-)) ; (x(-,+))", mode).terms.empty());
    CHECK(nf("0 eta", mode).terms.empty());
  }
}

TEST_CASE("scalars and sums act linearly") {
  NormalForm three = nf("3 eta", DiagMode::free);
  REQUIRE(three.terms.size() == 1);
  CHECK(three.terms[0].coeff == std::vector<long long>{3});
  CHECK(eq("eta + eta", "2 eta", DiagMode::free));
  CHECK(eq("2 (eta + eta)", "4 eta", DiagMode::span));
  CHECK(eq("2 eta ; etadag", "2 (eta ; etadag)", DiagMode::free));
  CHECK(!eq("2 eta", "3 eta", DiagMode::free));
}

TEST_CASE("the span reading depends on which region a circle floats in") {
  // A clockwise circle keeps its neighborhood only on the occupied side.
  CHECK(eq("id(-) * (eta ; etadag)", "id(-)", DiagMode::span));
  CHECK(nf("(eta ; etadag) * id(-)", DiagMode::span).terms.empty());
  CHECK(eq("(epsdag ; eps) * id(-)", "id(-)", DiagMode::span));
  CHECK(nf("id(-) * (epsdag ; eps)", DiagMode::span).terms.empty());

  // Free circles float: the value is c, and c alone.
  NormalForm circle = nf("eta ; etadag", DiagMode::span);
  REQUIRE(circle.terms.size() == 1);
  CHECK(circle.terms[0].coeff == std::vector<long long>{0, 1});

  // Nested circles collapse (c not c(1-c)); side-by-side opposite circles
  // annihilate. This is where the two readings genuinely differ.
  std::string nested = "eta ; (id(+) * (epsdag ; eps) * id(-)) ; etadag";
  NormalForm n1 = nf(nested, DiagMode::span);
  REQUIRE(n1.terms.size() == 1);
  CHECK(n1.terms[0].coeff == std::vector<long long>{0, 1});
  CHECK(nf("(eta ; etadag) * (epsdag ; eps)", DiagMode::span).terms.empty());

  // Matching circles merge: c times c is c.
  CHECK(eq("(eta ; etadag) * (eta ; etadag)", "eta ; etadag", DiagMode::span));

  // Caps composed with cups across the middle die on the color clash but
  // survive the free reading.
  CHECK(nf("eps ; eta", DiagMode::span).terms.empty());
  CHECK(!nf("eps ; eta", DiagMode::free).terms.empty());
  CHECK(nf("eps * eta", DiagMode::span).terms.empty());
  CHECK(!nf("eps * eta", DiagMode::free).terms.empty());

  // Idempotency of the cap-cup projector.
  CHECK(eq("(eps ; epsdag) ; (eps ; epsdag)", "eps ; epsdag", DiagMode::span));
}

TEST_CASE("normal forms are insensitive to re-association") {
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"(eta ; etadag) ; (eta ; etadag)", "eta ; ((etadag ; eta) ; etadag)"},
      {"(id(-) * eta) * id(+)", "id(-) * (eta * id(+))"},
      {"(eta + eta) + eta", "eta + (eta + eta)"},
      {"((id(-) * eta) ; (eps * id(-))) ; (id(-) * eta)",
       "(id(-) * eta) ; ((eps * id(-)) ; (id(-) * eta))"},
  };
  for (DiagMode mode : {DiagMode::free, DiagMode::span}) {
    for (const auto& [a, b] : pairs) {
      CHECK(eq(a, b, mode));
    }
  }
}

TEST_CASE("normal form rendering is stable") {
  std::string text = normal_form_to_text(nf("eps ; epsdag", DiagMode::span));
  CHECK(text == "-+ -> -+  [span]\n  {b0-b1, t0-t1}  1\n");
  CHECK(normal_form_to_text(nf("x(+,-)", DiagMode::free)) == "+- -> -+  [free]\n  0\n");
  CHECK(normal_form_to_text(nf("epsdag ; eps", DiagMode::free)) ==
        "1 -> 1  [free]\n  {}  1 - c\n");
}

TEST_CASE("class matrices of object expressions") {
  QMatrix ann = k0_matrix("[-]");
  CHECK(ann.at(0, 1) == 1);
  CHECK(ann.at(0, 0) == 0);
  CHECK(ann.at(1, 0) == 0);
  CHECK(ann.at(1, 1) == 0);

  QMatrix rel = k0_matrix("[-][+] + [+][-]");
  CHECK(matrix_eq(rel, identity_matrix({"A", "A*"})));
  CHECK(matrix_eq(k0_matrix("[-+] + [+-]"), identity_matrix({"A", "A*"})));

  QMatrix zero = k0_matrix("[--]");
  CHECK(zero.at(0, 0) == 0);
  CHECK(zero.at(0, 1) == 0);

  QMatrix num = k0_matrix("2[+-]");
  CHECK(num.at(1, 1) == 2);
  CHECK(num.at(0, 0) == 0);

  CHECK(matrix_eq(k0_matrix("1"), identity_matrix({"A", "A*"})));
  CHECK(matrix_eq(k0_matrix("(1 + 1)"), matrix_scale(2, identity_matrix({"A", "A*"}))));

  CHECK_THROWS_AS(k0_matrix("[?]"), StructuralError);
  CHECK_THROWS_AS(k0_matrix("[+] extra^"), StructuralError);
}

TEST_CASE("diagrams evaluate to cells matching their normal forms") {
  SpanCalculus calc(build_fermion_model("Z2"));

  CHECK_THROWS_AS(evaluate_diagram(*parse_diagram("x(+,-)"), calc), StructuralError);
  CHECK_THROWS_AS(evaluate_diagram(*parse_diagram("id(++)"), calc), StructuralError);

  TwoMorphism snake =
      evaluate_diagram(*parse_diagram("(id(-) * eta) ; (eps * id(-))"), calc);
  CHECK(two_morphism_eq(snake, calc.identity_cell("-"), CellEqMode::equivalence).has_value());

  TwoMorphism idres = evaluate_diagram(*parse_diagram("eps ; epsdag"), calc);
  CHECK(validate_2morphism(idres).ok());

  // Span-mode equality must agree with cell equivalence on these samples.
  struct Sample {
    std::string a, b;
  };
  std::vector<Sample> samples = {
      {"eta ; etadag", "epsdag ; eps"},
      {"(eta ; etadag) + (epsdag ; eps)", "id(1)"},
      {"eps ; epsdag", "id(-+)"},
      {"etadag ; eta", "id(+-)"},
      {"(eps ; epsdag) ; (eps ; epsdag)", "eps ; epsdag"},
      {"id(-) * (eta ; etadag)", "id(-)"},
      {"2 eta", "eta"},
  };
  for (const Sample& s : samples) {
    DiagPtr ea = parse_diagram(s.a);
    DiagPtr eb = parse_diagram(s.b);
    bool nf_equal = diagram_eq(*ea, *eb, DiagMode::span);
    TwoMorphism ca = evaluate_diagram(*ea, calc);
    TwoMorphism cb = evaluate_diagram(*eb, calc);
    bool cell_equal = two_morphism_eq(ca, cb, CellEqMode::equivalence).has_value();
    CHECK(nf_equal == cell_equal);
  }
}
