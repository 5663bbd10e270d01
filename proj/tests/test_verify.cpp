#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "fspan/verify.hpp"

using namespace fspan;

TEST_CASE("level names parse and print") {
  CHECK(parse_verify_level("matrices") == VerifyLevel::matrices);
  CHECK(parse_verify_level("spans") == VerifyLevel::spans);
  CHECK(parse_verify_level("two-morphisms") == VerifyLevel::two_morphisms);
  CHECK(parse_verify_level("two_morphisms") == VerifyLevel::two_morphisms);
  CHECK(parse_verify_level("adjunction") == VerifyLevel::adjunction);
  CHECK(parse_verify_level("all") == VerifyLevel::adjunction);
  CHECK_THROWS_AS(parse_verify_level("everything"), StructuralError);
  CHECK(to_string(VerifyLevel::two_morphisms) == "two-morphisms");
}

TEST_CASE("levels are cumulative") {
  CHECK(verify_model("Z1", VerifyLevel::matrices).checks.size() == 6);
  CHECK(verify_model("Z1", VerifyLevel::spans).checks.size() == 8);
  CHECK(verify_model("Z1", VerifyLevel::two_morphisms).checks.size() == 12);
  CHECK(verify_model("Z1", VerifyLevel::adjunction).checks.size() == 16);
}

TEST_CASE("the full battery passes for small groups") {
  for (const char* spec : {"Z1", "Z2", "Z3"}) {
    VerifyReport report = verify_model(spec, VerifyLevel::adjunction);
    CHECK(report.group == spec);
    CHECK(report.all_passed());
    CHECK(!report.any_budget());
    for (const CheckResult& c : report.checks) {
      CHECK(c.status == "pass");
      CHECK(c.elapsed_ms >= 0.0);
      CHECK(!c.relation.empty());
    }
  }
}

TEST_CASE("report order is fixed") {
  VerifyReport report = verify_model("Z2", VerifyLevel::adjunction);
  std::vector<std::string> names;
  for (const CheckResult& c : report.checks) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{
                     "annihilation_matrix",
                     "creation_matrix",
                     "anticommutator",
                     "nilpotency",
                     "fock_vector_actions",
                     "orthonormality",
                     "fock_span_actions",
                     "identity_resolution_spans",
                     "unit_counit_validity",
                     "counit_roundtrip",
                     "unit_roundtrip",
                     "identity_decomposition_cells",
                     "zigzag_annihilator_1",
                     "zigzag_creator_1",
                     "zigzag_creator_2",
                     "zigzag_annihilator_2",
                 });
}

TEST_CASE("span checks separate strict from equivalence on nontrivial groups") {
  VerifyReport one = verify_model("Z1", VerifyLevel::two_morphisms);
  VerifyReport two = verify_model("Z2", VerifyLevel::two_morphisms);
  auto find = [](const VerifyReport& r, const std::string& name) {
    for (const CheckResult& c : r.checks) {
      if (c.name == name) return c;
    }
    REQUIRE(false);
    return CheckResult{};
  };
  // Composite apexes are fattened copies of the expected spans, so the
  // strict comparison fails as soon as the loop groups are nontrivial.
  CheckResult a = find(one, "identity_resolution_spans");
  REQUIRE(a.strict.has_value());
  CHECK(*a.strict);
  CheckResult b = find(two, "identity_resolution_spans");
  REQUIRE(b.strict.has_value());
  CHECK(!*b.strict);
  CHECK(*b.equivalence);
  CHECK(b.status == "pass");
  // Cells go through skeletal compression first, which brings both sides
  // to the same shape; there the strict witness exists too.
  CheckResult c = find(two, "counit_roundtrip");
  REQUIRE(c.strict.has_value());
  CHECK(*c.strict);
}

TEST_CASE("parallel runs agree with the serial run") {
  VerifyReport serial = verify_model("Z2", VerifyLevel::adjunction, 1);
  VerifyReport parallel = verify_model("Z2", VerifyLevel::adjunction, 4);
  REQUIRE(serial.checks.size() == parallel.checks.size());
  for (std::size_t k = 0; k < serial.checks.size(); ++k) {
    CHECK(serial.checks[k].name == parallel.checks[k].name);
    CHECK(serial.checks[k].status == parallel.checks[k].status);
    CHECK(serial.checks[k].strict == parallel.checks[k].strict);
  }
}

TEST_CASE("large groups hit the budget instead of failing") {
  VerifyReport report = verify_model("S4", VerifyLevel::adjunction, 4);
  CHECK(report.any_budget());
  CHECK(!report.all_passed());
  for (const CheckResult& c : report.checks) {
    // Everything cheap enough to finish must hold; nothing may be wrong.
    CHECK(c.status != "fail");
  }
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(report.checks[k].status == "pass");  // whole matrix level
  }
  // The direct sum of the two composite spans is the first thing that
  // outgrows the default morphism budget; a slightly larger budget fits it.
  auto find = [&](const std::string& name) {
    for (const CheckResult& c : report.checks) {
      if (c.name == name) return c.status;
    }
    return std::string();
  };
  CHECK(find("identity_resolution_spans") == "budget");
  CHECK(find("counit_roundtrip") == "pass");
  CHECK(find("zigzag_annihilator_1") == "budget");

  Limits wider;
  wider.max_morphisms = 30000;
  VerifyReport more = verify_model("S4", VerifyLevel::spans, 4, wider);
  CHECK(more.all_passed());
}

TEST_CASE("bad group specs are rejected up front") {
  CHECK_THROWS_AS(verify_model("Q8", VerifyLevel::matrices), StructuralError);
  CHECK_THROWS_AS(verify_model("Z0", VerifyLevel::matrices), StructuralError);
}
