#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fspan/core.hpp"

namespace fspan {

// Checks are grouped into cumulative levels: asking for a level runs it
// together with everything below. The matrix level needs only decategorified
// data, the span level compares spans up to equivalence, the cell levels
// build and compare 2-morphisms, which is where the cost lives.
enum class VerifyLevel {
  matrices = 0,
  spans = 1,
  two_morphisms = 2,
  adjunction = 3,
};

// Accepts the level names above (with - or _), plus "all" for the top.
VerifyLevel parse_verify_level(const std::string& text);
std::string to_string(VerifyLevel level);

struct CheckResult {
  std::string name;
  std::string relation;
  std::string status;  // "pass", "fail" or "budget"
  // For comparison checks, the outcome under each sameness notion. The
  // status tracks the equivalence outcome; a false strict outcome alongside
  // a pass is expected whenever the group has more than one element.
  std::optional<bool> strict;
  std::optional<bool> equivalence;
  double elapsed_ms = 0.0;
};

struct VerifyReport {
  std::string group;
  VerifyLevel level = VerifyLevel::matrices;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  bool any_budget() const;
};

// Builds the model for the group spec and runs every check up to the given
// level. jobs > 1 runs checks concurrently; each check builds its own model,
// so nothing is shared across threads. The report order is fixed either way.
VerifyReport verify_model(const std::string& group_spec, VerifyLevel level,
                          int jobs = 1, const Limits& lim = {});

}  // namespace fspan
