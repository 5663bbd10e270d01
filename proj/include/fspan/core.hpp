#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fspan {

using Rational = boost::multiprecision::cpp_rational;

// Malformed input data: identifiers that do not resolve, duplicate names,
// tables of the wrong shape. Distinct from axiom violations, which are
// collected in a ValidationReport instead of thrown.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A construction or search outgrew the configured limits.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Limits {
  // Hard cap on the morphism count of any constructed groupoid. Weak
  // pullbacks grow like |G|^3, so this keeps everything desk scale.
  std::size_t max_morphisms = 20000;
  // Node budget shared by the backtracking searches (iso, equivalence).
  // 0 means unlimited.
  std::uint64_t search_nodes = 50'000'000;
};

// Counts nodes visited by a backtracking search against Limits::search_nodes.
class SearchGuard {
 public:
  explicit SearchGuard(const Limits& lim) : budget_(lim.search_nodes) {}

  void tick() {
    if (budget_ != 0 && ++used_ > budget_) {
      throw BudgetExceeded("search node budget exhausted after " +
                           std::to_string(used_ - 1) + " nodes");
    }
  }

  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
};

struct ValidationReport {
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
  void add(std::string p) { problems.push_back(std::move(p)); }
  std::string joined(const std::string& sep = "\n") const {
    std::string out;
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i) out += sep;
      out += problems[i];
    }
    return out;
  }
};

}  // namespace fspan
