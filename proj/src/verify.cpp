#include "fspan/verify.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "fspan/calculus.hpp"
#include "fspan/diagram.hpp"
#include "fspan/fermion.hpp"
#include "fspan/matrix.hpp"
#include "fspan/span.hpp"

namespace fspan {

namespace {

struct Outcome {
  bool pass = false;
  std::optional<bool> strict;
  std::optional<bool> equivalence;
};

QMatrix shift_down(const std::vector<std::string>& labels) {
  QMatrix m = zero_matrix(labels, labels);
  m.at(0, 1) = 1;
  return m;
}

QMatrix shift_up(const std::vector<std::string>& labels) {
  QMatrix m = zero_matrix(labels, labels);
  m.at(1, 0) = 1;
  return m;
}

Outcome check_annihilation_matrix(const FermionModel& m) {
  std::vector<std::string> labels = class_labels(*m.psi);
  return {labels == std::vector<std::string>{"A", "A*"} &&
          matrix_eq(span_matrix(m.f), shift_down(labels))};
}

Outcome check_creation_matrix(const FermionModel& m) {
  std::vector<std::string> labels = class_labels(*m.psi);
  return {labels == std::vector<std::string>{"A", "A*"} &&
          matrix_eq(span_matrix(m.f_dag), shift_up(labels))};
}

Outcome check_anticommutator(const FermionModel& m, const Limits& lim) {
  QMatrix occ = span_matrix(compose_spans(m.f_dag, m.f, lim));
  QMatrix vac = span_matrix(compose_spans(m.f, m.f_dag, lim));
  return {matrix_eq(matrix_add(occ, vac), identity_matrix(class_labels(*m.psi)))};
}

Outcome check_nilpotency(const FermionModel& m, const Limits& lim) {
  Span ff = compose_spans(m.f, m.f, lim);
  Span caca = compose_spans(m.f_dag, m.f_dag, lim);
  std::vector<std::string> labels = class_labels(*m.psi);
  QMatrix zero = zero_matrix(labels, labels);
  return {ff.apex->n_objects() == 0 && caca.apex->n_objects() == 0 &&
          matrix_eq(span_matrix(ff), zero) && matrix_eq(span_matrix(caca), zero)};
}

Outcome check_fock_vector_actions(const FermionModel& m) {
  std::vector<Rational> v0 = state_vector(m.state0);
  std::vector<Rational> v1 = state_vector(m.state1);
  QMatrix ann = span_matrix(m.f);
  QMatrix cre = span_matrix(m.f_dag);
  std::vector<Rational> zero{0, 0};
  return {apply_matrix(cre, v0) == v1 && apply_matrix(ann, v1) == v0 &&
          apply_matrix(ann, v0) == zero && apply_matrix(cre, v1) == zero};
}

Outcome check_orthonormality(const FermionModel& m) {
  std::vector<Rational> v0 = state_vector(m.state0);
  std::vector<Rational> v1 = state_vector(m.state1);
  return {inner_product(v0, v0) == 1 && inner_product(v1, v1) == 1 &&
          inner_product(v0, v1) == 0 && inner_product(v1, v0) == 0};
}

// Compare two parallel spans, requiring equivalence and recording whether
// the stronger apex isomorphism also holds.
Outcome compare_spans(const Span& a, const Span& b, const Limits& lim) {
  Outcome out;
  out.equivalence = span_equiv(a, b, lim).has_value();
  out.strict = span_iso(a, b, lim).has_value();
  out.pass = *out.equivalence;
  return out;
}

Outcome check_fock_span_actions(const FermionModel& m, const Limits& lim) {
  Outcome raise = compare_spans(compose_spans(m.f_dag, m.state0, lim), m.state1, lim);
  Outcome lower = compare_spans(compose_spans(m.f, m.state1, lim), m.state0, lim);
  Span none0 = zero_span(m.state0.source, m.psi);
  Outcome kill0 = compare_spans(compose_spans(m.f, m.state0, lim), none0, lim);
  Outcome kill1 = compare_spans(compose_spans(m.f_dag, m.state1, lim), none0, lim);
  Outcome out;
  out.equivalence = *raise.equivalence && *lower.equivalence &&
                    *kill0.equivalence && *kill1.equivalence;
  out.strict = *raise.strict && *lower.strict && *kill0.strict && *kill1.strict;
  out.pass = *out.equivalence;
  return out;
}

Outcome check_identity_resolution_spans(const FermionModel& m, const Limits& lim) {
  Span occ = compose_spans(m.f_dag, m.f, lim);
  Span vac = compose_spans(m.f, m.f_dag, lim);
  return compare_spans(direct_sum_spans(occ, vac, lim), identity_span(m.psi), lim);
}

Outcome check_unit_counit_validity(const FermionModel& m) {
  return {validate_2morphism(m.eta).ok() && validate_2morphism(m.eps).ok() &&
          validate_2morphism(m.eta_dag).ok() && validate_2morphism(m.eps_dag).ok()};
}

// Evaluate both sides of a diagram equation into cells and compare.
Outcome cell_check(const FermionModel& m, const Limits& lim, const std::string& lhs,
                   const std::string& rhs) {
  SpanCalculus calc(m, lim);
  TwoMorphism a = evaluate_diagram(*parse_diagram(lhs), calc);
  TwoMorphism b = evaluate_diagram(*parse_diagram(rhs), calc);
  Outcome out;
  out.equivalence = two_morphism_eq(a, b, CellEqMode::equivalence, false, lim).has_value();
  out.strict = two_morphism_eq(a, b, CellEqMode::strict, false, lim).has_value();
  out.pass = *out.equivalence;
  return out;
}

struct CheckSpec {
  const char* name;
  const char* relation;
  VerifyLevel level;
  Outcome (*run)(const std::string& spec, const Limits& lim);
};

FermionModel model_for(const std::string& spec, const Limits& lim) {
  return build_fermion_model(spec, lim);
}

template <Outcome (*Fn)(const FermionModel&)>
Outcome with_model(const std::string& spec, const Limits& lim) {
  return Fn(model_for(spec, lim));
}

template <Outcome (*Fn)(const FermionModel&, const Limits&)>
Outcome with_model_lim(const std::string& spec, const Limits& lim) {
  return Fn(model_for(spec, lim), lim);
}

template <const char* Lhs, const char* Rhs>
Outcome diagram_check(const std::string& spec, const Limits& lim) {
  return cell_check(model_for(spec, lim), lim, Lhs, Rhs);
}

constexpr char kCounitL[] = "eps ; epsdag";
constexpr char kCounitR[] = "id(-+)";
constexpr char kUnitL[] = "etadag ; eta";
constexpr char kUnitR[] = "id(+-)";
constexpr char kResolveL[] = "(eta ; etadag) + (epsdag ; eps)";
constexpr char kResolveR[] = "id(1)";
constexpr char kZigA1L[] = "(id(-) * eta) ; (eps * id(-))";
constexpr char kZigA1R[] = "id(-)";
constexpr char kZigC1L[] = "(eta * id(+)) ; (id(+) * eps)";
constexpr char kZigC1R[] = "id(+)";
constexpr char kZigC2L[] = "(id(+) * epsdag) ; (etadag * id(+))";
constexpr char kZigC2R[] = "id(+)";
constexpr char kZigA2L[] = "(epsdag * id(-)) ; (id(-) * etadag)";
constexpr char kZigA2R[] = "id(-)";

const CheckSpec kChecks[] = {
    {"annihilation_matrix", "K0(F) = [[0,1],[0,0]] over {A, A*}", VerifyLevel::matrices,
     with_model<check_annihilation_matrix>},
    {"creation_matrix", "K0(F+) = [[0,0],[1,0]] over {A, A*}", VerifyLevel::matrices,
     with_model<check_creation_matrix>},
    {"anticommutator", "K0(F;F+) + K0(F+;F) = 1", VerifyLevel::matrices,
     with_model_lim<check_anticommutator>},
    {"nilpotency", "F;F = 0 and F+;F+ = 0", VerifyLevel::matrices,
     with_model_lim<check_nilpotency>},
    {"fock_vector_actions", "K0(F+)|0> = |1>, K0(F)|1> = |0>, K0(F)|0> = K0(F+)|1> = 0",
     VerifyLevel::matrices, with_model<check_fock_vector_actions>},
    {"orthonormality", "<i|j> = delta(i,j) for the point states", VerifyLevel::matrices,
     with_model<check_orthonormality>},
    {"fock_span_actions", "|0>;F+ ~ |1>, |1>;F ~ |0>, |0>;F ~ 0, |1>;F+ ~ 0",
     VerifyLevel::spans, with_model_lim<check_fock_span_actions>},
    {"identity_resolution_spans", "(F;F+) (+) (F+;F) ~ id(psi)", VerifyLevel::spans,
     with_model_lim<check_identity_resolution_spans>},
    {"unit_counit_validity", "eta, eps, etadag, epsdag are valid 2-cells",
     VerifyLevel::two_morphisms, with_model<check_unit_counit_validity>},
    {"counit_roundtrip", "eps ; epsdag = id(-+)", VerifyLevel::two_morphisms,
     diagram_check<kCounitL, kCounitR>},
    {"unit_roundtrip", "etadag ; eta = id(+-)", VerifyLevel::two_morphisms,
     diagram_check<kUnitL, kUnitR>},
    {"identity_decomposition_cells", "(eta ; etadag) + (epsdag ; eps) = id(1)",
     VerifyLevel::two_morphisms, diagram_check<kResolveL, kResolveR>},
    {"zigzag_annihilator_1", "(id(-) * eta) ; (eps * id(-)) = id(-)",
     VerifyLevel::adjunction, diagram_check<kZigA1L, kZigA1R>},
    {"zigzag_creator_1", "(eta * id(+)) ; (id(+) * eps) = id(+)", VerifyLevel::adjunction,
     diagram_check<kZigC1L, kZigC1R>},
    {"zigzag_creator_2", "(id(+) * epsdag) ; (etadag * id(+)) = id(+)",
     VerifyLevel::adjunction, diagram_check<kZigC2L, kZigC2R>},
    {"zigzag_annihilator_2", "(epsdag * id(-)) ; (id(-) * etadag) = id(-)",
     VerifyLevel::adjunction, diagram_check<kZigA2L, kZigA2R>},
};

}  // namespace

VerifyLevel parse_verify_level(const std::string& text) {
  std::string t;
  for (char c : text) t.push_back(c == '-' ? '_' : c);
  if (t == "matrices") return VerifyLevel::matrices;
  if (t == "spans") return VerifyLevel::spans;
  if (t == "two_morphisms") return VerifyLevel::two_morphisms;
  if (t == "adjunction" || t == "all") return VerifyLevel::adjunction;
  throw StructuralError("unknown level '" + text +
                        "' (expected matrices, spans, two-morphisms, adjunction or all)");
}

std::string to_string(VerifyLevel level) {
  switch (level) {
    case VerifyLevel::matrices: return "matrices";
    case VerifyLevel::spans: return "spans";
    case VerifyLevel::two_morphisms: return "two-morphisms";
    case VerifyLevel::adjunction: return "adjunction";
  }
  return "?";
}

bool VerifyReport::all_passed() const {
  for (const CheckResult& c : checks) {
    if (c.status != "pass") return false;
  }
  return true;
}

bool VerifyReport::any_budget() const {
  for (const CheckResult& c : checks) {
    if (c.status == "budget") return true;
  }
  return false;
}

VerifyReport verify_model(const std::string& group_spec, VerifyLevel level, int jobs,
                          const Limits& lim) {
  // Surface group spec problems immediately rather than once per check.
  (void)parse_group_spec(group_spec);

  std::vector<const CheckSpec*> selected;
  for (const CheckSpec& spec : kChecks) {
    if (spec.level <= level) selected.push_back(&spec);
  }

  VerifyReport report;
  report.group = group_spec;
  report.level = level;
  report.checks.resize(selected.size());

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= selected.size()) return;
      const CheckSpec& spec = *selected[k];
      CheckResult& res = report.checks[k];
      res.name = spec.name;
      res.relation = spec.relation;
      auto t0 = std::chrono::steady_clock::now();
      try {
        Outcome out = spec.run(group_spec, lim);
        res.status = out.pass ? "pass" : "fail";
        res.strict = out.strict;
        res.equivalence = out.equivalence;
      } catch (const BudgetExceeded&) {
        res.status = "budget";
      } catch (...) {
        std::lock_guard<std::mutex> hold(error_mutex);
        if (!first_error) first_error = std::current_exception();
        res.status = "fail";
      }
      auto t1 = std::chrono::steady_clock::now();
      res.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
  };

  int n_threads = jobs < 1 ? 1 : jobs;
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return report;
}

}  // namespace fspan
