#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "fspan/fermion.hpp"
#include "fspan/functor.hpp"
#include "fspan/groupoid.hpp"
#include "fspan/matrix.hpp"
#include "fspan/span.hpp"
#include "fspan/two_morphism.hpp"
#include "fspan/verify.hpp"

namespace fspan {

using Json = nlohmann::ordered_json;

// Readers reject unknown fields, missing fields and unresolved names with
// StructuralError; axiom violations found while validating loaded data are
// reported the same way, with the validator's messages joined in. Wherever
// a sub-record is expected (the groupoids of a functor, the spans of a
// cell), a relative path string may stand in for the inline record; paths
// resolve against the directory of the referencing file.

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

Json groupoid_to_json(const FiniteGroupoid& g);
GroupoidPtr groupoid_from_json(const Json& j, const Limits& lim = {});
GroupoidPtr load_groupoid(const Json& j, const std::filesystem::path& base,
                          const Limits& lim = {});

Json functor_to_json(const GFunctor& f);
GFunctor functor_from_json(const Json& j, const std::filesystem::path& base,
                           const Limits& lim = {});

Json span_to_json(const Span& s);
Span span_from_json(const Json& j, const std::filesystem::path& base,
                    const Limits& lim = {});
Span load_span(const Json& j, const std::filesystem::path& base, const Limits& lim = {});

Json two_morphism_to_json(const TwoMorphism& c);
TwoMorphism two_morphism_from_json(const Json& j, const std::filesystem::path& base,
                                   const Limits& lim = {});

// Entries are always written as "p/q", denominator included.
Json matrix_to_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j);

Json witness_to_json(const SpanWitness& w, const FiniteGroupoid& nat_left_home,
                     const FiniteGroupoid& nat_right_home);

// elapsed_ms is included only when timings is set, keeping default output
// byte for byte reproducible.
Json report_to_json(const VerifyReport& r, bool timings);

// Writes psi, h, i, t, f, fdag, eta, eps, etadag, epsdag, state0 and
// state1 as .json files into dir, creating it if needed.
void export_model(const FermionModel& m, const std::filesystem::path& dir);

}  // namespace fspan
