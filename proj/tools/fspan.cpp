// Command line front end: load groupoids, spans and cells from JSON, run
// the span calculus on them, and drive the fermion model checks. Exit codes
// are 0 for a positive outcome, 1 for a negative one (invalid input data,
// unequal diagrams, failed checks), 2 for usage or malformed input, 3 when
// a computation outgrew its budget.
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fspan/calculus.hpp"
#include "fspan/diagram.hpp"
#include "fspan/fermion.hpp"
#include "fspan/io.hpp"
#include "fspan/matrix.hpp"
#include "fspan/verify.hpp"

namespace {

using namespace fspan;

struct LimitOpts {
  std::size_t max_morphisms = Limits{}.max_morphisms;
  std::uint64_t budget = Limits{}.search_nodes;

  Limits to_limits() const { return Limits{max_morphisms, budget}; }
};

void add_limit_opts(CLI::App* cmd, LimitOpts& opts) {
  cmd->add_option("--max-morphisms", opts.max_morphisms,
                  "largest groupoid any construction may build");
  cmd->add_option("--budget", opts.budget, "node budget for backtracking searches");
}

Span read_span_file(const std::string& path, const Limits& lim) {
  std::filesystem::path p(path);
  return span_from_json(read_json_file(p), p.parent_path(), lim);
}

void print_matrix(const QMatrix& m) {
  std::printf("%10s", "");
  for (const std::string& c : m.col_labels) std::printf(" %10s", c.c_str());
  std::printf("\n");
  for (int r = 0; r < m.rows(); ++r) {
    std::printf("%10s", m.row_labels[r].c_str());
    for (int c = 0; c < m.cols(); ++c) {
      Rational v = m.at(r, c);
      std::string text = numerator(v).str() + "/" + denominator(v).str();
      std::printf(" %10s", text.c_str());
    }
    std::printf("\n");
  }
}

int run_groupoid_validate(const std::string& file, const Limits& lim) {
  std::filesystem::path p(file);
  GroupoidPtr g = load_groupoid(read_json_file(p), p.parent_path(), lim);
  ValidationReport report = validate_groupoid(*g, lim);
  if (!report.ok()) {
    for (const std::string& problem : report.problems) {
      std::printf("problem: %s\n", problem.c_str());
    }
    std::printf("invalid: %zu problem(s)\n", report.problems.size());
    return 1;
  }
  std::printf("ok: %d objects, %d morphisms\n", g->n_objects(), g->n_morphisms());
  return 0;
}

int run_groupoid_info(const std::string& file, const Limits& lim) {
  std::filesystem::path p(file);
  GroupoidPtr g = load_groupoid(read_json_file(p), p.parent_path(), lim);
  std::printf("objects: %d\n", g->n_objects());
  std::printf("morphisms: %d\n", g->n_morphisms());
  const IsoClassPartition& classes = g->iso_classes();
  std::printf("iso classes: %zu\n", classes.classes.size());
  Rational card = g->cardinality();
  std::printf("cardinality: %s/%s\n", numerator(card).str().c_str(),
              denominator(card).str().c_str());
  for (std::size_t k = 0; k < classes.classes.size(); ++k) {
    int rep = classes.representative[k];
    std::printf("class %zu: representative %s, %zu object(s), %zu automorphism(s)\n", k,
                g->object_name(rep).c_str(), classes.classes[k].size(),
                g->loops_at(rep).size());
  }
  return 0;
}

int run_span_compose(const std::string& first, const std::string& second,
                     const std::string& out, const Limits& lim) {
  Span a = read_span_file(first, lim);
  Span b = read_span_file(second, lim);
  Span c = compose_spans(b, a, lim);  // first a, then b
  std::printf("composite apex: %d objects, %d morphisms\n", c.apex->n_objects(),
              c.apex->n_morphisms());
  if (!out.empty()) {
    write_json_file(out, span_to_json(c));
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int run_span_matrix(const std::string& file, const std::string& out, const Limits& lim) {
  Span s = read_span_file(file, lim);
  QMatrix m = span_matrix(s);
  if (!out.empty()) {
    write_json_file(out, matrix_to_json(m));
    std::printf("wrote %s\n", out.c_str());
  } else {
    print_matrix(m);
  }
  return 0;
}

int run_span_compare(const std::string& file1, const std::string& file2,
                     const std::string& out, bool strict, const Limits& lim) {
  Span a = read_span_file(file1, lim);
  Span b = read_span_file(file2, lim);
  auto w = strict ? span_iso(a, b, lim) : span_equiv(a, b, lim);
  const char* yes = strict ? "isomorphic" : "equivalent";
  const char* no = strict ? "not isomorphic" : "not equivalent";
  if (!w.has_value()) {
    std::printf("%s\n", no);
    return 1;
  }
  std::printf("%s\n", yes);
  if (!out.empty()) {
    write_json_file(out, witness_to_json(*w, *a.target, *a.source));
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int run_fermion_build(const std::string& group, const std::string& out, const Limits& lim) {
  FermionModel m = build_fermion_model(group, lim);
  export_model(m, out);
  std::printf("wrote model for %s to %s\n", group.c_str(), out.c_str());
  return 0;
}

int run_fermion_verify(const std::string& group, const std::string& level_text, int jobs,
                       const std::string& format, bool timings, const std::string& out,
                       const Limits& lim) {
  VerifyLevel level = parse_verify_level(level_text);
  VerifyReport report = verify_model(group, level, jobs, lim);
  if (format == "structured") {
    std::printf("%s\n", report_to_json(report, timings).dump(2).c_str());
  } else if (format == "human") {
    std::printf("group %s, level %s\n", report.group.c_str(), to_string(report.level).c_str());
    int passed = 0, failed = 0, budget = 0;
    for (const CheckResult& c : report.checks) {
      std::string flags;
      if (c.strict.has_value()) {
        flags = std::string("strict=") + (*c.strict ? "yes" : "no") + " equiv=" +
                (*c.equivalence ? "yes" : "no");
      }
      std::printf("  %-6s %-30s %-22s %s", c.status.c_str(), c.name.c_str(), flags.c_str(),
                  c.relation.c_str());
      if (timings) std::printf("  (%.1f ms)", c.elapsed_ms);
      std::printf("\n");
      if (c.status == "pass") ++passed;
      else if (c.status == "budget") ++budget;
      else ++failed;
    }
    std::printf("%zu checks: %d passed, %d failed, %d over budget\n", report.checks.size(),
                passed, failed, budget);
  } else {
    throw StructuralError("unknown format '" + format + "' (expected human or structured)");
  }
  if (!out.empty()) {
    write_json_file(out, report_to_json(report, timings));
    std::printf("wrote %s\n", out.c_str());
  }
  for (const CheckResult& c : report.checks) {
    if (c.status == "fail") return 1;
  }
  return report.any_budget() ? 3 : 0;
}

DiagMode parse_mode(const std::string& text) {
  if (text == "free") return DiagMode::free;
  if (text == "span") return DiagMode::span;
  throw StructuralError("unknown semantics '" + text + "' (expected free or span)");
}

int run_diagram_parse(const std::string& expr) {
  DiagPtr e = parse_diagram(expr);
  DiagramType t = type_of(*e);
  std::printf("expr: %s\n", diagram_to_text(*e).c_str());
  std::printf("type: %s -> %s\n", t.dom.empty() ? "1" : t.dom.c_str(),
              t.cod.empty() ? "1" : t.cod.c_str());
  if (t.zero_object) std::printf("zero object boundary\n");
  return 0;
}

int run_diagram_normalize(const std::string& expr, const std::string& semantics) {
  NormalForm nf = normalize_diagram(expr, parse_mode(semantics));
  std::printf("%s", normal_form_to_text(nf).c_str());
  return 0;
}

int run_diagram_eq(const std::string& e1, const std::string& e2,
                   const std::string& semantics) {
  bool equal = diagram_eq(*parse_diagram(e1), *parse_diagram(e2), parse_mode(semantics));
  std::printf("%s\n", equal ? "equal" : "different");
  return equal ? 0 : 1;
}

int run_diagram_k0(const std::string& expr) {
  print_matrix(k0_matrix(expr));
  return 0;
}

int run_diagram_eval(const std::string& expr, const std::string& group,
                     const std::string& out, const Limits& lim) {
  SpanCalculus calc(build_fermion_model(group, lim), lim);
  DiagPtr e = parse_diagram(expr);
  DiagramType t = type_of(*e);
  TwoMorphism cell = evaluate_diagram(*e, calc);
  std::printf("cell: %s -> %s\n", t.dom.empty() ? "1" : t.dom.c_str(),
              t.cod.empty() ? "1" : t.cod.c_str());
  std::printf("inner: %d objects, %d morphisms\n", cell.inner->n_objects(),
              cell.inner->n_morphisms());
  std::printf("valid: %s\n", validate_2morphism(cell).ok() ? "yes" : "no");
  if (!out.empty()) {
    write_json_file(out, two_morphism_to_json(cell));
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"span calculus over finite groupoids, with the fermion state model"};
  app.require_subcommand(1);
  std::function<int()> action;

  // groupoid ------------------------------------------------------------
  CLI::App* groupoid = app.add_subcommand("groupoid", "inspect groupoid files");
  groupoid->require_subcommand(1);
  {
    static std::string file;
    static LimitOpts lim;
    CLI::App* validate = groupoid->add_subcommand("validate", "check every axiom");
    validate->add_option("file", file, "groupoid JSON file")->required();
    add_limit_opts(validate, lim);
    validate->callback(
        [&] { action = [] { return run_groupoid_validate(file, lim.to_limits()); }; });

    static std::string info_file;
    static LimitOpts info_lim;
    CLI::App* info = groupoid->add_subcommand("info", "summarize a groupoid");
    info->add_option("file", info_file, "groupoid JSON file")->required();
    add_limit_opts(info, info_lim);
    info->callback(
        [&] { action = [] { return run_groupoid_info(info_file, info_lim.to_limits()); }; });
  }

  // span ----------------------------------------------------------------
  CLI::App* span = app.add_subcommand("span", "operate on span files");
  span->require_subcommand(1);
  {
    static std::string first, second, out;
    static LimitOpts lim;
    CLI::App* compose = span->add_subcommand("compose", "composite of two spans, first;second");
    compose->add_option("first", first, "span applied first")->required();
    compose->add_option("second", second, "span applied second")->required();
    compose->add_option("--out", out, "write the composite span JSON here");
    add_limit_opts(compose, lim);
    compose->callback([&] {
      action = [] { return run_span_compose(first, second, out, lim.to_limits()); };
    });

    static std::string mfile, mout;
    static LimitOpts mlim;
    CLI::App* matrix = span->add_subcommand("matrix", "class matrix of a span");
    matrix->add_option("file", mfile, "span JSON file")->required();
    matrix->add_option("--out", mout, "write the matrix JSON here");
    add_limit_opts(matrix, mlim);
    matrix->callback(
        [&] { action = [] { return run_span_matrix(mfile, mout, mlim.to_limits()); }; });

    static std::string ia, ib, iout;
    static LimitOpts ilim;
    CLI::App* iso = span->add_subcommand("iso", "search for a strict apex isomorphism");
    iso->add_option("first", ia, "span JSON file")->required();
    iso->add_option("second", ib, "span JSON file")->required();
    iso->add_option("--out", iout, "write the witness JSON here");
    add_limit_opts(iso, ilim);
    iso->callback([&] {
      action = [] { return run_span_compare(ia, ib, iout, true, ilim.to_limits()); };
    });

    static std::string ea, eb, eout;
    static LimitOpts elim;
    CLI::App* equiv = span->add_subcommand("equiv", "compare spans up to equivalence");
    equiv->add_option("first", ea, "span JSON file")->required();
    equiv->add_option("second", eb, "span JSON file")->required();
    equiv->add_option("--out", eout, "write the witness JSON here");
    add_limit_opts(equiv, elim);
    equiv->callback([&] {
      action = [] { return run_span_compare(ea, eb, eout, false, elim.to_limits()); };
    });
  }

  // fermion ---------------------------------------------------------------
  CLI::App* fermion = app.add_subcommand("fermion", "build and check the state model");
  fermion->require_subcommand(1);
  {
    static std::string group, out;
    static LimitOpts lim;
    CLI::App* build = fermion->add_subcommand("build", "export the model as JSON files");
    build->add_option("--group", group, "group spec: Zn, Sn, cayley:FILE, perm:GENS")
        ->required();
    build->add_option("--out", out, "output directory")->required();
    add_limit_opts(build, lim);
    build->callback(
        [&] { action = [] { return run_fermion_build(group, out, lim.to_limits()); }; });

    static std::string vgroup, vlevel = "adjunction", vformat = "human", vout;
    static int vjobs = 1;
    static bool vtimings = false;
    static LimitOpts vlim;
    CLI::App* verify = fermion->add_subcommand("verify", "run the check battery");
    verify->add_option("--group", vgroup, "group spec: Zn, Sn, cayley:FILE, perm:GENS")
        ->required();
    verify->add_option("--level", vlevel,
                       "matrices, spans, two-morphisms, adjunction or all");
    verify->add_option("--jobs", vjobs, "run checks on this many threads");
    verify->add_option("--format", vformat, "human or structured");
    verify->add_flag("--timings", vtimings, "include elapsed milliseconds");
    verify->add_option("--out", vout, "write the report JSON here");
    add_limit_opts(verify, vlim);
    verify->callback([&] {
      action = [] {
        return run_fermion_verify(vgroup, vlevel, vjobs, vformat, vtimings, vout,
                                  vlim.to_limits());
      };
    });
  }

  // diagram ---------------------------------------------------------------
  CLI::App* diagram = app.add_subcommand("diagram", "work with diagram expressions");
  diagram->require_subcommand(1);
  {
    static std::string pexpr;
    CLI::App* parse = diagram->add_subcommand("parse", "print the parsed form and type");
    parse->add_option("expr", pexpr, "diagram expression")->required();
    parse->callback([&] { action = [] { return run_diagram_parse(pexpr); }; });

    static std::string nexpr, nsem = "free";
    CLI::App* normalize = diagram->add_subcommand("normalize", "print the normal form");
    normalize->add_option("expr", nexpr, "diagram expression")->required();
    normalize->add_option("--semantics", nsem, "free or span");
    normalize->add_option("--mode", nsem, "alias for --semantics");
    normalize->callback(
        [&] { action = [] { return run_diagram_normalize(nexpr, nsem); }; });

    static std::string qa, qb, qsem = "free";
    CLI::App* eq = diagram->add_subcommand("eq", "decide equality of two expressions");
    eq->add_option("first", qa, "diagram expression")->required();
    eq->add_option("second", qb, "diagram expression")->required();
    eq->add_option("--semantics", qsem, "free or span");
    eq->add_option("--mode", qsem, "alias for --semantics");
    eq->callback([&] { action = [] { return run_diagram_eq(qa, qb, qsem); }; });

    static std::string kexpr;
    CLI::App* k0 = diagram->add_subcommand("k0", "class matrix of an object expression");
    k0->add_option("expr", kexpr, "object expression, e.g. \"[-][+] + [+][-]\"")->required();
    k0->callback([&] { action = [] { return run_diagram_k0(kexpr); }; });

    static std::string xexpr, xgroup = "Z1", xout;
    static LimitOpts xlim;
    CLI::App* eval = diagram->add_subcommand("eval", "evaluate the expression to a cell");
    eval->add_option("expr", xexpr, "diagram expression")->required();
    eval->add_option("--group", xgroup, "group spec: Zn, Sn, cayley:FILE, perm:GENS");
    eval->add_option("--out", xout, "write the cell JSON here");
    add_limit_opts(eval, xlim);
    eval->callback(
        [&] { action = [] { return run_diagram_eval(xexpr, xgroup, xout, xlim.to_limits()); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return 3;
  } catch (const StructuralError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
