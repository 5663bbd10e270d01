#include "fspan/io.hpp"

#include <fstream>
#include <unordered_map>
#include <unordered_set>

namespace fspan {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw StructuralError(msg); }

void require_record(const Json& j, const char* what,
                    std::initializer_list<const char*> fields) {
  if (!j.is_object()) bad(std::string(what) + " record must be a JSON object");
  for (const char* f : fields) {
    if (!j.contains(f)) bad(std::string("missing field '") + f + "' in " + what + " record");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* f : fields) {
      if (item.key() == f) {
        known = true;
        break;
      }
    }
    if (!known) bad("unexpected field '" + item.key() + "' in " + std::string(what) + " record");
  }
}

std::string get_string(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& get_array(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

const Json& get_object(const Json& j, const char* what) {
  if (!j.is_object()) bad(std::string(what) + " must be an object");
  return j;
}

int object_index_or_throw(const FiniteGroupoid& g, const std::string& name,
                          const char* where) {
  int x = g.object_index(name);
  if (x < 0) bad("unknown object '" + name + "' in " + where);
  return x;
}

int morphism_index_or_throw(const FiniteGroupoid& g, const std::string& name,
                            const char* where) {
  int f = g.morphism_index(name);
  if (f < 0) bad("unknown morphism '" + name + "' in " + where);
  return f;
}

std::string rational_text(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_text(const std::string& text) {
  std::string::size_type slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(text));
    }
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) bad("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const StructuralError&) {
    throw;
  } catch (const std::exception&) {
    bad("malformed rational '" + text + "'");
  }
}

// The two map blocks shared by functor records and span legs.
Json functor_maps(const GFunctor& f) {
  Json on_ob = Json::object();
  for (int x = 0; x < f.source->n_objects(); ++x) {
    on_ob[f.source->object_name(x)] = f.target->object_name(f.ob[x]);
  }
  Json on_mor = Json::object();
  for (int m = 0; m < f.source->n_morphisms(); ++m) {
    on_mor[f.source->morphism(m).name] = f.target->morphism(f.mor[m]).name;
  }
  return Json{{"on_objects", std::move(on_ob)}, {"on_morphisms", std::move(on_mor)}};
}

GFunctor maps_to_functor(const Json& j, const GroupoidPtr& source, const GroupoidPtr& target,
                         const char* what) {
  const Json& on_ob = get_object(j.at("on_objects"), "on_objects");
  const Json& on_mor = get_object(j.at("on_morphisms"), "on_morphisms");
  GFunctor f;
  f.source = source;
  f.target = target;
  f.ob.assign(source->n_objects(), -1);
  f.mor.assign(source->n_morphisms(), -1);
  for (const auto& item : on_ob.items()) {
    int x = object_index_or_throw(*source, item.key(), what);
    f.ob[x] = object_index_or_throw(*target, get_string(item.value(), "object image"), what);
  }
  for (const auto& item : on_mor.items()) {
    int m = morphism_index_or_throw(*source, item.key(), what);
    f.mor[m] =
        morphism_index_or_throw(*target, get_string(item.value(), "morphism image"), what);
  }
  for (int x = 0; x < source->n_objects(); ++x) {
    if (f.ob[x] < 0) bad(std::string("object '") + source->object_name(x) + "' unmapped in " + what);
  }
  for (int m = 0; m < source->n_morphisms(); ++m) {
    if (f.mor[m] < 0) {
      bad(std::string("morphism '") + source->morphism(m).name + "' unmapped in " + what);
    }
  }
  ValidationReport report = validate_functor(f);
  if (!report.ok()) bad(std::string(what) + " is not a functor: " + report.joined("; "));
  return f;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Json groupoid_to_json(const FiniteGroupoid& g) {
  Json objects = Json::array();
  for (int x = 0; x < g.n_objects(); ++x) objects.push_back(g.object_name(x));
  Json morphisms = Json::array();
  for (int m = 0; m < g.n_morphisms(); ++m) {
    const Mor& f = g.morphism(m);
    morphisms.push_back(Json{{"id", f.name},
                             {"src", g.object_name(f.src)},
                             {"dst", g.object_name(f.dst)}});
  }
  Json identity = Json::object();
  for (int x = 0; x < g.n_objects(); ++x) {
    identity[g.object_name(x)] = g.morphism(g.identity_at(x)).name;
  }
  Json compose = Json::array();
  for (int x = 0; x < g.n_objects(); ++x) {
    for (int f : g.in_at(x)) {
      for (int k : g.out_at(x)) {
        int h = g.mul(f, k);
        if (h < 0) continue;
        compose.push_back(Json::array(
            {g.morphism(f).name, g.morphism(k).name, g.morphism(h).name}));
      }
    }
  }
  return Json{{"objects", std::move(objects)},
              {"morphisms", std::move(morphisms)},
              {"identity", std::move(identity)},
              {"compose", std::move(compose)}};
}

GroupoidPtr groupoid_from_json(const Json& j, const Limits& lim) {
  require_record(j, "groupoid", {"objects", "morphisms", "identity", "compose"});
  GroupoidBuilder builder(lim);
  std::unordered_map<std::string, int> objects;
  for (const Json& name : get_array(j.at("objects"), "objects")) {
    std::string n = get_string(name, "object name");
    objects[n] = builder.add_object(n);
  }
  std::unordered_map<std::string, int> morphisms;
  for (const Json& rec : get_array(j.at("morphisms"), "morphisms")) {
    require_record(rec, "morphism", {"id", "src", "dst"});
    std::string id = get_string(rec.at("id"), "morphism id");
    auto src = objects.find(get_string(rec.at("src"), "morphism src"));
    auto dst = objects.find(get_string(rec.at("dst"), "morphism dst"));
    if (src == objects.end() || dst == objects.end()) {
      bad("morphism '" + id + "' has an endpoint that is not a declared object");
    }
    morphisms[id] = builder.add_morphism(id, src->second, dst->second);
  }
  const Json& identity = get_object(j.at("identity"), "identity");
  for (const auto& item : identity.items()) {
    auto obj = objects.find(item.key());
    if (obj == objects.end()) bad("identity for undeclared object '" + item.key() + "'");
    auto mor = morphisms.find(get_string(item.value(), "identity morphism"));
    if (mor == morphisms.end()) {
      bad("identity of '" + item.key() + "' is not a declared morphism");
    }
    builder.set_identity(obj->second, mor->second);
  }
  for (const Json& triple : get_array(j.at("compose"), "compose")) {
    if (!triple.is_array() || triple.size() != 3) {
      bad("compose entries must be [f, g, h] triples");
    }
    int ids[3];
    for (int k = 0; k < 3; ++k) {
      auto it = morphisms.find(get_string(triple[static_cast<std::size_t>(k)], "compose entry"));
      if (it == morphisms.end()) bad("compose entry names an undeclared morphism");
      ids[k] = it->second;
    }
    builder.set_compose(ids[0], ids[1], ids[2]);
  }
  return builder.build();
}

GroupoidPtr load_groupoid(const Json& j, const std::filesystem::path& base,
                          const Limits& lim) {
  if (j.is_string()) {
    std::filesystem::path ref = base / j.get<std::string>();
    return load_groupoid(read_json_file(ref), ref.parent_path(), lim);
  }
  return groupoid_from_json(j, lim);
}

Json functor_to_json(const GFunctor& f) {
  Json maps = functor_maps(f);
  return Json{{"source", groupoid_to_json(*f.source)},
              {"target", groupoid_to_json(*f.target)},
              {"on_objects", std::move(maps.at("on_objects"))},
              {"on_morphisms", std::move(maps.at("on_morphisms"))}};
}

GFunctor functor_from_json(const Json& j, const std::filesystem::path& base,
                           const Limits& lim) {
  require_record(j, "functor", {"source", "target", "on_objects", "on_morphisms"});
  GroupoidPtr source = load_groupoid(j.at("source"), base, lim);
  GroupoidPtr target = load_groupoid(j.at("target"), base, lim);
  return maps_to_functor(j, source, target, "functor");
}

Json span_to_json(const Span& s) {
  return Json{{"source", groupoid_to_json(*s.source)},
              {"target", groupoid_to_json(*s.target)},
              {"apex", groupoid_to_json(*s.apex)},
              {"leftLeg", functor_maps(s.left)},
              {"rightLeg", functor_maps(s.right)}};
}

Span span_from_json(const Json& j, const std::filesystem::path& base, const Limits& lim) {
  require_record(j, "span", {"source", "target", "apex", "leftLeg", "rightLeg"});
  Span s;
  s.source = load_groupoid(j.at("source"), base, lim);
  s.target = load_groupoid(j.at("target"), base, lim);
  s.apex = load_groupoid(j.at("apex"), base, lim);
  require_record(j.at("leftLeg"), "leftLeg", {"on_objects", "on_morphisms"});
  require_record(j.at("rightLeg"), "rightLeg", {"on_objects", "on_morphisms"});
  s.left = maps_to_functor(j.at("leftLeg"), s.apex, s.target, "leftLeg");
  s.right = maps_to_functor(j.at("rightLeg"), s.apex, s.source, "rightLeg");
  ValidationReport report = validate_span(s);
  if (!report.ok()) bad("invalid span: " + report.joined("; "));
  return s;
}

Span load_span(const Json& j, const std::filesystem::path& base, const Limits& lim) {
  if (j.is_string()) {
    std::filesystem::path ref = base / j.get<std::string>();
    return load_span(read_json_file(ref), ref.parent_path(), lim);
  }
  return span_from_json(j, base, lim);
}

Json two_morphism_to_json(const TwoMorphism& c) {
  Json inner = Json{{"apex", groupoid_to_json(*c.inner)},
                    {"leftLeg", functor_maps(c.R)},
                    {"rightLeg", functor_maps(c.S)}};
  Json mu = Json::object();
  Json nu = Json::object();
  const FiniteGroupoid& target = *c.from.target;
  const FiniteGroupoid& source = *c.from.source;
  for (int z = 0; z < c.inner->n_objects(); ++z) {
    mu[c.inner->object_name(z)] = target.morphism(c.mu[z]).name;
    nu[c.inner->object_name(z)] = source.morphism(c.nu[z]).name;
  }
  return Json{{"from", span_to_json(c.from)},
              {"to", span_to_json(c.to)},
              {"inner", std::move(inner)},
              {"mu", std::move(mu)},
              {"nu", std::move(nu)}};
}

TwoMorphism two_morphism_from_json(const Json& j, const std::filesystem::path& base,
                                   const Limits& lim) {
  require_record(j, "2-morphism", {"from", "to", "inner", "mu", "nu"});
  TwoMorphism c;
  c.from = load_span(j.at("from"), base, lim);
  c.to = load_span(j.at("to"), base, lim);
  const Json& inner = j.at("inner");
  require_record(inner, "inner", {"apex", "leftLeg", "rightLeg"});
  c.inner = load_groupoid(inner.at("apex"), base, lim);
  require_record(inner.at("leftLeg"), "leftLeg", {"on_objects", "on_morphisms"});
  require_record(inner.at("rightLeg"), "rightLeg", {"on_objects", "on_morphisms"});
  c.R = maps_to_functor(inner.at("leftLeg"), c.inner, c.to.apex, "inner leftLeg");
  c.S = maps_to_functor(inner.at("rightLeg"), c.inner, c.from.apex, "inner rightLeg");
  const Json& mu = get_object(j.at("mu"), "mu");
  const Json& nu = get_object(j.at("nu"), "nu");
  c.mu.assign(c.inner->n_objects(), -1);
  c.nu.assign(c.inner->n_objects(), -1);
  for (const auto& item : mu.items()) {
    int z = object_index_or_throw(*c.inner, item.key(), "mu");
    c.mu[z] = morphism_index_or_throw(*c.from.target, get_string(item.value(), "mu entry"), "mu");
  }
  for (const auto& item : nu.items()) {
    int z = object_index_or_throw(*c.inner, item.key(), "nu");
    c.nu[z] = morphism_index_or_throw(*c.from.source, get_string(item.value(), "nu entry"), "nu");
  }
  for (int z = 0; z < c.inner->n_objects(); ++z) {
    if (c.mu[z] < 0 || c.nu[z] < 0) {
      bad("object '" + c.inner->object_name(z) + "' missing from mu or nu");
    }
  }
  ValidationReport report = validate_2morphism(c);
  if (!report.ok()) bad("invalid 2-morphism: " + report.joined("; "));
  return c;
}

Json matrix_to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (const std::string& r : m.row_labels) rows.push_back(r);
  Json cols = Json::array();
  for (const std::string& c : m.col_labels) cols.push_back(c);
  Json entries = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rational_text(m.at(r, c)));
    entries.push_back(std::move(row));
  }
  return Json{{"rows", std::move(rows)}, {"cols", std::move(cols)},
              {"entries", std::move(entries)}};
}

QMatrix matrix_from_json(const Json& j) {
  require_record(j, "matrix", {"rows", "cols", "entries"});
  QMatrix m;
  for (const Json& r : get_array(j.at("rows"), "rows")) {
    m.row_labels.push_back(get_string(r, "row label"));
  }
  for (const Json& c : get_array(j.at("cols"), "cols")) {
    m.col_labels.push_back(get_string(c, "col label"));
  }
  const Json& entries = get_array(j.at("entries"), "entries");
  if (entries.size() != m.row_labels.size()) bad("entries row count does not match rows");
  for (const Json& row : entries) {
    if (!row.is_array() || row.size() != m.col_labels.size()) {
      bad("entries column count does not match cols");
    }
    std::vector<Rational> out;
    for (const Json& cell : row) out.push_back(rational_from_text(get_string(cell, "entry")));
    m.entries.push_back(std::move(out));
  }
  return m;
}

Json witness_to_json(const SpanWitness& w, const FiniteGroupoid& nat_left_home,
                     const FiniteGroupoid& nat_right_home) {
  Json maps = functor_maps(w.h);
  Json nat_left = Json::object();
  Json nat_right = Json::object();
  for (int x = 0; x < w.h.source->n_objects(); ++x) {
    const std::string& name = w.h.source->object_name(x);
    nat_left[name] = nat_left_home.morphism(w.nat_left[x]).name;
    nat_right[name] = nat_right_home.morphism(w.nat_right[x]).name;
  }
  return Json{{"mode", w.mode},
              {"on_objects", std::move(maps.at("on_objects"))},
              {"on_morphisms", std::move(maps.at("on_morphisms"))},
              {"nat_left", std::move(nat_left)},
              {"nat_right", std::move(nat_right)}};
}

Json report_to_json(const VerifyReport& r, bool timings) {
  Json checks = Json::array();
  for (const CheckResult& c : r.checks) {
    Json rec = Json{{"name", c.name}, {"relation", c.relation}, {"status", c.status}};
    if (c.strict.has_value()) rec["strict"] = *c.strict;
    if (c.equivalence.has_value()) rec["equivalence"] = *c.equivalence;
    if (timings) rec["elapsed_ms"] = c.elapsed_ms;
    checks.push_back(std::move(rec));
  }
  return Json{{"group", r.group},
              {"level", to_string(r.level)},
              {"passed", r.all_passed()},
              {"checks", std::move(checks)}};
}

void export_model(const FermionModel& m, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_json_file(dir / "psi.json", groupoid_to_json(*m.psi));
  write_json_file(dir / "h.json", groupoid_to_json(*m.h));
  write_json_file(dir / "i.json", functor_to_json(m.i_incl));
  write_json_file(dir / "t.json", functor_to_json(m.t_star));
  write_json_file(dir / "f.json", span_to_json(m.f));
  write_json_file(dir / "fdag.json", span_to_json(m.f_dag));
  write_json_file(dir / "eta.json", two_morphism_to_json(m.eta));
  write_json_file(dir / "eps.json", two_morphism_to_json(m.eps));
  write_json_file(dir / "etadag.json", two_morphism_to_json(m.eta_dag));
  write_json_file(dir / "epsdag.json", two_morphism_to_json(m.eps_dag));
  write_json_file(dir / "state0.json", span_to_json(m.state0));
  write_json_file(dir / "state1.json", span_to_json(m.state1));
}

}  // namespace fspan
