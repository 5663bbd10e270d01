#include "fspan/fermion.hpp"

#include <fstream>
#include <sstream>

namespace fspan {

namespace {

int parse_count(const std::string& spec, std::size_t from) {
  try {
    std::size_t used = 0;
    int n = std::stoi(spec.substr(from), &used);
    if (used != spec.size() - from) throw StructuralError("unrecognized group spec: " + spec);
    return n;
  } catch (const StructuralError&) {
    throw;
  } catch (const std::exception&) {
    throw StructuralError("unrecognized group spec: " + spec);
  }
}

GroupTable cayley_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open Cayley table file: " + path);
  std::vector<int> flat;
  int v = 0;
  while (in >> v) flat.push_back(v);
  if (flat.empty()) throw StructuralError("Cayley table file is empty: " + path);
  std::size_t n = 1;
  while (n * n < flat.size()) ++n;
  if (n * n != flat.size()) {
    throw StructuralError("Cayley table file is not a square table: " + path);
  }
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = flat[i * n + j];
  }
  if (n > 24) throw StructuralError("Cayley tables are limited to 24 elements");
  return group_from_cayley(rows);
}

}  // namespace

GroupTable parse_group_spec(const std::string& spec) {
  if (spec.size() >= 2 && spec[0] == 'Z') {
    int n = parse_count(spec, 1);
    if (n < 1 || n > 24) throw StructuralError("cyclic groups are limited to Z1..Z24");
    return cyclic_group(n);
  }
  if (spec.size() >= 2 && spec[0] == 'S') {
    int n = parse_count(spec, 1);
    if (n < 1 || n > 4) throw StructuralError("symmetric groups are limited to S1..S4");
    return symmetric_group(n);
  }
  if (spec.rfind("cayley:", 0) == 0) return cayley_from_file(spec.substr(7));
  if (spec.rfind("perm:", 0) == 0) {
    std::vector<std::string> gens;
    std::stringstream ss(spec.substr(5));
    std::string part;
    while (std::getline(ss, part, ';')) {
      if (!part.empty()) gens.push_back(part);
    }
    if (gens.empty()) throw StructuralError("perm spec has no generators: " + spec);
    return group_from_permutations(gens);
  }
  throw StructuralError("unrecognized group spec: " + spec +
                        " (expected Z<n>, S<n>, cayley:<path> or perm:<gens>)");
}

FermionModel build_fermion_model(const GroupTable& group, const std::string& spec,
                                 const Limits& lim) {
  check_group_axioms(group);
  FermionModel m;
  m.group = group;
  m.group_spec = spec;

  int n = group.n();

  // psi: loops at A are the group, loops at A* the starred copy with
  // reversed composition.
  {
    GroupoidBuilder b(lim);
    m.object_a = b.add_object("A");
    m.object_astar = b.add_object("A*");
    for (int g = 0; g < n; ++g) b.add_morphism(group.names[g], m.object_a, m.object_a);
    for (int g = 0; g < n; ++g) {
      b.add_morphism(group.names[g] + "*", m.object_astar, m.object_astar);
    }
    b.set_identity(m.object_a, 0);
    b.set_identity(m.object_astar, n);
    for (int a = 0; a < n; ++a) {
      for (int c = 0; c < n; ++c) {
        b.set_compose(a, c, group.mul(a, c));
        b.set_compose(n + a, n + c, n + group.mul(c, a));
      }
    }
    m.psi = b.build();
  }

  m.h = group_groupoid("A", group, "", lim);
  m.unit = terminal_groupoid();

  m.i_incl.source = m.h;
  m.i_incl.target = m.psi;
  m.i_incl.ob = {m.object_a};
  m.i_incl.mor.resize(n);
  for (int g = 0; g < n; ++g) m.i_incl.mor[g] = g;

  m.t_star.source = m.h;
  m.t_star.target = m.psi;
  m.t_star.ob = {m.object_astar};
  m.t_star.mor.resize(n);
  for (int g = 0; g < n; ++g) m.t_star.mor[g] = n + group.inv(g);

  m.f.source = m.psi;
  m.f.target = m.psi;
  m.f.apex = m.h;
  m.f.left = m.i_incl;
  m.f.right = m.t_star;
  m.f_dag = reverse_span(m.f);

  auto point_state = [&](int ob) {
    Span s;
    s.source = m.unit;
    s.target = m.psi;
    s.apex = m.unit;
    s.right = identity_functor(m.unit);
    s.left.source = m.unit;
    s.left.target = m.psi;
    s.left.ob = {ob};
    s.left.mor = {m.psi->identity_at(ob)};
    return s;
  };
  m.state0 = point_state(m.object_a);
  m.state1 = point_state(m.object_astar);

  int id_a = m.psi->identity_at(m.object_a);
  int id_astar = m.psi->identity_at(m.object_astar);

  // Unit: id_psi => compose(f_dag, f). The inner groupoid is h itself,
  // sitting over A* on the identity side and over the composite's
  // (A, A, id_A) objects on the other; loops go to the diagonal pairs.
  {
    ComposedSpan fdf = compose_spans_data(m.f_dag, m.f, lim);
    TwoMorphism c;
    c.from = identity_span(m.psi);
    c.to = fdf.span;
    c.inner = m.h;
    c.S = m.t_star;
    c.R.source = m.h;
    c.R.target = fdf.span.apex;
    c.R.ob = {fdf.pull.find_object(0, 0, id_a)};
    c.R.mor.resize(n);
    for (int g = 0; g < n; ++g) {
      c.R.mor[g] = fdf.pull.find_morphism(c.R.ob[0], g, g);
    }
    c.mu = {id_astar};
    c.nu = {id_astar};
    m.eta = std::move(c);
  }

  // Counit: compose(f, f_dag) => id_psi, same shape on the other side.
  {
    ComposedSpan ffd = compose_spans_data(m.f, m.f_dag, lim);
    TwoMorphism c;
    c.from = ffd.span;
    c.to = identity_span(m.psi);
    c.inner = m.h;
    c.S.source = m.h;
    c.S.target = ffd.span.apex;
    c.S.ob = {ffd.pull.find_object(0, 0, id_astar)};
    c.S.mor.resize(n);
    for (int g = 0; g < n; ++g) {
      c.S.mor[g] = ffd.pull.find_morphism(c.S.ob[0], g, g);
    }
    c.R = m.i_incl;
    c.mu = {id_a};
    c.nu = {id_a};
    m.eps = std::move(c);
  }

  m.eta_dag = dagger_2(m.eta);
  m.eps_dag = dagger_2(m.eps);
  return m;
}

FermionModel build_fermion_model(const std::string& spec, const Limits& lim) {
  return build_fermion_model(parse_group_spec(spec), spec, lim);
}

}  // namespace fspan
