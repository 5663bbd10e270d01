#include "fspan/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace fspan {

int GroupTable::inv(int a) const {
  for (int b = 0; b < n(); ++b) {
    if (mul(a, b) == 0 && mul(b, a) == 0) return b;
  }
  return -1;
}

int GroupTable::order_of(int a) const {
  int k = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

void check_group_axioms(const GroupTable& t) {
  int n = t.n();
  if (n == 0) throw StructuralError("empty group table");
  if (t.table.size() != static_cast<std::size_t>(n) * n) {
    throw StructuralError("group table is not square");
  }
  for (int v : t.table) {
    if (v < 0 || v >= n) throw StructuralError("group table entry out of range");
  }
  for (int a = 0; a < n; ++a) {
    if (t.mul(0, a) != a || t.mul(a, 0) != a) {
      throw StructuralError("element 0 is not an identity of the group table");
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c))) {
          throw StructuralError("group table is not associative");
        }
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    if (t.inv(a) == -1) {
      throw StructuralError("group table element " + t.names[a] + " has no inverse");
    }
  }
}

GroupTable cyclic_group(int n) {
  if (n < 1) throw StructuralError("cyclic group order must be positive");
  GroupTable t;
  t.description = "Z" + std::to_string(n);
  t.names.push_back("e");
  for (int i = 1; i < n; ++i) t.names.push_back("r" + std::to_string(i));
  t.table.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t.table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return t;
}

namespace {

std::string cycle_name(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || perm[i] == i) continue;
    out += '(';
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      first = false;
      out += std::to_string(j + 1);
      j = perm[j];
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

// "a then b" on one-line permutations: (a;b)(x) = b(a(x)).
std::vector<int> perm_then(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[x] = b[a[x]];
  return c;
}

GroupTable table_from_perms(std::string description, std::vector<std::vector<int>> elems) {
  GroupTable t;
  t.description = std::move(description);
  int n = static_cast<int>(elems.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) {
    t.names.push_back(cycle_name(elems[i]));
    index.emplace(elems[i], i);
  }
  t.table.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      t.table[static_cast<std::size_t>(a) * n + b] = index.at(perm_then(elems[a], elems[b]));
    }
  }
  return t;
}

}  // namespace

GroupTable symmetric_group(int n) {
  if (n < 1) throw StructuralError("symmetric group degree must be positive");
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems;
  std::vector<int> p = id;
  do {
    elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // Lexicographic order starts at the identity, which is what GroupTable
  // requires at index 0.
  return table_from_perms("S" + std::to_string(n), std::move(elems));
}

GroupTable group_from_cayley(const std::vector<std::vector<int>>& rows) {
  int n = static_cast<int>(rows.size());
  if (n == 0) throw StructuralError("empty Cayley table");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw StructuralError("Cayley table is not square");
    for (int v : r) {
      if (v < 0 || v >= n) throw StructuralError("Cayley table entry out of range");
    }
  }
  // rows[i][j] = i*j with the right factor first, so "a then b" = rows[b][a].
  int e = -1;
  for (int cand = 0; cand < n; ++cand) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      ok = rows[cand][a] == a && rows[a][cand] == a;
    }
    if (ok) {
      e = cand;
      break;
    }
  }
  if (e == -1) throw StructuralError("Cayley table has no identity element");
  std::vector<int> order(n);  // new index -> original index
  order[0] = e;
  int next = 1;
  for (int i = 0; i < n; ++i) {
    if (i != e) order[next++] = i;
  }
  std::vector<int> pos(n);  // original index -> new index
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  GroupTable t;
  t.description = "cayley";
  for (int i = 0; i < n; ++i) t.names.push_back("x" + std::to_string(order[i]));
  t.table.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      t.table[static_cast<std::size_t>(a) * n + b] = pos[rows[order[b]][order[a]]];
    }
  }
  check_group_axioms(t);
  return t;
}

namespace {

std::vector<std::vector<int>> parse_cycles(const std::string& text, int& degree) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw StructuralError("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<int> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw StructuralError("expected point number in cycle notation: " + text);
      }
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v < 1) throw StructuralError("cycle points are 1-based: " + text);
      if (std::find(cyc.begin(), cyc.end(), v - 1) != cyc.end()) {
        throw StructuralError("repeated point inside a cycle: " + text);
      }
      cyc.push_back(v - 1);
      degree = std::max(degree, v);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
      }
    }
    if (i >= text.size()) throw StructuralError("unterminated cycle: " + text);
    ++i;  // ')'
    cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return cycles;
}

}  // namespace

GroupTable group_from_permutations(const std::vector<std::string>& generators,
                                   int max_elems) {
  if (generators.empty()) throw StructuralError("no permutation generators given");
  int degree = 1;
  std::vector<std::vector<std::vector<int>>> gen_cycles;
  for (const auto& g : generators) gen_cycles.push_back(parse_cycles(g, degree));

  std::vector<std::vector<int>> gens;
  for (const auto& cycles : gen_cycles) {
    std::vector<int> p(degree);
    std::iota(p.begin(), p.end(), 0);
    for (const auto& cyc : cycles) {
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        p[cyc[k]] = cyc[(k + 1) % cyc.size()];
      }
    }
    gens.push_back(p);
  }

  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> seen{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      auto next = perm_then(elems[head], g);
      if (seen.emplace(next, static_cast<int>(elems.size())).second) {
        if (static_cast<int>(elems.size()) >= max_elems) {
          throw BudgetExceeded("permutation group closure exceeds " +
                               std::to_string(max_elems) + " elements");
        }
        elems.push_back(std::move(next));
      }
    }
  }
  return table_from_perms("perm", std::move(elems));
}

GroupoidPtr group_groupoid(const std::string& object_name, const GroupTable& t,
                           const std::string& loop_prefix, const Limits& lim) {
  GroupoidBuilder b(lim);
  int x = b.add_object(object_name);
  std::vector<int> loop(t.n());
  for (int a = 0; a < t.n(); ++a) {
    loop[a] = b.add_morphism(loop_prefix + t.names[a], x, x);
  }
  b.set_identity(x, loop[0]);
  for (int a = 0; a < t.n(); ++a) {
    for (int c = 0; c < t.n(); ++c) b.set_compose(loop[a], loop[c], loop[t.mul(a, c)]);
  }
  return b.build();
}

}  // namespace fspan
