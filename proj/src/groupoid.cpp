#include "fspan/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace fspan {

std::vector<int> FiniteGroupoid::hom(int x, int y) const {
  std::vector<int> out;
  for (int f : out_at_[x]) {
    if (morphisms_[f].dst == y) out.push_back(f);
  }
  return out;
}

int FiniteGroupoid::object_index(const std::string& name) const {
  auto it = object_idx_.find(name);
  return it == object_idx_.end() ? -1 : it->second;
}

int FiniteGroupoid::morphism_index(const std::string& name) const {
  auto it = morphism_idx_.find(name);
  return it == morphism_idx_.end() ? -1 : it->second;
}

Rational FiniteGroupoid::cardinality() const {
  Rational total = 0;
  for (int rep : classes_.representative) {
    total += Rational(1) / static_cast<int>(loops_at_[rep].size());
  }
  return total;
}

int GroupoidBuilder::add_object(const std::string& name) {
  if (frozen_) throw StructuralError("cannot add objects after composition entries");
  if (g_.object_idx_.count(name)) {
    throw StructuralError("duplicate object name: " + name);
  }
  int idx = static_cast<int>(g_.objects_.size());
  g_.objects_.push_back(name);
  g_.object_idx_.emplace(name, idx);
  g_.identity_.push_back(-1);
  return idx;
}

int GroupoidBuilder::add_morphism(const std::string& name, int src, int dst) {
  if (frozen_) throw StructuralError("cannot add morphisms after composition entries");
  if (src < 0 || src >= n_objects() || dst < 0 || dst >= n_objects()) {
    throw StructuralError("morphism " + name + " has unresolvable endpoints");
  }
  if (g_.morphism_idx_.count(name)) {
    throw StructuralError("duplicate morphism name: " + name);
  }
  if (g_.morphisms_.size() >= lim_.max_morphisms) {
    throw BudgetExceeded("morphism count limit (" +
                         std::to_string(lim_.max_morphisms) + ") exceeded");
  }
  int idx = static_cast<int>(g_.morphisms_.size());
  g_.morphisms_.push_back({name, src, dst});
  g_.morphism_idx_.emplace(name, idx);
  return idx;
}

void GroupoidBuilder::set_identity(int obj, int mor) {
  if (obj < 0 || obj >= n_objects() || mor < 0 || mor >= n_morphisms()) {
    throw StructuralError("identity assignment with unresolvable ids");
  }
  const Mor& m = g_.morphisms_[mor];
  if (m.src != obj || m.dst != obj) {
    throw StructuralError("identity of " + g_.objects_[obj] + " is not a loop there");
  }
  g_.identity_[obj] = mor;
}

void GroupoidBuilder::freeze() {
  if (frozen_) return;
  frozen_ = true;
  int no = n_objects(), nm = n_morphisms();
  g_.in_at_.assign(no, {});
  g_.out_at_.assign(no, {});
  g_.pos_in_.assign(nm, -1);
  g_.pos_out_.assign(nm, -1);
  for (int f = 0; f < nm; ++f) {
    const Mor& m = g_.morphisms_[f];
    g_.pos_out_[f] = static_cast<int>(g_.out_at_[m.src].size());
    g_.out_at_[m.src].push_back(f);
    g_.pos_in_[f] = static_cast<int>(g_.in_at_[m.dst].size());
    g_.in_at_[m.dst].push_back(f);
  }
  // One packed in x out table per object keeps the memory for the
  // composition table proportional to the number of composable pairs.
  std::size_t cells = 0;
  g_.blocks_.resize(no);
  for (int x = 0; x < no; ++x) {
    std::size_t n_in = g_.in_at_[x].size(), n_out = g_.out_at_[x].size();
    cells += n_in * n_out;
    if (cells > 32'000'000) {
      throw BudgetExceeded("composition table would exceed the cell limit");
    }
    g_.blocks_[x].n_out = n_out;
    g_.blocks_[x].table.assign(n_in * n_out, -1);
  }
}

void GroupoidBuilder::set_compose(int f, int g, int h) {
  freeze();
  int nm = n_morphisms();
  if (f < 0 || f >= nm || g < 0 || g >= nm || h < 0 || h >= nm) {
    throw StructuralError("composition entry with unresolvable ids");
  }
  const Mor& mf = g_.morphisms_[f];
  const Mor& mg = g_.morphisms_[g];
  if (mf.dst != mg.src) {
    throw StructuralError("composition entry for non-composable pair (" +
                          mf.name + ", " + mg.name + ")");
  }
  FiniteGroupoid::Block& b = g_.blocks_[mf.dst];
  int& cell = b.table[static_cast<std::size_t>(g_.pos_in_[f]) * b.n_out + g_.pos_out_[g]];
  if (cell != -1 && cell != h) {
    throw StructuralError("conflicting composition entries for (" + mf.name +
                          ", " + mg.name + ")");
  }
  cell = h;
}

GroupoidPtr GroupoidBuilder::build() {
  if (built_) throw StructuralError("builder already consumed");
  built_ = true;
  freeze();
  int no = n_objects(), nm = n_morphisms();
  for (int x = 0; x < no; ++x) {
    if (g_.identity_[x] == -1) {
      throw StructuralError("no identity assigned to object " + g_.objects_[x]);
    }
  }

  g_.loops_at_.assign(no, {});
  for (int f = 0; f < nm; ++f) {
    if (g_.morphisms_[f].src == g_.morphisms_[f].dst) {
      g_.loops_at_[g_.morphisms_[f].src].push_back(f);
    }
  }

  // Two-sided inverses by table scan; -1 marks failures for validation.
  g_.inverse_.assign(nm, -1);
  for (int f = 0; f < nm; ++f) {
    const Mor& m = g_.morphisms_[f];
    for (int cand : g_.out_at_[m.dst]) {
      if (g_.morphisms_[cand].dst != m.src) continue;
      if (g_.mul(f, cand) == g_.identity_[m.src] &&
          g_.mul(cand, f) == g_.identity_[m.dst]) {
        g_.inverse_[f] = cand;
        break;
      }
    }
  }

  // Connected components, ordered by their lowest object index.
  std::vector<int> comp(no, -1);
  int n_comp = 0;
  for (int x = 0; x < no; ++x) {
    if (comp[x] != -1) continue;
    std::queue<int> q;
    comp[x] = n_comp;
    q.push(x);
    while (!q.empty()) {
      int y = q.front();
      q.pop();
      auto visit = [&](int z) {
        if (comp[z] == -1) {
          comp[z] = n_comp;
          q.push(z);
        }
      };
      for (int f : g_.out_at_[y]) visit(g_.morphisms_[f].dst);
      for (int f : g_.in_at_[y]) visit(g_.morphisms_[f].src);
    }
    ++n_comp;
  }
  g_.classes_.classes.assign(n_comp, {});
  g_.classes_.class_of = comp;
  for (int x = 0; x < no; ++x) g_.classes_.classes[comp[x]].push_back(x);
  g_.classes_.representative.resize(n_comp);
  for (int c = 0; c < n_comp; ++c) g_.classes_.representative[c] = g_.classes_.classes[c][0];

  // One connecting morphism rep -> x per object, following breadth first
  // order so equal inputs always produce equal witnesses downstream.
  g_.connecting_.assign(no, -1);
  for (int c = 0; c < n_comp; ++c) {
    int rep = g_.classes_.representative[c];
    g_.connecting_[rep] = g_.identity_[rep];
    std::queue<int> q;
    q.push(rep);
    while (!q.empty()) {
      int y = q.front();
      q.pop();
      for (int f : g_.out_at_[y]) {
        int z = g_.morphisms_[f].dst;
        if (g_.connecting_[z] != -1) continue;
        int via = g_.mul(g_.connecting_[y], f);
        if (via == -1) continue;
        g_.connecting_[z] = via;
        q.push(z);
      }
      for (int f : g_.in_at_[y]) {
        int z = g_.morphisms_[f].src;
        if (g_.connecting_[z] != -1 || g_.inverse_[f] == -1) continue;
        int via = g_.mul(g_.connecting_[y], g_.inverse_[f]);
        if (via == -1) continue;
        g_.connecting_[z] = via;
        q.push(z);
      }
    }
  }

  return std::make_shared<const FiniteGroupoid>(std::move(g_));
}

ValidationReport validate_groupoid(const FiniteGroupoid& g, const Limits& lim) {
  ValidationReport rep;
  int no = g.n_objects(), nm = g.n_morphisms();

  for (int x = 0; x < no; ++x) {
    for (int f : g.in_at(x)) {
      for (int h : g.out_at(x)) {
        int c = g.mul(f, h);
        if (c == -1) {
          rep.add("composition not total: no entry for (" +
                  g.morphism(f).name + ", " + g.morphism(h).name + ")");
        } else if (g.src(c) != g.src(f) || g.dst(c) != g.dst(h)) {
          rep.add("compose entry (" + g.morphism(f).name + ", " +
                  g.morphism(h).name + ") has wrong endpoints");
        }
      }
    }
  }

  for (int x = 0; x < no; ++x) {
    int e = g.identity_at(x);
    for (int f : g.out_at(x)) {
      if (g.mul(e, f) != f) {
        rep.add("identity failure: id(" + g.object_name(x) + ") then " +
                g.morphism(f).name + " != " + g.morphism(f).name);
      }
    }
    for (int f : g.in_at(x)) {
      if (g.mul(f, e) != f) {
        rep.add("identity failure: " + g.morphism(f).name + " then id(" +
                g.object_name(x) + ") != " + g.morphism(f).name);
      }
    }
  }

  std::uint64_t triples = 0;
  for (int m = 0; m < nm; ++m) {
    triples += static_cast<std::uint64_t>(g.in_at(g.src(m)).size()) *
               g.out_at(g.dst(m)).size();
    if (lim.search_nodes != 0 && triples > lim.search_nodes) {
      throw BudgetExceeded("associativity scan would visit too many triples");
    }
  }
  for (int m = 0; m < nm; ++m) {
    for (int f : g.in_at(g.src(m))) {
      for (int h : g.out_at(g.dst(m))) {
        int fm = g.mul(f, m), mh = g.mul(m, h);
        if (fm == -1 || mh == -1) continue;  // reported by the totality scan
        if (g.mul(fm, h) != g.mul(f, mh)) {
          rep.add("associativity fails on (" + g.morphism(f).name + ", " +
                  g.morphism(m).name + ", " + g.morphism(h).name + ")");
        }
      }
    }
  }

  for (int f = 0; f < nm; ++f) {
    if (g.inv(f) == -1) {
      rep.add("no two-sided inverse for " + g.morphism(f).name);
    }
  }
  return rep;
}

AutGroup automorphism_group(const FiniteGroupoid& g, int x) {
  if (x < 0 || x >= g.n_objects()) throw StructuralError("unknown object index");
  AutGroup a;
  a.object = x;
  a.elements = g.loops_at(x);
  for (int f : a.elements) {
    if (g.inv(f) == -1) {
      throw StructuralError("loop " + g.morphism(f).name +
                            " has no inverse; groupoid is invalid");
    }
    for (int h : a.elements) {
      if (g.mul(f, h) == -1) {
        throw StructuralError("loops at " + g.object_name(x) +
                              " are not closed under composition");
      }
    }
  }
  return a;
}

AutGroup automorphism_group(const FiniteGroupoid& g, const std::string& object_name) {
  int x = g.object_index(object_name);
  if (x == -1) throw StructuralError("unknown object: " + object_name);
  return automorphism_group(g, x);
}

GroupoidPtr terminal_groupoid() {
  GroupoidBuilder b;
  int pt = b.add_object("pt");
  int id = b.add_morphism("id", pt, pt);
  b.set_identity(pt, id);
  b.set_compose(id, id, id);
  return b.build();
}

GroupoidPtr discrete_groupoid(const std::vector<std::string>& names) {
  GroupoidBuilder b;
  for (const auto& n : names) {
    int x = b.add_object(n);
    int id = b.add_morphism("id_" + n, x, x);
    b.set_identity(x, id);
  }
  for (int x = 0; x < b.n_objects(); ++x) b.set_compose(x, x, x);
  return b.build();
}

GroupoidPtr disjoint_union(const GroupoidPtr& a, const GroupoidPtr& b,
                           const std::string& tag_a, const std::string& tag_b,
                           const Limits& lim) {
  GroupoidBuilder out(lim);
  auto copy_side = [&out](const FiniteGroupoid& g, const std::string& tag,
                          std::vector<int>& ob, std::vector<int>& mor) {
    ob.resize(g.n_objects());
    mor.resize(g.n_morphisms());
    for (int x = 0; x < g.n_objects(); ++x) {
      ob[x] = out.add_object(tag + g.object_name(x));
    }
    for (int f = 0; f < g.n_morphisms(); ++f) {
      const Mor& m = g.morphism(f);
      mor[f] = out.add_morphism(tag + m.name, ob[m.src], ob[m.dst]);
    }
    for (int x = 0; x < g.n_objects(); ++x) {
      out.set_identity(ob[x], mor[g.identity_at(x)]);
    }
  };
  std::vector<int> ob_a, mor_a, ob_b, mor_b;
  copy_side(*a, tag_a, ob_a, mor_a);
  copy_side(*b, tag_b, ob_b, mor_b);
  auto copy_table = [&out](const FiniteGroupoid& g, const std::vector<int>& mor) {
    for (int x = 0; x < g.n_objects(); ++x) {
      for (int f : g.in_at(x)) {
        for (int h : g.out_at(x)) {
          int c = g.mul(f, h);
          if (c != -1) out.set_compose(mor[f], mor[h], mor[c]);
        }
      }
    }
  };
  copy_table(*a, mor_a);
  copy_table(*b, mor_b);
  return out.build();
}

bool same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.n_objects() != b.n_objects() || a.n_morphisms() != b.n_morphisms()) {
    return false;
  }
  if (a.object_names() != b.object_names()) return false;
  for (int f = 0; f < a.n_morphisms(); ++f) {
    const Mor& ma = a.morphism(f);
    const Mor& mb = b.morphism(f);
    if (ma.name != mb.name || ma.src != mb.src || ma.dst != mb.dst) return false;
  }
  for (int x = 0; x < a.n_objects(); ++x) {
    if (a.identity_at(x) != b.identity_at(x)) return false;
    for (int f : a.in_at(x)) {
      for (int h : a.out_at(x)) {
        if (a.mul(f, h) != b.mul(f, h)) return false;
      }
    }
  }
  return true;
}

}  // namespace fspan
