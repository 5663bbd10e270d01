#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "fspan/core.hpp"

namespace fspan {

struct Mor {
  std::string name;
  int src = -1;
  int dst = -1;
};

// Connected components of the morphism graph, in representative order.
// Representatives are the lowest object index of each class.
struct IsoClassPartition {
  std::vector<std::vector<int>> classes;  // object indices, sorted
  std::vector<int> representative;        // per class
  std::vector<int> class_of;              // per object
};

struct AutGroup {
  int object = -1;
  std::vector<int> elements;  // loop morphism indices, in index order
};

class FiniteGroupoid;
using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

// Immutable finite groupoid with an explicit composition table. Built via
// GroupoidBuilder; all derived tables (inverses, components, connecting
// morphisms) are computed once at build time. Instances are safe to share
// across threads.
class FiniteGroupoid {
 public:
  int n_objects() const { return static_cast<int>(objects_.size()); }
  int n_morphisms() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object_name(int x) const { return objects_[x]; }
  const Mor& morphism(int f) const { return morphisms_[f]; }
  const std::vector<std::string>& object_names() const { return objects_; }
  const std::vector<Mor>& morphisms() const { return morphisms_; }

  int src(int f) const { return morphisms_[f].src; }
  int dst(int f) const { return morphisms_[f].dst; }
  int identity_at(int x) const { return identity_[x]; }
  bool is_identity(int f) const {
    return f >= 0 && identity_[morphisms_[f].src] == f &&
           morphisms_[f].src == morphisms_[f].dst;
  }

  // Composite "f then g" (g after f). Returns -1 when dst(f) != src(g) or
  // when the table has no entry for the pair.
  int mul(int f, int g) const {
    const Mor& mf = morphisms_[f];
    const Mor& mg = morphisms_[g];
    if (mf.dst != mg.src) return -1;
    const Block& b = blocks_[mf.dst];
    return b.table[static_cast<std::size_t>(pos_in_[f]) * b.n_out + pos_out_[g]];
  }

  // Two-sided inverse, or -1 if the table does not contain one.
  int inv(int f) const { return inverse_[f]; }

  const std::vector<int>& in_at(int x) const { return in_at_[x]; }
  const std::vector<int>& out_at(int x) const { return out_at_[x]; }
  const std::vector<int>& loops_at(int x) const { return loops_at_[x]; }
  std::vector<int> hom(int x, int y) const;

  int object_index(const std::string& name) const;    // -1 if absent
  int morphism_index(const std::string& name) const;  // -1 if absent

  const IsoClassPartition& iso_classes() const { return classes_; }
  // Morphism representative -> x inside x's component, identity on the
  // representative itself. -1 when the component is not actually connected
  // by invertible morphisms (only possible on groupoids failing validation).
  int connecting(int x) const { return connecting_[x]; }

  Rational cardinality() const;

 private:
  friend class GroupoidBuilder;
  FiniteGroupoid() = default;

  struct Block {
    std::size_t n_out = 0;
    std::vector<int> table;  // n_in x n_out entries, -1 for absent
  };

  std::vector<std::string> objects_;
  std::vector<Mor> morphisms_;
  std::vector<int> identity_;
  std::vector<std::vector<int>> in_at_, out_at_, loops_at_;
  std::vector<int> pos_in_, pos_out_;
  std::vector<Block> blocks_;
  std::vector<int> inverse_;
  std::vector<int> connecting_;
  IsoClassPartition classes_;
  std::unordered_map<std::string, int> object_idx_, morphism_idx_;
};

// Accumulates objects, morphisms, the identity assignment and composition
// entries, then freezes everything into a FiniteGroupoid. Structural
// problems (bad indices, duplicate names, entries for non-composable pairs,
// conflicting entries, missing identity assignment) throw StructuralError.
// Axiom violations are deliberately representable; validate_groupoid finds
// them.
class GroupoidBuilder {
 public:
  explicit GroupoidBuilder(Limits lim = {}) : lim_(lim) {}

  int add_object(const std::string& name);
  int add_morphism(const std::string& name, int src, int dst);
  void set_identity(int obj, int mor);
  // Records h = "f then g". Requires dst(f) == src(g). First call freezes
  // the object/morphism lists.
  void set_compose(int f, int g, int h);

  int n_objects() const { return static_cast<int>(g_.objects_.size()); }
  int n_morphisms() const { return static_cast<int>(g_.morphisms_.size()); }

  GroupoidPtr build();

 private:
  void freeze();

  Limits lim_;
  FiniteGroupoid g_;
  bool frozen_ = false;
  bool built_ = false;
};

// Scans every axiom: totality and endpoint coherence of the composition
// table, identity laws, associativity on all composable triples, existence
// of two-sided inverses. The triple scan is capped by lim.search_nodes.
ValidationReport validate_groupoid(const FiniteGroupoid& g, const Limits& lim = {});

AutGroup automorphism_group(const FiniteGroupoid& g, int x);
AutGroup automorphism_group(const FiniteGroupoid& g, const std::string& object_name);

GroupoidPtr terminal_groupoid();
GroupoidPtr discrete_groupoid(const std::vector<std::string>& names);

// Tagged union; every name is prefixed with its side's tag, so arbitrary
// inputs stay collision free.
GroupoidPtr disjoint_union(const GroupoidPtr& a, const GroupoidPtr& b,
                           const std::string& tag_a = "0:",
                           const std::string& tag_b = "1:",
                           const Limits& lim = {});

// Structural equality: same names, same tables, same entry for entry.
bool same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);

}  // namespace fspan
