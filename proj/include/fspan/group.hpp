#pragma once

#include <string>
#include <vector>

#include "fspan/core.hpp"
#include "fspan/groupoid.hpp"

namespace fspan {

// Plain multiplication table. Element 0 is always the identity and
// mul(a, b) means "a then b" (the diagrammatic order used by groupoid
// composition tables): when elements act as functions, mul(a, b) applies
// a first.
struct GroupTable {
  std::string description;
  std::vector<std::string> names;
  std::vector<int> table;  // n*n row-major, table[a*n + b] = mul(a, b)

  int n() const { return static_cast<int>(names.size()); }
  int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * n() + b]; }
  int inv(int a) const;
  int order_of(int a) const;
};

// Throws StructuralError when the table is not a group (no identity,
// broken associativity, missing inverses).
void check_group_axioms(const GroupTable& t);

GroupTable cyclic_group(int n);
GroupTable symmetric_group(int n);

// rows[i][j] is the product i*j with the right factor acting first (the
// usual function-composition reading, "row = left factor"). Elements are
// renumbered so the identity sits at index 0; names keep the original
// indices ("x3" is row 3 of the input).
GroupTable group_from_cayley(const std::vector<std::vector<int>>& rows);

// Generators in cycle notation on positive integers, e.g. "(1 2 3)(4 5)".
// The closure is enumerated breadth first and must stay within max_elems.
GroupTable group_from_permutations(const std::vector<std::string>& generators,
                                   int max_elems = 24);

// One object whose loops are the group elements; loop names are
// loop_prefix + element name.
GroupoidPtr group_groupoid(const std::string& object_name, const GroupTable& t,
                           const std::string& loop_prefix = "",
                           const Limits& lim = {});

}  // namespace fspan
