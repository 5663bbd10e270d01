#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fspan/calculus.hpp"
#include "fspan/core.hpp"
#include "fspan/matrix.hpp"
#include "fspan/two_morphism.hpp"

namespace fspan {

// Planar wire diagrams over the two strand types '-' (annihilation, read
// upward) and '+' (creation). Generators are the unit and counit cups and
// caps plus their daggers, identity wires, and the crossing. ';' stacks
// bottom to top, '*' places side by side left to right, '+' adds, and an
// integer prefix scales. '*' binds tighter than ';', which binds tighter
// than '+'; an integer prefix scales the whole factor to its right within
// the current parentheses, binding looser than ';' but tighter than '+'.

enum class DiagKind {
  eta,       // cup: 1 => "+-"
  eps,       // cap: "-+" => 1
  etadag,    // "+-" => 1
  epsdag,    // 1 => "-+"
  identity,  // wires: w => w
  cross,     // "s1 s2" => "s2 s1"
  tensor,
  seq,
  sum,
  scale,
};

struct DiagramExpr;
using DiagPtr = std::shared_ptr<const DiagramExpr>;

struct DiagramExpr {
  DiagKind kind;
  int pos = 0;               // character offset in the source text
  std::string word;          // identity: the sign word ("" for the unit)
  char sign1 = 0, sign2 = 0;  // cross
  long long factor = 1;      // scale
  DiagPtr a, b;              // children; scale only uses a
};

DiagPtr parse_diagram(const std::string& text);

// Fully parenthesized rendering that parses back to the same tree.
std::string diagram_to_text(const DiagramExpr& e);

struct DiagramType {
  std::string dom;
  std::string cod;
  // Some node's boundary contains adjacent equal signs, so the whole
  // diagram factors through a zero object.
  bool zero_object = false;
};

// Throws StructuralError (with the offending position) on boundary
// mismatches in ';' and '+'.
DiagramType type_of(const DiagramExpr& e);

enum class DiagMode { free, span };

// Perfect pairing of the boundary points: bottom points are numbered
// 0..|dom|-1 left to right, top points |dom|..|dom|+|cod|-1 left to right.
// Pairs hold (low, high) and the list is sorted.
using Pairing = std::vector<std::pair<int, int>>;

struct DiagTerm {
  Pairing pairing;
  std::vector<long long> coeff;  // polynomial in the circle value c, low degree first

  bool operator==(const DiagTerm&) const = default;
};

struct NormalForm {
  std::string dom;
  std::string cod;
  DiagMode mode;
  std::vector<DiagTerm> terms;  // canonically ordered; empty means zero

  bool operator==(const NormalForm&) const = default;
};

NormalForm normalize_diagram(const DiagramExpr& e, DiagMode mode);
NormalForm normalize_diagram(const std::string& text, DiagMode mode);

std::string normal_form_to_text(const NormalForm& nf);

bool diagram_eq(const DiagramExpr& a, const DiagramExpr& b, DiagMode mode);

// Matrix of an object expression: atoms are '[' signs ']' and '1',
// juxtaposition (or '*') multiplies left to right, '+' adds, an integer
// prefix scales. Adjacent equal signs multiply to the zero matrix on
// their own.
QMatrix k0_matrix(const std::string& object_expr);

// Interprets the diagram as a cell between composite spans of the
// calculus' model. Crossings and zero-object boundaries have no cell to
// map to and throw StructuralError.
TwoMorphism evaluate_diagram(const DiagramExpr& e, SpanCalculus& calc);

}  // namespace fspan
