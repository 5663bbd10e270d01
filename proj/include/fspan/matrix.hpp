#pragma once

#include <string>
#include <vector>

#include "fspan/core.hpp"
#include "fspan/span.hpp"

namespace fspan {

// Dense exact-rational matrix. Rows and columns are indexed by the iso
// classes of the groupoids a span connects; the labels carry the class
// representatives' object names so outputs stay readable.
struct QMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<Rational>> entries;  // rows x cols

  int rows() const { return static_cast<int>(row_labels.size()); }
  int cols() const { return static_cast<int>(col_labels.size()); }
  const Rational& at(int r, int c) const { return entries[r][c]; }
  Rational& at(int r, int c) { return entries[r][c]; }
};

QMatrix zero_matrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels);
QMatrix identity_matrix(std::vector<std::string> labels);

// Standard product, right factor applied first. Labels must agree on the
// shared index.
QMatrix matrix_mul(const QMatrix& m1, const QMatrix& m2);
QMatrix matrix_add(const QMatrix& m1, const QMatrix& m2);
QMatrix matrix_scale(const Rational& k, const QMatrix& m);
bool matrix_eq(const QMatrix& m1, const QMatrix& m2);

// Iso class labels of a groupoid, representative order.
std::vector<std::string> class_labels(const FiniteGroupoid& g);

// The linear map of a span: rows are target classes, columns source
// classes, and the entry at ([b], [a]) is |Aut(a)| times the sum of
// 1/|Aut(m)| over the apex classes [m] whose legs land in [a] and [b].
QMatrix span_matrix(const Span& s);

// Coordinates of a span whose source has a single class (a state).
std::vector<Rational> state_vector(const Span& s);

Rational inner_product(const std::vector<Rational>& v, const std::vector<Rational>& w);
std::vector<Rational> apply_matrix(const QMatrix& m, const std::vector<Rational>& v);

}  // namespace fspan
