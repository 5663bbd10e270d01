#include "fspan/matrix.hpp"

namespace fspan {

QMatrix zero_matrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels) {
  QMatrix m;
  m.row_labels = std::move(row_labels);
  m.col_labels = std::move(col_labels);
  m.entries.assign(m.row_labels.size(), std::vector<Rational>(m.col_labels.size(), 0));
  return m;
}

QMatrix identity_matrix(std::vector<std::string> labels) {
  QMatrix m = zero_matrix(labels, labels);
  for (int i = 0; i < m.rows(); ++i) m.entries[i][i] = 1;
  return m;
}

QMatrix matrix_mul(const QMatrix& m1, const QMatrix& m2) {
  if (m1.col_labels != m2.row_labels) {
    throw StructuralError("matrix product: inner labels differ");
  }
  QMatrix out = zero_matrix(m1.row_labels, m2.col_labels);
  for (int i = 0; i < m1.rows(); ++i) {
    for (int k = 0; k < m1.cols(); ++k) {
      if (m1.entries[i][k] == 0) continue;
      for (int j = 0; j < m2.cols(); ++j) {
        out.entries[i][j] += m1.entries[i][k] * m2.entries[k][j];
      }
    }
  }
  return out;
}

QMatrix matrix_add(const QMatrix& m1, const QMatrix& m2) {
  if (m1.row_labels != m2.row_labels || m1.col_labels != m2.col_labels) {
    throw StructuralError("matrix sum: labels differ");
  }
  QMatrix out = m1;
  for (int i = 0; i < out.rows(); ++i) {
    for (int j = 0; j < out.cols(); ++j) out.entries[i][j] += m2.entries[i][j];
  }
  return out;
}

QMatrix matrix_scale(const Rational& k, const QMatrix& m) {
  QMatrix out = m;
  for (auto& row : out.entries) {
    for (auto& e : row) e *= k;
  }
  return out;
}

bool matrix_eq(const QMatrix& m1, const QMatrix& m2) {
  return m1.row_labels == m2.row_labels && m1.col_labels == m2.col_labels &&
         m1.entries == m2.entries;
}

std::vector<std::string> class_labels(const FiniteGroupoid& g) {
  std::vector<std::string> out;
  out.reserve(g.iso_classes().representative.size());
  for (int rep : g.iso_classes().representative) out.push_back(g.object_name(rep));
  return out;
}

QMatrix span_matrix(const Span& s) {
  const FiniteGroupoid& A = *s.source;
  const FiniteGroupoid& B = *s.target;
  const FiniteGroupoid& M = *s.apex;
  QMatrix m = zero_matrix(class_labels(B), class_labels(A));

  const auto& ca = A.iso_classes();
  const auto& cb = B.iso_classes();
  const auto& cm = M.iso_classes();
  for (std::size_t c = 0; c < cm.representative.size(); ++c) {
    int rep = cm.representative[c];
    int col = ca.class_of[s.right.ob[rep]];
    int row = cb.class_of[s.left.ob[rep]];
    m.entries[row][col] += Rational(1) / static_cast<int>(M.loops_at(rep).size());
  }
  for (int col = 0; col < m.cols(); ++col) {
    Rational aut = static_cast<int>(A.loops_at(ca.representative[col]).size());
    for (int row = 0; row < m.rows(); ++row) m.entries[row][col] *= aut;
  }
  return m;
}

std::vector<Rational> state_vector(const Span& s) {
  QMatrix m = span_matrix(s);
  if (m.cols() != 1) {
    throw StructuralError("state vector needs a span whose source has a single class");
  }
  std::vector<Rational> v(m.rows());
  for (int i = 0; i < m.rows(); ++i) v[i] = m.entries[i][0];
  return v;
}

Rational inner_product(const std::vector<Rational>& v, const std::vector<Rational>& w) {
  if (v.size() != w.size()) throw StructuralError("inner product: lengths differ");
  Rational out = 0;
  for (std::size_t i = 0; i < v.size(); ++i) out += v[i] * w[i];
  return out;
}

std::vector<Rational> apply_matrix(const QMatrix& m, const std::vector<Rational>& v) {
  if (v.size() != static_cast<std::size_t>(m.cols())) {
    throw StructuralError("matrix application: length mismatch");
  }
  std::vector<Rational> out(m.rows(), 0);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out[i] += m.entries[i][j] * v[j];
  }
  return out;
}

}  // namespace fspan
