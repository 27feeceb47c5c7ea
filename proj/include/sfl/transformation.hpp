#pragma once

#include <functional>
#include <optional>

#include "sfl/field.hpp"
#include "sfl/matrix.hpp"

namespace sfl {

// Linear endomorphism U of Mat_n(F) as an n^2 x n^2 matrix acting on vec(M),
// where vec stacks columns: entry (i,j) (1-based) sits at position (j-1)n + i.
template <class S>
struct TransformationMatrix {
  int n = 0;
  Field field;
  Mat<S> entries;
};

// 0-based position of entry (i,j) (0-based) in vec(M).
inline int vec_index(int n, int i, int j) { return j * n + i; }

template <class S>
Vec<S> vectorize(const Mat<S>& m) {
  const int n = static_cast<int>(m.rows());
  Vec<S> v(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) v(vec_index(n, i, j)) = m(i, j);
  return v;
}

template <class S>
Mat<S> unvectorize(const Vec<S>& v, int n) {
  Mat<S> m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = v(vec_index(n, i, j));
  return m;
}

template <class S>
Mat<S> basis_matrix(int n, int i, int j, const Field& field) {
  Mat<S> e = zeros<S>(n, n, field);
  e(i, j) = field.element<S>(1);
  return e;
}

template <class S>
Mat<S> apply(const TransformationMatrix<S>& u, const Mat<S>& m) {
  if (m.rows() != u.n || m.cols() != u.n) throw Error("DimensionMismatch", "matrix size differs from transformation");
  return unvectorize<S>(u.entries * vectorize(m), u.n);
}

// Builds U column by column from its values on the basis matrices E_ij.
template <class S>
TransformationMatrix<S> from_linear_map(int n, const Field& field, const std::function<Mat<S>(const Mat<S>&)>& fn) {
  TransformationMatrix<S> u{n, field, zeros<S>(n * n, n * n, field)};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) u.entries.col(vec_index(n, i, j)) = vectorize<S>(fn(basis_matrix<S>(n, i, j, field)));
  return u;
}

template <class S>
TransformationMatrix<S> identity_transformation(int n, const Field& field) {
  return from_linear_map<S>(n, field, [](const Mat<S>& m) { return m; });
}

// M -> R * M (Hadamard).
template <class S>
TransformationMatrix<S> hadamard_transformation(const Mat<S>& r, const Field& field) {
  return from_linear_map<S>(static_cast<int>(r.rows()), field, [&](const Mat<S>& m) { return hadamard(r, m); });
}

// M -> P M Q.
template <class S>
TransformationMatrix<S> multiplication_transformation(const Mat<S>& p, const Mat<S>& q, const Field& field) {
  return from_linear_map<S>(static_cast<int>(p.rows()), field, [&](const Mat<S>& m) { return Mat<S>(p * m * q); });
}

// M -> M^T.
template <class S>
TransformationMatrix<S> transpose_transformation(int n, const Field& field) {
  return from_linear_map<S>(n, field, [](const Mat<S>& m) { return Mat<S>(m.transpose()); });
}

// M -> c M.
template <class S>
TransformationMatrix<S> scalar_transformation(int n, const S& c, const Field& field) {
  return from_linear_map<S>(n, field, [&](const Mat<S>& m) { return Mat<S>(m * c); });
}

// first o second: M -> first(second(M)).
template <class S>
TransformationMatrix<S> composed(const TransformationMatrix<S>& first, const TransformationMatrix<S>& second) {
  if (first.n != second.n) throw Error("DimensionMismatch", "composing transformations of different sizes");
  return {first.n, first.field, Mat<S>(first.entries * second.entries)};
}

template <class S>
std::optional<TransformationMatrix<S>> inverse_transformation(const TransformationMatrix<S>& u) {
  auto inv = matrix_inverse(u.entries, u.field);
  if (!inv) return std::nullopt;
  return TransformationMatrix<S>{u.n, u.field, *inv};
}

template <class S>
bool is_invertible(const TransformationMatrix<S>& u) {
  return !is_zero(determinant(u.entries));
}

template <class S>
bool operator==(const TransformationMatrix<S>& a, const TransformationMatrix<S>& b) {
  return a.n == b.n && a.field == b.field && equal(a.entries, b.entries);
}

}  // namespace sfl
