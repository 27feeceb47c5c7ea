#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "sfl/errors.hpp"
#include "sfl/field.hpp"
#include "sfl/permutation.hpp"

namespace sfl {

// Matrices use Eigen's 0-based indexing; 1-based indices only
// appear in the arguments of permutation-related functions.
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
Mat<S> filled(int rows, int cols, const S& value) {
  Mat<S> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = value;
  return m;
}

template <class S>
Mat<S> zeros(int rows, int cols, const Field& field) {
  return filled<S>(rows, cols, field.element<S>(0));
}

// E, the identity of the Hadamard product.
template <class S>
Mat<S> ones(int n, const Field& field) {
  return filled<S>(n, n, field.element<S>(1));
}

template <class S>
Mat<S> identity(int n, const Field& field) {
  Mat<S> m = zeros<S>(n, n, field);
  for (int i = 0; i < n; ++i) m(i, i) = field.element<S>(1);
  return m;
}

// P_s with entry (i,j) equal to 1 iff i = s(j).
template <class S>
Mat<S> perm_matrix(const Permutation& s, const Field& field) {
  const int n = s.n();
  Mat<S> m = zeros<S>(n, n, field);
  for (int j = 1; j <= n; ++j) m(s(j) - 1, j - 1) = field.element<S>(1);
  return m;
}

template <class S>
void require_same_shape(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error("DimensionMismatch", std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

template <class S>
Mat<S> hadamard(const Mat<S>& a, const Mat<S>& b) {
  require_same_shape(a, b);
  return a.cwiseProduct(b);
}

template <class S>
bool has_zero_entry(const Mat<S>& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (is_zero(a(i, j))) return true;
  return false;
}

template <class S>
void require_nowhere_zero(const Mat<S>& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (is_zero(a(i, j)))
        throw Error("ZeroEntry", "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is zero");
}

// A^{[-1]}: entrywise inverse.
template <class S>
Mat<S> hadamard_inverse(const Mat<S>& a) {
  require_nowhere_zero(a);
  Mat<S> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = inverse(a(i, j));
  return r;
}

template <class S>
Mat<S> outer(const Vec<S>& x, const Vec<S>& y) {
  return x * y.transpose();
}

template <class S>
bool equal(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

template <class S>
struct Echelon {
  Mat<S> reduced;           // reduced row-echelon form
  std::vector<int> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan elimination; exact, so any nonzero entry is a valid pivot.
template <class S>
Echelon<S> rref(Mat<S> a) {
  Echelon<S> out;
  const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(a(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    const S inv = inverse(a(r, c));
    for (int j = c; j < cols; ++j) a(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      const S factor = a(i, c);
      for (int j = c; j < cols; ++j) a(i, j) -= factor * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

template <class S>
int matrix_rank(const Mat<S>& a) {
  return static_cast<int>(rref(a).pivots.size());
}

template <class S>
S determinant(Mat<S> a) {
  if (a.rows() != a.cols()) throw Error("DimensionMismatch", "determinant of a non-square matrix");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return S(1);
  S det = one_like(a(0, 0));
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(a(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) return a(0, 0) - a(0, 0);
    if (piv != c) {
      a.row(piv).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    const S inv = inverse(a(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c))) continue;
      const S factor = a(i, c) * inv;
      for (int j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return det;
}

// Basis of {x : a x = 0} as the columns of the result.
template <class S>
Mat<S> nullspace(const Mat<S>& a, const Field& field) {
  Echelon<S> e = rref(a);
  const int cols = static_cast<int>(a.cols());
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat<S> basis = zeros<S>(cols, static_cast<int>(free_cols.size()), field);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    basis(fc, static_cast<int>(k)) = field.element<S>(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], static_cast<int>(k)) = -e.reduced(static_cast<int>(r), fc);
  }
  return basis;
}

// Some solution of a x = b, if any.
template <class S>
std::optional<Vec<S>> solve(const Mat<S>& a, const Vec<S>& b, const Field& field) {
  if (a.rows() != b.rows()) throw Error("DimensionMismatch", "right-hand side length");
  Mat<S> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  Echelon<S> e = rref(aug);
  Vec<S> x(a.cols());
  for (int j = 0; j < a.cols(); ++j) x(j) = field.element<S>(0);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x(e.pivots[r]) = e.reduced(static_cast<int>(r), static_cast<int>(a.cols()));
  }
  return x;
}

template <class S>
std::optional<Mat<S>> matrix_inverse(const Mat<S>& a, const Field& field) {
  if (a.rows() != a.cols()) throw Error("DimensionMismatch", "inverse of a non-square matrix");
  const int n = static_cast<int>(a.rows());
  Mat<S> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = identity<S>(n, field);
  Echelon<S> e = rref(aug);
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return Mat<S>(e.reduced.rightCols(n));
}

}  // namespace sfl
