#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sfl/equivalence.hpp"
#include "sfl/functional.hpp"
#include "sfl/transformation.hpp"

namespace sfl {

// Linear subspace of Mat_n(F). Rows of `basis` are vectorized basis matrices
// in reduced row-echelon form, so equal subspaces have equal bases.
template <class S>
struct MatrixSubspace {
  int n = 0;
  Field field;
  Mat<S> basis;

  int dim() const { return static_cast<int>(basis.rows()); }
  int codim() const { return n * n - dim(); }
  Mat<S> element(int k) const { return unvectorize<S>(Vec<S>(basis.row(k).transpose()), n); }

  friend bool operator==(const MatrixSubspace& a, const MatrixSubspace& b) {
    return a.n == b.n && a.field == b.field && a.basis.rows() == b.basis.rows() && equal(a.basis, b.basis);
  }
};

// Span of the rows of `rows` (vectorized matrices).
template <class S>
MatrixSubspace<S> span_of(int n, const Field& field, const Mat<S>& rows);

// {M : M x = 0} on the column side, {M : x^T M = 0} on the row side.
template <class S>
MatrixSubspace<S> v_x_basis(const Vec<S>& x, Side side, const Field& field);

// Support of x inside one column class (column side) or row class (row side) of a normalized f.
template <class S>
bool is_adapted_vector(const GroupMap<S>& f_norm, const Vec<S>& x, Side side);

constexpr std::uint64_t kDefaultConeBudget = std::uint64_t(1) << 26;

// f~ vanishes on every element of s; full enumeration over a finite field.
template <class S>
bool subspace_in_cone(const GroupMap<S>& f, const MatrixSubspace<S>& s, std::uint64_t budget = kDefaultConeBudget);

template <class S>
MatrixSubspace<S> intersection(const MatrixSubspace<S>& a, const MatrixSubspace<S>& b);

// {A * M : M in s} for a nowhere-zero A.
template <class S>
MatrixSubspace<S> hadamard_image(const Mat<S>& a, const MatrixSubspace<S>& s);

// Nonzero vectors of F^n with first nonzero entry 1 (finite fields).
std::vector<Vec<Fp>> projective_points(int n, const Field& field);

// Side and vector x with s = V_x (column) or V^x (row), if any.
std::optional<std::pair<Side, Vec<Fp>>> classify_subspace(const MatrixSubspace<Fp>& s);

// Subspaces predicted to be the codim-n subspaces of the null cone:
// A * V_X and A * V^X for X adapted to the normalization g = f.A.
std::vector<MatrixSubspace<Fp>> predicted_cone_subspaces(const GroupMap<Fp>& f);

struct ConeScan {
  int codim = 0;
  std::uint64_t scanned = 0;               // subspaces of that codimension
  std::vector<MatrixSubspace<Fp>> inside;  // those inside the null cone, sorted
};

// Every subspace of the given codimension of Mat_n(F) by RREF enumeration,
// over GF(2) (n <= 3) or GF(3) (n <= 2).
ConeScan scan_cone_subspaces(const GroupMap<Fp>& f, int codim);

struct OracleReport {
  ConeScan codim_n;
  ConeScan codim_n_minus_1;
  std::vector<MatrixSubspace<Fp>> predicted;  // sorted
  bool matches_prediction = false;
};

OracleReport minimal_subspace_oracle(const GroupMap<Fp>& f);

// Number of k-dimensional subspaces of F_q^N.
std::uint64_t gaussian_binomial(int N, int k, std::uint64_t q);

}  // namespace sfl
