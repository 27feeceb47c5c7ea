#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sfl/group_map.hpp"
#include "sfl/transformation.hpp"

namespace sfl {

constexpr int kMaxExactDegree = 4;

// f~(M) = sum_s f(s) prod_j m_{s(j),j}.
template <class S>
S eval(const GroupMap<S>& f, const Mat<S>& m);

// Polynomial in the n^2 entries of M. Variable k is the entry at vec
// position k (column-major), so exponent vectors list x_11, x_21, ..., x_nn.
template <class S>
struct MultPoly {
  int n = 0;
  Field field;
  std::map<std::vector<std::uint8_t>, S> terms;  // no zero coefficients

  int n_vars() const { return n * n; }
  bool is_zero() const { return terms.empty(); }
  S evaluate(const Mat<S>& m) const;

  friend bool operator==(const MultPoly& a, const MultPoly& b) {
    return a.n == b.n && a.field == b.field && a.terms == b.terms;
  }
};

template <class S>
MultPoly<S> polynomial_of(const GroupMap<S>& f);

// M -> g~(U(M)), expanded and collected; n <= 4.
template <class S>
MultPoly<S> expand_composed(const GroupMap<S>& g, const TransformationMatrix<S>& u);

// alpha with p = alpha q, if any.
template <class S>
std::optional<S> proportional(const MultPoly<S>& p, const MultPoly<S>& q);

template <class S>
struct ProbabilisticVerdict {
  bool equal = false;
  std::optional<Mat<S>> witness;  // a matrix where the two sides differ
  int trials = 0;
  std::uint64_t seed = 0;
};

// Tests g~(U(M)) = f~(M) at `trials` seeded random matrices. Over GF(p) the
// false-positive probability is at most (n/p)^trials; requires p > 4n.
template <class S>
ProbabilisticVerdict<S> probabilistic_equal(const GroupMap<S>& g, const TransformationMatrix<S>& u, const GroupMap<S>& f,
                                            int trials, std::uint64_t seed);

template <class S>
Mat<S> random_matrix(int n, const Field& field, Rng& rng);

}  // namespace sfl
