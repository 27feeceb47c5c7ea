#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sfl/field.hpp"
#include "sfl/matrix.hpp"
#include "sfl/permutation.hpp"
#include "sfl/random.hpp"

namespace sfl {

// Dense table of a nowhere-zero map f : S_n -> F*, indexed by lexicographic rank.
template <class S>
class GroupMap {
 public:
  GroupMap() = default;
  GroupMap(int n, Field field, std::vector<S> values);

  static GroupMap from_function(int n, const Field& field, const std::function<S(const Permutation&)>& fn);

  int n() const { return n_; }
  const Field& field() const { return field_; }
  const std::vector<S>& values() const { return values_; }
  std::uint64_t size() const { return values_.size(); }

  const S& operator()(const Permutation& s) const { return values_[s.rank()]; }
  const S& at(std::uint64_t rank) const { return values_[rank]; }

  friend bool operator==(const GroupMap& a, const GroupMap& b) {
    return a.n_ == b.n_ && a.field_ == b.field_ && a.values_ == b.values_;
  }

 private:
  int n_ = 0;
  Field field_;
  std::vector<S> values_;
};

// Built-in maps.
template <class S>
GroupMap<S> sgn_map(int n, const Field& field);
template <class S>
GroupMap<S> one_map(int n, const Field& field);
// s -> alpha * beta^nfix(s) * sgn(s).
template <class S>
GroupMap<S> sgn_nfix_map(int n, const Field& field, const S& alpha, const S& beta);
// n = 4: sgn(s) * x when {s(1), s(2)} = {1, 2}, sgn(s) otherwise.
template <class S>
GroupMap<S> example_f4_map(const Field& field, const S& x);
// n >= 5: sgn(s) * x when {s(1), s(2)} is {2, n} or {1, n}, sgn(s) otherwise.
template <class S>
GroupMap<S> example_g_map(int n, const Field& field, const S& x);
// n >= 4: sgn(s) * x_i when {s(1), s(2)} = {i, n}, sgn(s) otherwise; xs = (x_1..x_{n-1}).
template <class S>
GroupMap<S> example_h_map(int n, const Field& field, const std::vector<S>& xs);

template <class S>
GroupMap<S> scaled(const GroupMap<S>& f, const S& c);

// Pointwise quotient g / f.
template <class S>
GroupMap<S> quotient(const GroupMap<S>& g, const GroupMap<S>& f);

// f^T : s -> f(s^{-1}).
template <class S>
GroupMap<S> transpose_map(const GroupMap<S>& f);

// f.A : s -> f(s) * prod_k a_{s(k),k}; its functional is M -> f~(A * M).
template <class S>
GroupMap<S> h_action(const GroupMap<S>& f, const Mat<S>& a);

// f.(A, t, t') : s -> f(t s t'^{-1}) * prod_k a_{(t s t'^{-1})(k),k};
// its functional is M -> f~(A * (P_t M P_t'^{-1})).
template <class S>
GroupMap<S> ph_action(const GroupMap<S>& f, const Mat<S>& a, const Permutation& t, const Permutation& t2);

// prod_k a_{s(k),k}.
template <class S>
S diagonal_product(const Mat<S>& a, const Permutation& s);

template <class S>
bool is_central(const GroupMap<S>& f);

// (alpha, beta) with f(s) = alpha * beta^nfix(s) * sgn(s) for all s, if they exist in F.
// For n <= 2 the fit needs a square root and may report none for that reason.
template <class S>
std::optional<std::pair<S, S>> fit_sgn_nfix_form(const GroupMap<S>& f);

template <class S>
GroupMap<S> random_map(int n, const Field& field, Rng& rng);

// Random class function: one random nonzero value per cycle type.
template <class S>
GroupMap<S> random_central_map(int n, const Field& field, Rng& rng);

template <class S>
Mat<S> random_nowhere_zero_matrix(int n, const Field& field, Rng& rng);

// Representative permutations used throughout the central-map code.
Permutation three_cycle(int n);          // (1 2 3)
Permutation double_transposition(int n);  // (1 2)(3 4)
Permutation full_cycle(int n);            // (1 2 ... n)

extern template class GroupMap<Fp>;
extern template class GroupMap<Rational>;

}  // namespace sfl
