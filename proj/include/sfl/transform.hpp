#pragma once

#include <optional>
#include <vector>

#include "sfl/equivalence.hpp"
#include "sfl/functional.hpp"
#include "sfl/transformation.hpp"

namespace sfl {

enum class VerdictKind { yes, yes_up_to_scalar, no };

const char* verdict_name(VerdictKind k);

struct CheckMode {
  bool probabilistic = false;
  int trials = 20;
  std::uint64_t seed = 1;

  static CheckMode exact() { return {}; }
  static CheckMode sampled(int trials, std::uint64_t seed) { return {true, trials, seed}; }
};

// Outcome of testing g~(U(M)) = f~(M). For "yes-up-to-scalar", U is an
// (alpha f, g)-transformation. A "no" carries a matrix where the two sides
// differ when one was found, and in exact mode the first monomial on which
// the polynomials disagree.
template <class S>
struct TransformVerdict {
  VerdictKind kind = VerdictKind::no;
  std::optional<S> alpha;
  std::optional<Mat<S>> witness;
  std::optional<std::vector<std::uint8_t>> monomial;
  bool probabilistic = false;
  int trials = 0;
  std::uint64_t seed = 0;
};

template <class S>
TransformVerdict<S> is_transformation(const GroupMap<S>& f, const GroupMap<S>& g, const TransformationMatrix<S>& u,
                                      const CheckMode& mode = CheckMode::exact());

// rank 1 with product of diagonal entries 1.
template <class S>
bool is_normalized_rank1(const Mat<S>& r);

// A with g = f.A, or none. Decision procedure over GF(p) only.
template <class S>
std::optional<Mat<S>> decide_h_equivalence(const GroupMap<S>& f, const GroupMap<S>& g);

// Replay: g == ph_action(f, a, tau, tau_prime).
template <class S>
struct PHWitness {
  Mat<S> a;
  Permutation tau;
  Permutation tau_prime;
};

constexpr int kMaxPHDegree = 5;

template <class S>
std::optional<PHWitness<S>> decide_ph_equivalence(const GroupMap<S>& f, const GroupMap<S>& g);

// Some U with g~(U(M)) = f~(M) for all M, or none.
template <class S>
std::optional<TransformationMatrix<S>> exists_transformation(const GroupMap<S>& f, const GroupMap<S>& g);

// M -> P M Q with P, Q block diagonal over the row and column classes of a
// fully-normalized map; alpha = det P det Q.
template <class S>
struct StandardSimilarity {
  std::vector<Mat<S>> p_blocks;
  std::vector<Mat<S>> q_blocks;
  S alpha;
};

template <class S>
Mat<S> block_diagonal(const std::vector<Mat<S>>& blocks, const Field& field);

template <class S>
std::pair<TransformationMatrix<S>, S> standard_similarity(const GroupMap<S>& f_norm, const std::vector<Mat<S>>& p_blocks,
                                                           const std::vector<Mat<S>>& q_blocks);

enum class DecompositionCase { direct, transpose };

const char* case_name(DecompositionCase c);

// direct:    U(M) = K * (P_sigma V(M) P_tau)
// transpose: U(M) = K * (P_sigma V(M^T) P_tau)
// with K super-g-adapted and V a standard similarity of f (of f^T in the transpose case).
template <class S>
struct DecomposedForm {
  DecompositionCase kind = DecompositionCase::direct;
  Mat<S> k;
  Permutation sigma;
  Permutation tau;
  StandardSimilarity<S> v;
};

template <class S>
DecomposedForm<S> decompose(const TransformationMatrix<S>& u, const GroupMap<S>& f, const GroupMap<S>& g);

template <class S>
TransformationMatrix<S> recompose(const DecomposedForm<S>& d, const Field& field);

// Maps classes onto classes and is increasing on each class.
bool is_adapted(const Permutation& s, const Partition& classes);

}  // namespace sfl
