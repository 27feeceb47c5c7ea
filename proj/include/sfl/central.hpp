#pragma once

#include <optional>
#include <string>
#include <utility>

#include "sfl/group_map.hpp"

namespace sfl {

// tau is f-coherent with adapted matrix a when f(s tau) = f(s) prod_j a_{s(j),j} for all s.
template <class S>
struct CoherenceWitness {
  Permutation tau;
  Mat<S> a;
};

enum class SubgroupTag { trivial, klein_k4, alternating, full };

const char* tag_name(SubgroupTag t);
bool subgroup_contains(SubgroupTag t, const Permutation& s);

enum class CoherenceStatus { yes, no, unknown };

const char* status_name(CoherenceStatus s);

template <class S>
struct CoherenceResult {
  CoherenceStatus status = CoherenceStatus::unknown;
  std::optional<CoherenceWitness<S>> witness;
  std::string method;  // "solver", "identity", "invariant", "two-point", "classification"
};

// f = beta * alpha^nfix * c_parity, with c_even on A_n and c_odd off it.
template <class S>
struct TwoValueFit {
  S alpha;
  S c_even;
  S c_odd;
};

// beta * alpha^nfix * eps with eps = 1 or sgn.
template <class S>
struct CentralFit {
  S beta;
  S alpha;
};

template <class S>
struct GfReport {
  SubgroupTag tag = SubgroupTag::trivial;
  int n = 0;
  std::string reason;
  std::optional<CentralFit<S>> constant_fit;
  std::optional<CentralFit<S>> signature_fit;
  std::optional<TwoValueFit<S>> two_value_fit;  // n >= 4
  std::optional<bool> k4_condition;             // n = 4
  std::string k4_constant_fit;                  // n = 4: "root in F", "no root in F", "not constant"
  std::optional<bool> solver_agrees;            // GF(p) only
};

// g(s) = alpha^nfix(s) * beta * f(s).
template <class S>
GroupMap<S> central_transform(const GroupMap<S>& f, const S& alpha, const S& beta);

template <class S>
bool verify_coherence(const GroupMap<S>& f, const CoherenceWitness<S>& w);

// Over GF(p) a complete decision. Over the rationals central maps are decided
// through the classification and other maps only when tau fixes f pointwise.
template <class S>
CoherenceResult<S> is_f_coherent(const GroupMap<S>& f, const Permutation& tau);

// n = 3, central: [[1, a^-1, 1], [1, 1, 1], [1, 1, a]] with a = f((1 2 3)) / f(id).
template <class S>
CoherenceWitness<S> three_cycle_adapted(const GroupMap<S>& f);

// n = 4, central: the matrix for (1 2)(3 4) when f(id) = a^2 f((1 2)(3 4)), a = f((1 2)) / f((1 2 3 4)).
template <class S>
std::optional<CoherenceWitness<S>> k4_adapted(const GroupMap<S>& f);

template <class S>
std::optional<CentralFit<S>> fit_constant_form(const GroupMap<S>& f);
template <class S>
std::optional<CentralFit<S>> fit_signature_form(const GroupMap<S>& f);
template <class S>
std::optional<TwoValueFit<S>> fit_two_value_form(const GroupMap<S>& f);

template <class S>
GfReport<S> compute_Gf(const GroupMap<S>& f);

// Witness for s t from witnesses for s and t: A * (B P_s^{-1}).
template <class S>
CoherenceWitness<S> compose_adapted(const GroupMap<S>& f, const CoherenceWitness<S>& w1, const CoherenceWitness<S>& w2);

// Witness for u t u^{-1}: P_u A P_u^{-1}.
template <class S>
CoherenceWitness<S> conjugate_adapted(const GroupMap<S>& f, const CoherenceWitness<S>& w, const Permutation& u);

// Witness for g = central_transform(f, alpha, beta) from one for f.
template <class S>
CoherenceWitness<S> transport_central_equiv(const GroupMap<S>& f, const S& alpha, const S& beta,
                                            const CoherenceWitness<S>& w);

}  // namespace sfl
