#include "sfl/central.hpp"

#include <type_traits>

#include "sfl/transform.hpp"

namespace sfl {

const char* tag_name(SubgroupTag t) {
  switch (t) {
    case SubgroupTag::trivial: return "trivial";
    case SubgroupTag::klein_k4: return "klein-K4";
    case SubgroupTag::alternating: return "alternating";
    case SubgroupTag::full: return "full";
  }
  return "?";
}

const char* status_name(CoherenceStatus s) {
  switch (s) {
    case CoherenceStatus::yes: return "yes";
    case CoherenceStatus::no: return "no";
    case CoherenceStatus::unknown: return "unknown";
  }
  return "?";
}

namespace {

// K4 = identity and the double transpositions: the even involutions of S_4.
bool in_klein(const Permutation& s) { return s.n() == 4 && s.sign() == 1 && s * s == Permutation::identity(4); }

template <class S>
void require_central(const GroupMap<S>& f) {
  if (!is_central(f)) throw Error("NotCentral", "map is not constant on conjugacy classes");
}

template <class S>
void require_degree(const GroupMap<S>& f, int n) {
  if (f.n() != n) throw Error("WrongDegree", "expected n = " + std::to_string(n));
}

// s -> f(s tau).
template <class S>
GroupMap<S> right_shift(const GroupMap<S>& f, const Permutation& tau) {
  const int n = f.n();
  const std::uint64_t t = tau.rank();
  std::vector<S> v(f.size());
  for (std::uint64_t k = 0; k < f.size(); ++k) v[k] = f.at(compose_rank(n, k, t));
  return GroupMap<S>(n, f.field(), std::move(v));
}

template <class S>
Mat<S> canonical_matrix(Mat<S> a, const Field& field) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = canonical(a(i, j), field);
  return a;
}

template <class S>
CoherenceWitness<S> checked(const GroupMap<S>& f, CoherenceWitness<S> w, const char* what) {
  w.a = canonical_matrix(std::move(w.a), f.field());
  if (!verify_coherence(f, w)) throw Error("InternalError", std::string(what) + " failed verification");
  return w;
}

// Witness for sgn: first column sgn(tau), ones elsewhere.
template <class S>
CoherenceWitness<S> signature_witness(const Permutation& tau, const Field& field) {
  Mat<S> a = ones<S>(tau.n(), field);
  for (int i = 0; i < tau.n(); ++i) a(i, 0) = field.element<S>(tau.sign());
  return {tau, a};
}

// Witness for tau under the classification, assuming tau lies in G_f.
template <class S>
CoherenceWitness<S> classified_witness(const GroupMap<S>& f, const GfReport<S>& rep, const Permutation& tau) {
  const int n = f.n();
  const Field& field = f.field();
  if (tau == Permutation::identity(n)) return {tau, ones<S>(n, field)};
  if (rep.tag == SubgroupTag::full) {
    if (n == 2) {
      const S r = f(tau) / f(Permutation::identity(2));
      Mat<S> a = ones<S>(2, field);
      a(0, 0) = r;
      a(1, 0) = inverse(r);
      return checked(f, CoherenceWitness<S>{tau, a}, "two-point witness");
    }
    if (rep.constant_fit)
      return transport_central_equiv(one_map<S>(n, field), rep.constant_fit->alpha, rep.constant_fit->beta,
                                     CoherenceWitness<S>{tau, ones<S>(n, field)});
    return transport_central_equiv(sgn_map<S>(n, field), rep.signature_fit->alpha, rep.signature_fit->beta,
                                   signature_witness<S>(tau, field));
  }
  if (rep.tag == SubgroupTag::alternating) {
    if (n == 3) {
      CoherenceWitness<S> w = three_cycle_adapted(f);
      return tau == w.tau ? w : compose_adapted(f, w, w);
    }
    const TwoValueFit<S>& fit = *rep.two_value_fit;
    GroupMap<S> h = GroupMap<S>::from_function(
        n, field, [&](const Permutation& s) { return s.sign() == 1 ? fit.c_even : fit.c_odd; });
    return transport_central_equiv(h, fit.alpha, field.element<S>(1), CoherenceWitness<S>{tau, ones<S>(n, field)});
  }
  if (rep.tag == SubgroupTag::klein_k4) {
    CoherenceWitness<S> w = *k4_adapted(f);
    if (tau == w.tau) return w;
    for (const Permutation& u : all_permutations(4))
      if (u * w.tau * u.inverse() == tau) return conjugate_adapted(f, w, u);
  }
  throw Error("InternalError", "permutation outside the classified subgroup");
}

template <class S>
std::optional<Mat<S>> solve_coherence(const GroupMap<S>& f, const Permutation& tau) {
  return decide_h_equivalence(f, right_shift(f, tau));
}

}  // namespace

bool subgroup_contains(SubgroupTag t, const Permutation& s) {
  switch (t) {
    case SubgroupTag::trivial: return s == Permutation::identity(s.n());
    case SubgroupTag::klein_k4: return in_klein(s);
    case SubgroupTag::alternating: return s.sign() == 1;
    case SubgroupTag::full: return true;
  }
  return false;
}

template <class S>
GroupMap<S> central_transform(const GroupMap<S>& f, const S& alpha, const S& beta) {
  const auto& perms = all_permutations(f.n());
  std::vector<S> v(f.size());
  for (std::uint64_t k = 0; k < f.size(); ++k) v[k] = canonical(power(alpha, perms[k].nfix()) * beta * f.at(k), f.field());
  return GroupMap<S>(f.n(), f.field(), std::move(v));
}

template <class S>
bool verify_coherence(const GroupMap<S>& f, const CoherenceWitness<S>& w) {
  const int n = f.n();
  if (w.tau.n() != n || w.a.rows() != n || w.a.cols() != n) return false;
  if (has_zero_entry(w.a)) return false;
  const auto& perms = all_permutations(n);
  const std::uint64_t t = w.tau.rank();
  for (std::uint64_t k = 0; k < f.size(); ++k)
    if (!(f.at(compose_rank(n, k, t)) == f.at(k) * diagonal_product(w.a, perms[k]))) return false;
  return true;
}

template <class S>
CoherenceWitness<S> three_cycle_adapted(const GroupMap<S>& f) {
  require_degree(f, 3);
  require_central(f);
  const Field& field = f.field();
  const Permutation c = three_cycle(3);
  const S alpha = f(c) / f(Permutation::identity(3));
  Mat<S> a = ones<S>(3, field);
  a(0, 1) = inverse(alpha);
  a(2, 2) = alpha;
  return checked(f, CoherenceWitness<S>{c, a}, "three-cycle matrix");
}

template <class S>
std::optional<CoherenceWitness<S>> k4_adapted(const GroupMap<S>& f) {
  require_degree(f, 4);
  require_central(f);
  const Field& field = f.field();
  const Permutation dt = double_transposition(4);
  const S alpha = f(Permutation::transposition(4, 1, 2)) / f(full_cycle(4));
  if (!(f(Permutation::identity(4)) == alpha * alpha * f(dt))) return std::nullopt;
  Mat<S> a = ones<S>(4, field);
  a(0, 1) = alpha;
  a(1, 0) = alpha;
  a(2, 2) = inverse(alpha);
  a(3, 3) = inverse(alpha);
  return checked(f, CoherenceWitness<S>{dt, a}, "double-transposition matrix");
}

template <class S>
std::optional<CentralFit<S>> fit_signature_form(const GroupMap<S>& f) {
  auto fit = fit_sgn_nfix_form(f);
  if (!fit) return std::nullopt;
  return CentralFit<S>{fit->first, fit->second};
}

template <class S>
std::optional<CentralFit<S>> fit_constant_form(const GroupMap<S>& f) {
  // f = beta alpha^nfix exactly when f sgn = beta alpha^nfix sgn.
  GroupMap<S> fs = GroupMap<S>::from_function(
      f.n(), f.field(), [&](const Permutation& s) { return f(s) * f.field().template element<S>(s.sign()); });
  return fit_signature_form(fs);
}

template <class S>
std::optional<TwoValueFit<S>> fit_two_value_form(const GroupMap<S>& f) {
  require_central(f);
  const int n = f.n();
  if (n < 4) throw Error("WrongDegree", "two-value fit needs n >= 4");
  const Field& field = f.field();
  // 3-cycles and double transpositions are both even, nfix n-3 and n-4.
  const S alpha = f(three_cycle(n)) / f(double_transposition(n));
  const S c_even = f(three_cycle(n)) / power(alpha, n - 3);
  const S c_odd = f(Permutation::transposition(n, 1, 2)) / power(alpha, n - 2);
  for (const Permutation& s : all_permutations(n)) {
    const S expect = power(alpha, s.nfix()) * (s.sign() == 1 ? c_even : c_odd);
    if (!(expect == f(s))) return std::nullopt;
  }
  return TwoValueFit<S>{canonical(alpha, field), canonical(c_even, field), canonical(c_odd, field)};
}

template <class S>
GfReport<S> compute_Gf(const GroupMap<S>& f) {
  require_central(f);
  const int n = f.n();
  if (n < 2) throw Error("InvalidArgument", "G_f is classified for n >= 2");
  GfReport<S> rep;
  rep.n = n;
  if (n == 2) {
    rep.tag = SubgroupTag::full;
    rep.reason = "n = 2: the two-point system is always solvable";
  } else {
    rep.constant_fit = fit_constant_form(f);
    rep.signature_fit = fit_signature_form(f);
    if (rep.constant_fit || rep.signature_fit) {
      rep.tag = SubgroupTag::full;
      rep.reason = rep.constant_fit ? "centrally equivalent to the constant map" : "centrally equivalent to sgn";
    } else if (n == 3) {
      rep.tag = SubgroupTag::alternating;
      rep.reason = "n = 3: the 3-cycles are always coherent";
    } else {
      rep.two_value_fit = fit_two_value_form(f);
      if (rep.two_value_fit) {
        rep.tag = SubgroupTag::alternating;
        rep.reason = "centrally equivalent to a map constant on A_n and on its complement";
      } else if (n == 4) {
        const S alpha = f(Permutation::transposition(4, 1, 2)) / f(full_cycle(4));
        rep.k4_condition = f(Permutation::identity(4)) == alpha * alpha * f(double_transposition(4));
        if (!*rep.k4_condition) rep.k4_constant_fit = "condition fails";
        else rep.k4_constant_fit = square_root(alpha) ? "root in F" : "no root in F";
        rep.tag = *rep.k4_condition ? SubgroupTag::klein_k4 : SubgroupTag::trivial;
        rep.reason = *rep.k4_condition ? "f(id) = a^2 f((1 2)(3 4))" : "no inclusion criterion holds";
      } else {
        rep.tag = SubgroupTag::trivial;
        rep.reason = "no inclusion criterion holds";
      }
    }
  }
  if constexpr (std::is_same_v<S, Fp>) {
    auto coherent = [&](const Permutation& t) { return solve_coherence(f, t).has_value(); };
    const Permutation t12 = Permutation::transposition(n, 1, 2);
    bool ok = true;
    if (rep.tag == SubgroupTag::full) {
      ok = coherent(t12) && coherent(full_cycle(n));
    } else {
      ok = !coherent(t12);
      if (rep.tag == SubgroupTag::alternating) ok = ok && coherent(three_cycle(n));
      else ok = ok && !coherent(three_cycle(n));
      if (n == 4 && ok) ok = coherent(double_transposition(4)) == subgroup_contains(rep.tag, double_transposition(4));
    }
    rep.solver_agrees = ok;
  }
  return rep;
}

template <class S>
CoherenceResult<S> is_f_coherent(const GroupMap<S>& f, const Permutation& tau) {
  const int n = f.n();
  if (tau.n() != n) throw Error("DimensionMismatch", "permutation degree differs from map degree");
  CoherenceResult<S> out;
  if constexpr (std::is_same_v<S, Fp>) {
    out.method = "solver";
    auto a = solve_coherence(f, tau);
    if (!a) {
      out.status = CoherenceStatus::no;
      return out;
    }
    out.status = CoherenceStatus::yes;
    out.witness = checked(f, CoherenceWitness<S>{tau, *a}, "solver witness");
    return out;
  } else {
    const Field& field = f.field();
    if (right_shift(f, tau) == f) {
      out.status = CoherenceStatus::yes;
      out.method = tau == Permutation::identity(n) ? "identity" : "invariant";
      out.witness = CoherenceWitness<S>{tau, ones<S>(n, field)};
      return out;
    }
    if (n >= 2 && is_central(f)) {
      out.method = n == 2 ? "two-point" : "classification";
      GfReport<S> rep = compute_Gf(f);
      if (!subgroup_contains(rep.tag, tau)) {
        out.status = CoherenceStatus::no;
        return out;
      }
      out.status = CoherenceStatus::yes;
      out.witness = classified_witness(f, rep, tau);
      return out;
    }
    out.status = CoherenceStatus::unknown;
    out.method = "none";
    return out;
  }
}

template <class S>
CoherenceWitness<S> compose_adapted(const GroupMap<S>& f, const CoherenceWitness<S>& w1, const CoherenceWitness<S>& w2) {
  if (!verify_coherence(f, w1) || !verify_coherence(f, w2)) throw Error("InvalidWitness", "input witness is not valid for f");
  const Field& field = f.field();
  Mat<S> shifted = w2.a * perm_matrix<S>(w1.tau.inverse(), field);
  return checked(f, CoherenceWitness<S>{w1.tau * w2.tau, hadamard(w1.a, shifted)}, "composed witness");
}

template <class S>
CoherenceWitness<S> conjugate_adapted(const GroupMap<S>& f, const CoherenceWitness<S>& w, const Permutation& u) {
  require_central(f);
  if (!verify_coherence(f, w)) throw Error("InvalidWitness", "input witness is not valid for f");
  if (u.n() != f.n()) throw Error("DimensionMismatch", "permutation degree differs from map degree");
  const Field& field = f.field();
  Mat<S> a = perm_matrix<S>(u, field) * w.a * perm_matrix<S>(u.inverse(), field);
  return checked(f, CoherenceWitness<S>{u * w.tau * u.inverse(), a}, "conjugated witness");
}

template <class S>
CoherenceWitness<S> transport_central_equiv(const GroupMap<S>& f, const S& alpha, const S& beta,
                                            const CoherenceWitness<S>& w) {
  if (!verify_coherence(f, w)) throw Error("InvalidWitness", "input witness is not valid for f");
  if (is_zero(alpha) || is_zero(beta)) throw Error("ZeroEntry", "central equivalence needs nonzero scalars");
  const int n = f.n();
  const Field& field = f.field();
  Mat<S> b = ones<S>(n, field);
  Mat<S> c = ones<S>(n, field);
  for (int i = 0; i < n; ++i) {
    b(i, i) = alpha;
    c(0, i) = beta;
  }
  const Mat<S> p = perm_matrix<S>(w.tau.inverse(), field);
  const Mat<S> bp = b * p;
  const Mat<S> cp = c * p;
  Mat<S> a = hadamard(hadamard(hadamard(hadamard_inverse(b), hadamard_inverse(c)), w.a), hadamard(bp, cp));
  return checked(central_transform(f, alpha, beta), CoherenceWitness<S>{w.tau, a}, "transported witness");
}

#define SFL_INSTANTIATE(S)                                                                                          \
  template GroupMap<S> central_transform<S>(const GroupMap<S>&, const S&, const S&);                                \
  template bool verify_coherence<S>(const GroupMap<S>&, const CoherenceWitness<S>&);                                \
  template CoherenceResult<S> is_f_coherent<S>(const GroupMap<S>&, const Permutation&);                             \
  template CoherenceWitness<S> three_cycle_adapted<S>(const GroupMap<S>&);                                          \
  template std::optional<CoherenceWitness<S>> k4_adapted<S>(const GroupMap<S>&);                                    \
  template std::optional<CentralFit<S>> fit_constant_form<S>(const GroupMap<S>&);                                   \
  template std::optional<CentralFit<S>> fit_signature_form<S>(const GroupMap<S>&);                                  \
  template std::optional<TwoValueFit<S>> fit_two_value_form<S>(const GroupMap<S>&);                                 \
  template GfReport<S> compute_Gf<S>(const GroupMap<S>&);                                                           \
  template CoherenceWitness<S> compose_adapted<S>(const GroupMap<S>&, const CoherenceWitness<S>&,                   \
                                                  const CoherenceWitness<S>&);                                      \
  template CoherenceWitness<S> conjugate_adapted<S>(const GroupMap<S>&, const CoherenceWitness<S>&,                 \
                                                    const Permutation&);                                            \
  template CoherenceWitness<S> transport_central_equiv<S>(const GroupMap<S>&, const S&, const S&,                   \
                                                          const CoherenceWitness<S>&);

SFL_INSTANTIATE(Fp)
SFL_INSTANTIATE(Rational)

}  // namespace sfl
