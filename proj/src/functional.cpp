#include "sfl/functional.hpp"

#include <unordered_map>

namespace sfl {

template <class S>
S eval(const GroupMap<S>& f, const Mat<S>& m) {
  const int n = f.n();
  if (m.rows() != n || m.cols() != n) throw Error("DimensionMismatch", "matrix size differs from map degree");
  const auto& perms = all_permutations(n);
  S acc = f.field().template element<S>(0);
  for (std::uint64_t k = 0; k < f.size(); ++k) {
    const Permutation& s = perms[k];
    S term = f.at(k);
    for (int j = 1; j <= n && !is_zero(term); ++j) term *= m(s(j) - 1, j - 1);
    acc += term;
  }
  return canonical(acc, f.field());
}

template <class S>
S MultPoly<S>::evaluate(const Mat<S>& m) const {
  if (m.rows() != n || m.cols() != n) throw Error("DimensionMismatch", "matrix size differs from polynomial");
  Vec<S> x = vectorize(m);
  S acc = field.template element<S>(0);
  for (const auto& [exp, coef] : terms) {
    S term = coef;
    for (int k = 0; k < n_vars(); ++k)
      if (exp[k]) term *= power(x(k), exp[k]);
    acc += term;
  }
  return canonical(acc, field);
}

template <class S>
MultPoly<S> polynomial_of(const GroupMap<S>& f) {
  const int n = f.n();
  MultPoly<S> p{n, f.field(), {}};
  const auto& perms = all_permutations(n);
  for (std::uint64_t k = 0; k < f.size(); ++k) {
    std::vector<std::uint8_t> exp(n * n, 0);
    for (int j = 1; j <= n; ++j) exp[vec_index(n, perms[k](j) - 1, j - 1)] = 1;
    p.terms.emplace(std::move(exp), f.at(k));
  }
  return p;
}

namespace {

// Exponent vectors with at most 16 variables of degree <= 15 packed into
// 4-bit fields, variable 0 in the top nibble so integer order is lex order.
constexpr int kNibbles = 16;

std::uint64_t var_unit(int k) { return std::uint64_t(1) << (4 * (kNibbles - 1 - k)); }

std::vector<std::uint8_t> unpack(std::uint64_t key, int n_vars) {
  std::vector<std::uint8_t> exp(n_vars);
  for (int k = 0; k < n_vars; ++k) exp[k] = static_cast<std::uint8_t>((key >> (4 * (kNibbles - 1 - k))) & 15u);
  return exp;
}

}  // namespace

template <class S>
MultPoly<S> expand_composed(const GroupMap<S>& g, const TransformationMatrix<S>& u) {
  const int n = g.n();
  if (u.n != n) throw Error("DimensionMismatch", "transformation size differs from map degree");
  if (!(u.field == g.field())) throw Error("FieldMismatch", "transformation and map over different fields");
  if (n > kMaxExactDegree) throw Error("ExactModeTooLarge", "exact expansion is limited to n <= 4");
  const int nv = n * n;
  const Field& field = g.field();

  // Linear form of each entry of U(M): row vec_index(i,j) of U.
  std::vector<std::vector<std::pair<int, S>>> forms(nv);
  for (int r = 0; r < nv; ++r)
    for (int c = 0; c < nv; ++c)
      if (!is_zero(u.entries(r, c))) forms[r].emplace_back(c, u.entries(r, c));

  std::unordered_map<std::uint64_t, S> total;
  const auto& perms = all_permutations(n);
  for (std::uint64_t k = 0; k < g.size(); ++k) {
    const Permutation& s = perms[k];
    std::unordered_map<std::uint64_t, S> cur{{0, g.at(k)}};
    for (int j = 1; j <= n && !cur.empty(); ++j) {
      const auto& form = forms[vec_index(n, s(j) - 1, j - 1)];
      std::unordered_map<std::uint64_t, S> next;
      next.reserve(cur.size() * form.size());
      for (const auto& [key, coef] : cur)
        for (const auto& [var, c] : form) {
          auto [it, inserted] = next.try_emplace(key + var_unit(var), coef * c);
          if (!inserted) it->second += coef * c;
        }
      cur = std::move(next);
    }
    for (const auto& [key, coef] : cur) {
      auto [it, inserted] = total.try_emplace(key, coef);
      if (!inserted) it->second += coef;
    }
  }

  MultPoly<S> p{n, field, {}};
  for (const auto& [key, coef] : total)
    if (!is_zero(coef)) p.terms.emplace(unpack(key, nv), canonical(coef, field));
  return p;
}

template <class S>
std::optional<S> proportional(const MultPoly<S>& p, const MultPoly<S>& q) {
  if (p.n != q.n) throw Error("DimensionMismatch", "polynomials in different variable sets");
  if (q.is_zero()) throw Error("ZeroPolynomial", "cannot test proportionality to the zero polynomial");
  if (p.is_zero()) return q.field.template element<S>(0);
  if (p.terms.size() != q.terms.size()) return std::nullopt;
  const auto& [key, qc] = *q.terms.begin();
  auto it = p.terms.find(key);
  if (it == p.terms.end()) return std::nullopt;
  const S alpha = it->second / qc;
  auto pi = p.terms.begin();
  for (auto qi = q.terms.begin(); qi != q.terms.end(); ++qi, ++pi) {
    if (pi->first != qi->first || !(pi->second == alpha * qi->second)) return std::nullopt;
  }
  return canonical(alpha, q.field);
}

template <class S>
Mat<S> random_matrix(int n, const Field& field, Rng& rng) {
  Mat<S> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = random_element<S>(field, rng, false, 1 << 20);
  return m;
}

template <class S>
ProbabilisticVerdict<S> probabilistic_equal(const GroupMap<S>& g, const TransformationMatrix<S>& u, const GroupMap<S>& f,
                                            int trials, std::uint64_t seed) {
  const int n = f.n();
  if (g.n() != n || u.n != n) throw Error("DimensionMismatch", "maps and transformation differ in size");
  if (trials < 1) throw Error("InvalidArgument", "at least one trial is required");
  if (f.field().is_prime_field() && f.field().p <= static_cast<std::uint32_t>(4 * n))
    throw Error("FieldTooSmall", "probabilistic mode needs p > 4n");
  ProbabilisticVerdict<S> out;
  out.trials = trials;
  out.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Mat<S> m = random_matrix<S>(n, f.field(), rng);
    if (!(eval(g, apply(u, m)) == eval(f, m))) {
      out.witness = m;
      return out;
    }
  }
  out.equal = true;
  return out;
}

#define SFL_INSTANTIATE(S)                                                                                         \
  template S eval<S>(const GroupMap<S>&, const Mat<S>&);                                                           \
  template struct MultPoly<S>;                                                                                     \
  template MultPoly<S> polynomial_of<S>(const GroupMap<S>&);                                                       \
  template MultPoly<S> expand_composed<S>(const GroupMap<S>&, const TransformationMatrix<S>&);                     \
  template std::optional<S> proportional<S>(const MultPoly<S>&, const MultPoly<S>&);                               \
  template Mat<S> random_matrix<S>(int, const Field&, Rng&);                                                       \
  template ProbabilisticVerdict<S> probabilistic_equal<S>(const GroupMap<S>&, const TransformationMatrix<S>&,      \
                                                          const GroupMap<S>&, int, std::uint64_t);

SFL_INSTANTIATE(Fp)
SFL_INSTANTIATE(Rational)

}  // namespace sfl
