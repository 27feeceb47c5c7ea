#include "sfl/group_map.hpp"

#include <map>

namespace sfl {

template <class S>
GroupMap<S>::GroupMap(int n, Field field, std::vector<S> values) : n_(n), field_(field), values_(std::move(values)) {
  require_field<S>(field_);
  if (n < 0 || n > kMaxDegree) throw Error("DegreeTooLarge", "degree must lie in 0.." + std::to_string(kMaxDegree));
  if (values_.size() != factorial(n))
    throw Error("DimensionMismatch", "expected " + std::to_string(factorial(n)) + " values, got " + std::to_string(values_.size()));
  for (std::size_t k = 0; k < values_.size(); ++k) {
    values_[k] = canonical(values_[k], field_);
    if (is_zero(values_[k])) throw Error("ZeroValue", "map vanishes at permutation of rank " + std::to_string(k));
  }
}

template <class S>
GroupMap<S> GroupMap<S>::from_function(int n, const Field& field, const std::function<S(const Permutation&)>& fn) {
  std::vector<S> values;
  values.reserve(factorial(n));
  for (const Permutation& s : all_permutations(n)) values.push_back(fn(s));
  return GroupMap(n, field, std::move(values));
}

template class GroupMap<Fp>;
template class GroupMap<Rational>;

template <class S>
GroupMap<S> sgn_map(int n, const Field& field) {
  return GroupMap<S>::from_function(n, field, [&](const Permutation& s) { return field.element<S>(s.sign()); });
}

template <class S>
GroupMap<S> one_map(int n, const Field& field) {
  return GroupMap<S>::from_function(n, field, [&](const Permutation&) { return field.element<S>(1); });
}

template <class S>
GroupMap<S> sgn_nfix_map(int n, const Field& field, const S& alpha, const S& beta) {
  return GroupMap<S>::from_function(n, field, [&](const Permutation& s) {
    return canonical(alpha * power(beta, s.nfix()) * field.element<S>(s.sign()), field);
  });
}

template <class S>
GroupMap<S> example_f4_map(const Field& field, const S& x) {
  return GroupMap<S>::from_function(4, field, [&](const Permutation& s) {
    S sg = field.element<S>(s.sign());
    bool hit = (s(1) == 1 && s(2) == 2) || (s(1) == 2 && s(2) == 1);
    return hit ? canonical(sg * x, field) : sg;
  });
}

namespace {
bool pair_is(const Permutation& s, int a, int b) {
  return (s(1) == a && s(2) == b) || (s(1) == b && s(2) == a);
}
}  // namespace

template <class S>
GroupMap<S> example_g_map(int n, const Field& field, const S& x) {
  if (n < 5) throw Error("InvalidArgument", "this family needs n >= 5");
  return GroupMap<S>::from_function(n, field, [&](const Permutation& s) {
    S sg = field.element<S>(s.sign());
    return pair_is(s, 2, n) || pair_is(s, 1, n) ? canonical(sg * x, field) : sg;
  });
}

template <class S>
GroupMap<S> example_h_map(int n, const Field& field, const std::vector<S>& xs) {
  if (n < 4) throw Error("InvalidArgument", "this family needs n >= 4");
  if (static_cast<int>(xs.size()) != n - 1) throw Error("InvalidArgument", "this family needs n-1 parameters");
  return GroupMap<S>::from_function(n, field, [&](const Permutation& s) {
    S sg = field.element<S>(s.sign());
    for (int i = 1; i <= n - 1; ++i)
      if (pair_is(s, i, n)) return canonical(sg * xs[i - 1], field);
    return sg;
  });
}

template <class S>
GroupMap<S> scaled(const GroupMap<S>& f, const S& c) {
  std::vector<S> v = f.values();
  for (S& x : v) x *= c;
  return GroupMap<S>(f.n(), f.field(), std::move(v));
}

template <class S>
GroupMap<S> quotient(const GroupMap<S>& g, const GroupMap<S>& f) {
  if (g.n() != f.n() || !(g.field() == f.field())) throw Error("DimensionMismatch", "maps of different degree or field");
  std::vector<S> v(g.size());
  for (std::uint64_t k = 0; k < g.size(); ++k) v[k] = g.at(k) / f.at(k);
  return GroupMap<S>(g.n(), g.field(), std::move(v));
}

template <class S>
GroupMap<S> transpose_map(const GroupMap<S>& f) {
  std::vector<S> v(f.size());
  for (std::uint64_t k = 0; k < f.size(); ++k) v[k] = f.at(inverse_rank(f.n(), k));
  return GroupMap<S>(f.n(), f.field(), std::move(v));
}

template <class S>
S diagonal_product(const Mat<S>& a, const Permutation& s) {
  S acc = a(s(1) - 1, 0);
  for (int k = 2; k <= s.n(); ++k) acc *= a(s(k) - 1, k - 1);
  return acc;
}

namespace {
template <class S>
void require_action_matrix(const GroupMap<S>& f, const Mat<S>& a) {
  if (a.rows() != f.n() || a.cols() != f.n()) throw Error("DimensionMismatch", "matrix size differs from map degree");
  require_nowhere_zero(a);
}
}  // namespace

template <class S>
GroupMap<S> h_action(const GroupMap<S>& f, const Mat<S>& a) {
  require_action_matrix(f, a);
  const auto& perms = all_permutations(f.n());
  std::vector<S> v(f.size());
  for (std::uint64_t k = 0; k < f.size(); ++k) v[k] = f.at(k) * diagonal_product(a, perms[k]);
  return GroupMap<S>(f.n(), f.field(), std::move(v));
}

template <class S>
GroupMap<S> ph_action(const GroupMap<S>& f, const Mat<S>& a, const Permutation& t, const Permutation& t2) {
  require_action_matrix(f, a);
  if (t.n() != f.n() || t2.n() != f.n()) throw Error("DegreeMismatch", "permutation degree differs from map degree");
  const auto& perms = all_permutations(f.n());
  const Permutation t2inv = t2.inverse();
  std::vector<S> v(f.size());
  for (std::uint64_t k = 0; k < f.size(); ++k) {
    Permutation r = t * perms[k] * t2inv;
    v[k] = f(r) * diagonal_product(a, r);
  }
  return GroupMap<S>(f.n(), f.field(), std::move(v));
}

template <class S>
bool is_central(const GroupMap<S>& f) {
  std::map<std::vector<int>, S> by_type;
  const auto& perms = all_permutations(f.n());
  for (std::uint64_t k = 0; k < f.size(); ++k) {
    auto [it, inserted] = by_type.emplace(perms[k].cycle_type(), f.at(k));
    if (!inserted && !(it->second == f.at(k))) return false;
  }
  return true;
}

template <class S>
std::optional<std::pair<S, S>> fit_sgn_nfix_form(const GroupMap<S>& f) {
  if (!is_central(f)) throw Error("NotCentral", "map is not constant on conjugacy classes");
  const int n = f.n();
  const Field& field = f.field();
  const S one = field.element<S>(1);
  std::optional<std::pair<S, S>> candidate;
  if (n <= 1) {
    candidate = std::make_pair(f.at(0), one);
  } else if (n == 2) {
    // f(id) = alpha beta^2, f(t) = -alpha.
    S alpha = -f(Permutation::transposition(2, 1, 2));
    auto root = square_root(f(Permutation::identity(2)) / alpha);
    if (!root) return std::nullopt;
    candidate = std::make_pair(alpha, *root);
  } else {
    S beta = -f(Permutation::transposition(n, 1, 2)) / f(three_cycle(n));
    S alpha = f(Permutation::identity(n)) / power(beta, n);
    candidate = std::make_pair(alpha, beta);
  }
  const auto& perms = all_permutations(n);
  for (std::uint64_t k = 0; k < f.size(); ++k) {
    const Permutation& s = perms[k];
    S expect = candidate->first * power(candidate->second, s.nfix()) * field.element<S>(s.sign());
    if (!(expect == f.at(k))) return std::nullopt;
  }
  candidate->first = canonical(candidate->first, field);
  candidate->second = canonical(candidate->second, field);
  return candidate;
}

template <class S>
GroupMap<S> random_map(int n, const Field& field, Rng& rng) {
  std::vector<S> v(factorial(n));
  for (S& x : v) x = random_element<S>(field, rng, true);
  return GroupMap<S>(n, field, std::move(v));
}

template <class S>
GroupMap<S> random_central_map(int n, const Field& field, Rng& rng) {
  std::map<std::vector<int>, S> by_type;
  const auto& perms = all_permutations(n);
  std::vector<S> v;
  v.reserve(perms.size());
  // Draw class values in rank order of the first class member for reproducibility.
  for (const Permutation& s : perms) {
    auto key = s.cycle_type();
    auto it = by_type.find(key);
    if (it == by_type.end()) it = by_type.emplace(key, random_element<S>(field, rng, true)).first;
    v.push_back(it->second);
  }
  return GroupMap<S>(n, field, std::move(v));
}

template <class S>
Mat<S> random_nowhere_zero_matrix(int n, const Field& field, Rng& rng) {
  Mat<S> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = random_element<S>(field, rng, true);
  return a;
}

Permutation three_cycle(int n) {
  if (n < 3) throw Error("InvalidArgument", "3-cycle needs n >= 3");
  return Permutation::cycle(n, {1, 2, 3});
}

Permutation double_transposition(int n) {
  if (n < 4) throw Error("InvalidArgument", "double transposition needs n >= 4");
  return Permutation::transposition(n, 1, 2) * Permutation::transposition(n, 3, 4);
}

Permutation full_cycle(int n) {
  std::vector<int> pts(n);
  for (int k = 0; k < n; ++k) pts[k] = k + 1;
  return Permutation::cycle(n, pts);
}

#define SFL_INSTANTIATE(S)                                                                                  \
  template GroupMap<S> sgn_map<S>(int, const Field&);                                                       \
  template GroupMap<S> one_map<S>(int, const Field&);                                                       \
  template GroupMap<S> sgn_nfix_map<S>(int, const Field&, const S&, const S&);                              \
  template GroupMap<S> example_f4_map<S>(const Field&, const S&);                                           \
  template GroupMap<S> example_g_map<S>(int, const Field&, const S&);                                       \
  template GroupMap<S> example_h_map<S>(int, const Field&, const std::vector<S>&);                          \
  template GroupMap<S> scaled<S>(const GroupMap<S>&, const S&);                                             \
  template GroupMap<S> quotient<S>(const GroupMap<S>&, const GroupMap<S>&);                                 \
  template GroupMap<S> transpose_map<S>(const GroupMap<S>&);                                                \
  template GroupMap<S> h_action<S>(const GroupMap<S>&, const Mat<S>&);                                      \
  template GroupMap<S> ph_action<S>(const GroupMap<S>&, const Mat<S>&, const Permutation&, const Permutation&); \
  template S diagonal_product<S>(const Mat<S>&, const Permutation&);                                        \
  template bool is_central<S>(const GroupMap<S>&);                                                          \
  template std::optional<std::pair<S, S>> fit_sgn_nfix_form<S>(const GroupMap<S>&);                         \
  template GroupMap<S> random_map<S>(int, const Field&, Rng&);                                              \
  template GroupMap<S> random_central_map<S>(int, const Field&, Rng&);                                      \
  template Mat<S> random_nowhere_zero_matrix<S>(int, const Field&, Rng&);

SFL_INSTANTIATE(Fp)
SFL_INSTANTIATE(Rational)

}  // namespace sfl
