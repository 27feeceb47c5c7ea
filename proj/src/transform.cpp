#include "sfl/transform.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <type_traits>

#include "sfl/parallel.hpp"
#include "sfl/zmod.hpp"

namespace sfl {

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::yes: return "yes";
    case VerdictKind::yes_up_to_scalar: return "yes-up-to-scalar";
    default: return "no";
  }
}

const char* case_name(DecompositionCase c) { return c == DecompositionCase::direct ? "direct" : "transpose"; }

namespace {

template <class S>
void require_compatible(const GroupMap<S>& f, const GroupMap<S>& g) {
  if (f.n() != g.n()) throw Error("DimensionMismatch", "maps of different degrees");
  if (!(f.field() == g.field())) throw Error("FieldMismatch", "maps over different fields");
}

template <class S>
std::optional<Mat<S>> search_counterexample(const GroupMap<S>& f, const GroupMap<S>& g,
                                            const TransformationMatrix<S>& u, std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < 64; ++t) {
    Mat<S> m = random_matrix<S>(f.n(), f.field(), rng);
    if (!(eval(g, apply(u, m)) == eval(f, m))) return m;
  }
  return std::nullopt;
}

}  // namespace

template <class S>
TransformVerdict<S> is_transformation(const GroupMap<S>& f, const GroupMap<S>& g, const TransformationMatrix<S>& u,
                                      const CheckMode& mode) {
  require_compatible(f, g);
  if (u.n != f.n()) throw Error("DimensionMismatch", "transformation size differs from map degree");
  if (!(u.field == f.field())) throw Error("FieldMismatch", "transformation over a different field");
  TransformVerdict<S> out;
  out.probabilistic = mode.probabilistic;
  out.seed = mode.seed;
  const S one = f.field().template element<S>(1);

  if (!mode.probabilistic) {
    const MultPoly<S> lhs = expand_composed(g, u);
    const MultPoly<S> rhs = polynomial_of(f);
    std::optional<S> alpha = proportional(lhs, rhs);
    if (alpha && !is_zero(*alpha)) {
      out.kind = *alpha == one ? VerdictKind::yes : VerdictKind::yes_up_to_scalar;
      out.alpha = alpha;
      return out;
    }
    // First monomial (in exponent order) where the two sides differ.
    auto li = lhs.terms.begin(), ri = rhs.terms.begin();
    while (li != lhs.terms.end() || ri != rhs.terms.end()) {
      if (ri == rhs.terms.end() || (li != lhs.terms.end() && li->first < ri->first)) {
        out.monomial = li->first;
        break;
      }
      if (li == lhs.terms.end() || ri->first < li->first) {
        out.monomial = ri->first;
        break;
      }
      if (!(li->second == ri->second)) {
        out.monomial = li->first;
        break;
      }
      ++li, ++ri;
    }
    out.witness = search_counterexample(f, g, u, mode.seed);
    return out;
  }

  out.trials = mode.trials;
  ProbabilisticVerdict<S> pv = probabilistic_equal(g, u, f, mode.trials, mode.seed);
  if (pv.equal) {
    out.kind = VerdictKind::yes;
    out.alpha = one;
    return out;
  }
  out.witness = pv.witness;
  // Estimate a scalar from the disagreeing sample and test it on fresh samples.
  const Mat<S>& m0 = *pv.witness;
  const S lhs0 = eval(g, apply(u, m0)), rhs0 = eval(f, m0);
  if (is_zero(lhs0) || is_zero(rhs0)) return out;
  const S alpha = lhs0 / rhs0;
  Rng rng(mode.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int t = 0; t < mode.trials; ++t) {
    Mat<S> m = random_matrix<S>(f.n(), f.field(), rng);
    if (!(eval(g, apply(u, m)) == alpha * eval(f, m))) {
      out.witness = m;
      return out;
    }
  }
  out.kind = VerdictKind::yes_up_to_scalar;
  out.alpha = canonical(alpha, f.field());
  return out;
}

template <class S>
bool is_normalized_rank1(const Mat<S>& r) {
  if (r.rows() != r.cols() || r.rows() == 0) return false;
  if (matrix_rank(r) != 1) return false;
  S prod = r(0, 0);
  for (Eigen::Index k = 1; k < r.rows(); ++k) prod *= r(k, k);
  return prod == one_like(r(0, 0));
}

namespace {

// Coefficient matrix of the system sum_k x_{s(k),k} = log h(s), one row per
// permutation in rank order, one column per vec position; cached per (n, m).
std::shared_ptr<const ModDiagonalForm> h_system(int n, std::uint64_t m) {
  static std::mutex mu;
  static std::map<std::pair<int, std::uint64_t>, std::shared_ptr<const ModDiagonalForm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, m}];
  if (!slot) {
    const auto& perms = all_permutations(n);
    std::vector<std::vector<std::uint64_t>> a(perms.size(), std::vector<std::uint64_t>(n * n, 0));
    for (std::size_t r = 0; r < perms.size(); ++r)
      for (int k = 1; k <= n; ++k) a[r][vec_index(n, perms[r](k) - 1, k - 1)] = 1;
    slot = std::make_shared<const ModDiagonalForm>(diagonalize_mod(std::move(a), m));
  }
  return slot;
}

}  // namespace

template <class S>
std::optional<Mat<S>> decide_h_equivalence(const GroupMap<S>& f, const GroupMap<S>& g) {
  require_compatible(f, g);
  if constexpr (std::is_same_v<S, Rational>) {
    throw Error("RationalsNotDecidable", "H-equivalence is decided over GF(p) only");
  } else {
    const int n = f.n();
    const std::uint64_t p = f.field().p;
    const std::uint64_t m = p - 1;
    auto form = h_system(n, m);
    std::vector<std::uint64_t> rhs(f.size());
    for (std::uint64_t k = 0; k < f.size(); ++k) rhs[k] = discrete_log(static_cast<std::uint64_t>((g.at(k) / f.at(k)).value()), p);
    auto x = solve_mod(*form, std::move(rhs));
    if (!x) return std::nullopt;
    const std::uint64_t gen = primitive_root(p);
    Mat<S> a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a(i, j) = Fp::make(static_cast<long long>(pow_mod(gen, (*x)[vec_index(n, i, j)], p)), static_cast<std::uint32_t>(p));
    if (!(h_action(f, a) == g)) throw Error("InternalError", "H-equivalence witness failed replay");
    return a;
  }
}

template <class S>
std::optional<PHWitness<S>> decide_ph_equivalence(const GroupMap<S>& f, const GroupMap<S>& g) {
  require_compatible(f, g);
  if constexpr (std::is_same_v<S, Rational>) {
    throw Error("RationalsNotDecidable", "PH-equivalence is decided over GF(p) only");
  } else {
    const int n = f.n();
    if (n > kMaxPHDegree) throw Error("DegreeTooLarge", "PH-equivalence search is limited to n <= 5");
    const Field& field = f.field();
    const std::uint64_t nf = factorial(n);
    const Mat<S> e = ones<S>(n, field);
    auto attempt = [&](std::uint64_t k) -> std::optional<PHWitness<S>> {
      const Permutation t = Permutation::unrank(k / nf, n), t2 = Permutation::unrank(k % nf, n);
      auto b = decide_h_equivalence(ph_action(f, e, t, t2), g);
      if (!b) return std::nullopt;
      Mat<S> a = perm_matrix<S>(t, field) * *b * perm_matrix<S>(t2.inverse(), field);
      return PHWitness<S>{std::move(a), t, t2};
    };
    auto hit = first_match(nf * nf, [&](std::uint64_t k) { return attempt(k).has_value(); });
    if (!hit) return std::nullopt;
    PHWitness<S> w = *attempt(*hit);
    if (!(ph_action(f, w.a, w.tau, w.tau_prime) == g)) throw Error("InternalError", "PH-equivalence witness failed replay");
    return w;
  }
}

template <class S>
std::optional<TransformationMatrix<S>> exists_transformation(const GroupMap<S>& f, const GroupMap<S>& g) {
  require_compatible(f, g);
  const int n = f.n();
  if (n > kMaxExactDegree) throw Error("DegreeTooLarge", "transformation search is limited to n <= 4");
  const Field& field = f.field();
  // g = f.(A, t, t') gives g~(M) = f~(A * (P_t M P_t'^{-1})), so U(N) = P_t^{-1} (A^{[-1]} * N) P_t'.
  auto assemble = [&](const PHWitness<S>& w, bool transpose) {
    const Mat<S> ai = hadamard_inverse(w.a);
    const Mat<S> left = perm_matrix<S>(w.tau.inverse(), field), right = perm_matrix<S>(w.tau_prime, field);
    return from_linear_map<S>(n, field, [&](const Mat<S>& m) {
      return Mat<S>(left * hadamard(ai, transpose ? Mat<S>(m.transpose()) : m) * right);
    });
  };
  std::optional<TransformationMatrix<S>> u;
  if (auto w = decide_ph_equivalence(f, g)) u = assemble(*w, false);
  else if (auto wt = decide_ph_equivalence(transpose_map(f), g)) u = assemble(*wt, true);
  if (!u) return std::nullopt;
  if (is_transformation(f, g, *u).kind != VerdictKind::yes)
    throw Error("InternalError", "assembled transformation failed verification");
  return u;
}

template <class S>
Mat<S> block_diagonal(const std::vector<Mat<S>>& blocks, const Field& field) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.rows());
  Mat<S> out = zeros<S>(n, n, field);
  int at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += static_cast<int>(b.rows());
  }
  return out;
}

namespace {

template <class S>
void require_blocks(const std::vector<Mat<S>>& blocks, const std::vector<int>& sizes, const char* what) {
  if (blocks.size() != sizes.size())
    throw Error("BlockShapeMismatch", std::string(what) + " block count differs from the class count");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].rows() != sizes[k] || blocks[k].cols() != sizes[k])
      throw Error("BlockShapeMismatch", std::string(what) + " block " + std::to_string(k + 1) + " has the wrong size");
    if (is_zero(determinant(blocks[k])))
      throw Error("SingularBlock", std::string(what) + " block " + std::to_string(k + 1) + " is singular");
  }
}

}  // namespace

template <class S>
std::pair<TransformationMatrix<S>, S> standard_similarity(const GroupMap<S>& f_norm, const std::vector<Mat<S>>& p_blocks,
                                                           const std::vector<Mat<S>>& q_blocks) {
  if (!is_fully_normalized(f_norm)) throw Error("NotFullyNormalized", "standard similarities need a fully-normalized map");
  const Field& field = f_norm.field();
  const PartitionPair pp = partitions(f_norm);
  require_blocks(p_blocks, pp.r_list, "P");
  require_blocks(q_blocks, pp.c_list, "Q");
  const Mat<S> p = block_diagonal(p_blocks, field), q = block_diagonal(q_blocks, field);
  const S alpha = canonical(determinant(p) * determinant(q), field);
  TransformationMatrix<S> u = multiplication_transformation(p, q, field);
  if (f_norm.n() <= kMaxExactDegree) {
    auto got = proportional(expand_composed(f_norm, u), polynomial_of(f_norm));
    if (!got || !(*got == alpha)) throw Error("InternalError", "standard similarity failed verification");
  }
  return {std::move(u), alpha};
}

bool is_adapted(const Permutation& s, const Partition& classes) {
  const int n = s.n();
  const std::vector<int> idx = class_index(classes, n);
  for (const auto& c : classes) {
    for (std::size_t r = 0; r < c.size(); ++r) {
      if (idx[s(c[r])] != idx[s(c.front())]) return false;
      if (r > 0 && s(c[r]) < s(c[r - 1])) return false;
    }
  }
  return true;
}

template <class S>
TransformationMatrix<S> recompose(const DecomposedForm<S>& d, const Field& field) {
  const int n = static_cast<int>(d.k.rows());
  const Mat<S> p = block_diagonal(d.v.p_blocks, field), q = block_diagonal(d.v.q_blocks, field);
  const Mat<S> ps = perm_matrix<S>(d.sigma, field), pt = perm_matrix<S>(d.tau, field);
  const bool transpose = d.kind == DecompositionCase::transpose;
  return from_linear_map<S>(n, field, [&](const Mat<S>& m) {
    const Mat<S> arg = transpose ? Mat<S>(m.transpose()) : m;
    return hadamard(d.k, Mat<S>(ps * p * arg * q * pt));
  });
}

namespace {

// Direct-case recovery for fixed (sigma, tau). ue(i, j) is the image of E_ij
// (1-based); row/col are the classes governing P and Q.
template <class S>
std::optional<DecomposedForm<S>> recover_direct(const std::function<const Mat<S>&(int, int)>& ue, int n,
                                                const Field& field, const Partition& row, const Partition& col,
                                                const PartitionPair& gpp, const Permutation& sigma,
                                                const Permutation& tau) {
  const std::vector<int> ri = class_index(row, n), ci = class_index(col, n);
  const Permutation tau_inv = tau.inverse(), sigma_inv = sigma.inverse();
  // T(E_ij)_{cd} = U(E_ij)_{sigma(c), tau^{-1}(d)} = lambda_{R(i),C(j)} P_{ci} Q_{jd}.
  auto t = [&](int i, int j, int c, int d) -> const S& { return ue(i, j)(sigma(c) - 1, tau_inv(d) - 1); };
  const int r0 = ri[sigma_inv(1)], c0 = ci[tau(1)];
  const int i0 = row[r0].front(), j0 = col[c0].front();
  int bstar = 0;
  for (int d = 1; d <= n && !bstar; ++d)
    for (int c = 1; c <= n; ++c)
      if (!is_zero(t(i0, j0, c, d))) {
        bstar = d;
        break;
      }
  if (!bstar) return std::nullopt;
  Mat<S> p(n, n), q(n, n);
  for (int i = 1; i <= n; ++i)
    for (int c = 1; c <= n; ++c) p(c - 1, i - 1) = t(i, j0, c, bstar);
  int astar = 0;
  for (int c = 1; c <= n && !astar; ++c)
    if (!is_zero(p(c - 1, i0 - 1))) astar = c;
  if (!astar) return std::nullopt;
  const S pivot = p(astar - 1, i0 - 1);
  for (int j = 1; j <= n; ++j)
    for (int d = 1; d <= n; ++d) q(j - 1, d - 1) = t(i0, j, astar, d) / pivot;

  std::vector<std::vector<S>> lambda(row.size(), std::vector<S>(col.size()));
  for (std::size_t r = 0; r < row.size(); ++r)
    for (std::size_t c = 0; c < col.size(); ++c) {
      const int i = row[r].front(), j = col[c].front();
      int a = 0, b = 0;
      for (int x = 1; x <= n && !a; ++x)
        if (!is_zero(p(x - 1, i - 1))) a = x;
      for (int y = 1; y <= n && !b; ++y)
        if (!is_zero(q(j - 1, y - 1))) b = y;
      if (!a || !b) return std::nullopt;
      lambda[r][c] = t(i, j, a, b) / (p(a - 1, i - 1) * q(j - 1, b - 1));
      if (is_zero(lambda[r][c])) return std::nullopt;
    }

  // P and Q must be block diagonal over the classes, with invertible blocks.
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) {
      if (ri[x] != ri[y] && !is_zero(p(x - 1, y - 1))) return std::nullopt;
      if (ci[x] != ci[y] && !is_zero(q(x - 1, y - 1))) return std::nullopt;
    }
  StandardSimilarity<S> v;
  for (const auto& c : row) {
    const int at = c.front() - 1, sz = static_cast<int>(c.size());
    v.p_blocks.push_back(p.block(at, at, sz, sz));
    if (is_zero(determinant(v.p_blocks.back()))) return std::nullopt;
  }
  for (const auto& c : col) {
    const int at = c.front() - 1, sz = static_cast<int>(c.size());
    v.q_blocks.push_back(q.block(at, at, sz, sz));
    if (is_zero(determinant(v.q_blocks.back()))) return std::nullopt;
  }
  v.alpha = canonical(determinant(p) * determinant(q), field);

  Mat<S> k(n, n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) k(a - 1, b - 1) = canonical(lambda[ri[sigma_inv(a)]][ci[tau(b)]], field);
  const S one = field.element<S>(1);
  const std::vector<int> gr = class_index(gpp.row_classes, n), gc = class_index(gpp.column_classes, n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      if ((a == 1 || b == 1) && !(k(a - 1, b - 1) == one)) return std::nullopt;
      const int a0 = gpp.row_classes[gr[a]].front(), b0 = gpp.column_classes[gc[b]].front();
      if (!(k(a - 1, b - 1) == k(a0 - 1, b0 - 1))) return std::nullopt;
    }
  for (auto& blk : v.p_blocks)
    for (auto& x : blk.reshaped()) x = canonical(x, field);
  for (auto& blk : v.q_blocks)
    for (auto& x : blk.reshaped()) x = canonical(x, field);

  DecomposedForm<S> out{DecompositionCase::direct, std::move(k), sigma, tau, std::move(v)};
  const TransformationMatrix<S> back = recompose(out, field);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (!equal(apply(back, basis_matrix<S>(n, i - 1, j - 1, field)), ue(i, j))) return std::nullopt;
  return out;
}

// Rank of the coefficient matrices of M -> U(M)_{a,1} stacked vertically (transpose = false) or side by side.
template <class S>
int first_column_rank(const TransformationMatrix<S>& u, bool side_by_side) {
  const int n = u.n;
  Mat<S> stack = side_by_side ? Mat<S>(n, n * n) : Mat<S>(n * n, n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const S& c = u.entries(vec_index(n, a, 0), vec_index(n, i, j));
        if (side_by_side) stack(i, a * n + j) = c;
        else stack(a * n + i, j) = c;
      }
  return matrix_rank(stack);
}

}  // namespace

template <class S>
DecomposedForm<S> decompose(const TransformationMatrix<S>& u, const GroupMap<S>& f, const GroupMap<S>& g) {
  require_compatible(f, g);
  const int n = f.n();
  const Field& field = f.field();
  if (n < 2) throw Error("InvalidArgument", "decomposition needs n >= 2");
  if (!is_fully_normalized(f) || !is_fully_normalized(g))
    throw Error("NotFullyNormalized", "decomposition needs fully-normalized maps");
  if (is_transformation(f, g, u).kind == VerdictKind::no)
    throw Error("NotATransformation", "U does not map the zero set of f~ onto that of g~");

  const bool direct = first_column_rank(u, false) == 1;
  const bool transpose = first_column_rank(u, true) == 1;
  if (direct == transpose) throw Error("InternalError", "case detection is ambiguous");

  std::vector<std::vector<Mat<S>>> images(n + 1, std::vector<Mat<S>>(n + 1));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) images[i][j] = apply(u, basis_matrix<S>(n, i - 1, j - 1, field));
  // In the transpose case, work with U'(N) = U(N^T) and f^T.
  std::function<const Mat<S>&(int, int)> ue = [&](int i, int j) -> const Mat<S>& {
    return direct ? images[i][j] : images[j][i];
  };
  const PartitionPair fpp = partitions(f), gpp = partitions(g);
  const Partition& row = direct ? fpp.row_classes : fpp.column_classes;
  const Partition& col = direct ? fpp.column_classes : fpp.row_classes;

  std::vector<Permutation> sigmas, taus;
  for (const auto& s : all_permutations(n)) {
    if (is_adapted(s, row)) sigmas.push_back(s);
    if (is_adapted(s, col)) taus.push_back(s);
  }
  std::mutex mu;
  std::vector<std::pair<std::uint64_t, DecomposedForm<S>>> found;
  parallel_for(sigmas.size() * taus.size(), [&](std::uint64_t k) {
    auto d = recover_direct<S>(ue, n, field, row, col, gpp, sigmas[k / taus.size()], taus[k % taus.size()]);
    if (!d) return;
    std::lock_guard<std::mutex> lock(mu);
    found.emplace_back(k, std::move(*d));
  });
  if (found.size() != 1)
    throw Error("InternalError", "expected exactly one decomposition, found " + std::to_string(found.size()));
  DecomposedForm<S> out = std::move(found.front().second);
  out.kind = direct ? DecompositionCase::direct : DecompositionCase::transpose;
  const GroupMap<S> fv = direct ? f : transpose_map(f);
  auto [vu, alpha] = standard_similarity(fv, out.v.p_blocks, out.v.q_blocks);
  (void)vu;
  if (!(alpha == out.v.alpha)) throw Error("InternalError", "similarity scalar mismatch");
  if (!equal(recompose(out, field).entries, u.entries)) throw Error("InternalError", "recomposition differs from U");
  return out;
}

#define SFL_INSTANTIATE(S)                                                                                          \
  template TransformVerdict<S> is_transformation<S>(const GroupMap<S>&, const GroupMap<S>&,                         \
                                                    const TransformationMatrix<S>&, const CheckMode&);              \
  template bool is_normalized_rank1<S>(const Mat<S>&);                                                              \
  template std::optional<Mat<S>> decide_h_equivalence<S>(const GroupMap<S>&, const GroupMap<S>&);                   \
  template std::optional<PHWitness<S>> decide_ph_equivalence<S>(const GroupMap<S>&, const GroupMap<S>&);            \
  template std::optional<TransformationMatrix<S>> exists_transformation<S>(const GroupMap<S>&, const GroupMap<S>&); \
  template Mat<S> block_diagonal<S>(const std::vector<Mat<S>>&, const Field&);                                      \
  template std::pair<TransformationMatrix<S>, S> standard_similarity<S>(                                            \
      const GroupMap<S>&, const std::vector<Mat<S>>&, const std::vector<Mat<S>>&);                                  \
  template DecomposedForm<S> decompose<S>(const TransformationMatrix<S>&, const GroupMap<S>&, const GroupMap<S>&);  \
  template TransformationMatrix<S> recompose<S>(const DecomposedForm<S>&, const Field&);

SFL_INSTANTIATE(Fp)
SFL_INSTANTIATE(Rational)

}  // namespace sfl
