#include "sfl/nullcone.hpp"

#include <algorithm>
#include <mutex>

#include "sfl/parallel.hpp"

namespace sfl {

template <class S>
MatrixSubspace<S> span_of(int n, const Field& field, const Mat<S>& rows) {
  if (rows.cols() != n * n) throw Error("DimensionMismatch", "vectorized matrices must have n^2 entries");
  Echelon<S> e = rref(rows);
  const int r = static_cast<int>(e.pivots.size());
  Mat<S> basis = e.reduced.topRows(r);
  for (auto& x : basis.reshaped()) x = canonical(x, field);
  return MatrixSubspace<S>{n, field, std::move(basis)};
}

template <class S>
MatrixSubspace<S> v_x_basis(const Vec<S>& x, Side side, const Field& field) {
  const int n = static_cast<int>(x.size());
  bool nonzero = false;
  for (const S& v : x) nonzero = nonzero || !is_zero(v);
  if (!nonzero) throw Error("ZeroVector", "X must be nonzero");
  // Constraint rows: (M x)_i = sum_j m_ij x_j, or (x^T M)_j = sum_i x_i m_ij.
  Mat<S> c = zeros<S>(n, n * n, field);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (side == Side::column) c(i, vec_index(n, i, j)) = x(j);
      else c(j, vec_index(n, i, j)) = x(i);
    }
  return span_of<S>(n, field, Mat<S>(nullspace(c, field).transpose()));
}

template <class S>
bool is_adapted_vector(const GroupMap<S>& f_norm, const Vec<S>& x, Side side) {
  const int n = f_norm.n();
  if (x.size() != n) throw Error("DimensionMismatch", "vector length differs from map degree");
  if (!is_normalized(f_norm)) throw Error("NotNormalized", "adaptedness is defined for normalized maps");
  const PartitionPair pp = partitions(f_norm);
  const std::vector<int> idx = class_index(side == Side::column ? pp.column_classes : pp.row_classes, n);
  int cls = -1;
  for (int k = 0; k < n; ++k) {
    if (is_zero(x(k))) continue;
    if (cls >= 0 && idx[k + 1] != cls) return false;
    cls = idx[k + 1];
  }
  if (cls < 0) throw Error("ZeroVector", "X must be nonzero");
  return true;
}

template <class S>
bool subspace_in_cone(const GroupMap<S>& f, const MatrixSubspace<S>& s, std::uint64_t budget) {
  if (!f.field().is_prime_field()) throw Error("InfiniteField", "cone inclusion is decided by enumeration over GF(p)");
  if (s.n != f.n()) throw Error("DimensionMismatch", "subspace and map differ in size");
  const std::uint64_t q = f.field().p;
  std::uint64_t total = 1;
  for (int k = 0; k < s.dim(); ++k) {
    if (total > budget / q) throw Error("BudgetExceeded", "subspace has too many elements to enumerate");
    total *= q;
  }
  const int dim = s.dim();
  std::vector<std::uint64_t> coef(dim, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    Vec<S> v = Vec<S>::Constant(s.n * s.n, f.field().template element<S>(0));
    for (int k = 0; k < dim; ++k, c /= q)
      if (c % q) v += s.basis.row(k).transpose() * f.field().template element<S>(static_cast<long long>(c % q));
    if (!is_zero(eval(f, unvectorize<S>(v, s.n)))) return false;
  }
  return true;
}

template <class S>
MatrixSubspace<S> intersection(const MatrixSubspace<S>& a, const MatrixSubspace<S>& b) {
  if (a.n != b.n) throw Error("DimensionMismatch", "subspaces of different sizes");
  const int nn = a.n * a.n;
  // Constraints of a subspace: the null space of its basis rows.
  auto constraints = [&](const MatrixSubspace<S>& s) -> Mat<S> {
    if (s.dim() == 0) return identity<S>(nn, s.field);
    return Mat<S>(nullspace(s.basis, s.field).transpose());
  };
  Mat<S> ca = constraints(a), cb = constraints(b);
  Mat<S> stacked(ca.rows() + cb.rows(), nn);
  stacked << ca, cb;
  if (stacked.rows() == 0) return span_of<S>(a.n, a.field, identity<S>(nn, a.field));
  return span_of<S>(a.n, a.field, Mat<S>(nullspace(stacked, a.field).transpose()));
}

template <class S>
MatrixSubspace<S> hadamard_image(const Mat<S>& a, const MatrixSubspace<S>& s) {
  require_nowhere_zero(a);
  const Vec<S> av = vectorize(a);
  Mat<S> rows = s.basis;
  for (int r = 0; r < rows.rows(); ++r)
    for (int c = 0; c < rows.cols(); ++c) rows(r, c) *= av(c);
  if (rows.rows() == 0) return s;
  return span_of<S>(s.n, s.field, rows);
}

std::vector<Vec<Fp>> projective_points(int n, const Field& field) {
  if (!field.is_prime_field()) throw Error("InfiniteField", "projective points need a finite field");
  const std::uint64_t q = field.p;
  std::vector<Vec<Fp>> out;
  for (int lead = 0; lead < n; ++lead) {
    std::uint64_t tail = 1;
    for (int k = lead + 1; k < n; ++k) tail *= q;
    for (std::uint64_t code = 0; code < tail; ++code) {
      Vec<Fp> x(n);
      std::uint64_t c = code;
      for (int k = 0; k < n; ++k) {
        if (k < lead) x(k) = field.element<Fp>(0);
        else if (k == lead) x(k) = field.element<Fp>(1);
        else {
          x(k) = field.element<Fp>(static_cast<long long>(c % q));
          c /= q;
        }
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

std::optional<std::pair<Side, Vec<Fp>>> classify_subspace(const MatrixSubspace<Fp>& s) {
  if (s.codim() != s.n) return std::nullopt;
  for (Side side : {Side::column, Side::row})
    for (const Vec<Fp>& x : projective_points(s.n, s.field))
      if (v_x_basis(x, side, s.field) == s) return std::pair{side, x};
  return std::nullopt;
}

namespace {

std::vector<long long> subspace_key(const MatrixSubspace<Fp>& s) {
  std::vector<long long> key{s.dim()};
  for (const Fp& x : s.basis.reshaped<Eigen::RowMajor>()) key.push_back(x.value());
  return key;
}

void sort_unique(std::vector<MatrixSubspace<Fp>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return subspace_key(a) < subspace_key(b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<MatrixSubspace<Fp>> predicted_cone_subspaces(const GroupMap<Fp>& f) {
  const int n = f.n();
  const Field& field = f.field();
  NormalizationWitness<Fp> w = normalize(f);
  std::vector<MatrixSubspace<Fp>> out;
  for (Side side : {Side::column, Side::row})
    for (const Vec<Fp>& x : projective_points(n, field))
      if (is_adapted_vector(w.g, x, side)) out.push_back(hadamard_image(w.a, v_x_basis(x, side, field)));
  sort_unique(out);
  return out;
}

std::uint64_t gaussian_binomial(int N, int k, std::uint64_t q) {
  if (k < 0 || k > N) return 0;
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    std::uint64_t a = 1, b = 1;
    for (int e = 0; e < N - i; ++e) a *= q;
    for (int e = 0; e < i + 1; ++e) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

namespace {

// Subspaces of F_q^N of dimension k as RREF digit rows; callers get one
// pivot pattern per task so patterns can be spread over threads.
struct PivotPattern {
  std::vector<int> pivots;
  std::vector<std::pair<int, int>> free;  // (row, column) of free entries
};

std::vector<PivotPattern> pivot_patterns(int N, int k) {
  std::vector<PivotPattern> out;
  std::vector<int> cols(k);
  std::vector<bool> pick(N, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  // Combinations in lexicographic order of the pivot lists.
  do {
    PivotPattern pat;
    for (int c = 0; c < N; ++c)
      if (pick[c]) pat.pivots.push_back(c);
    std::vector<bool> is_pivot(N, false);
    for (int c : pat.pivots) is_pivot[c] = true;
    for (int r = 0; r < k; ++r)
      for (int c = pat.pivots[r] + 1; c < N; ++c)
        if (!is_pivot[c]) pat.free.emplace_back(r, c);
    out.push_back(std::move(pat));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace

ConeScan scan_cone_subspaces(const GroupMap<Fp>& f, int codim) {
  const int n = f.n();
  const std::uint32_t q = f.field().p;
  if (!f.field().is_prime_field() || (q != 2 && q != 3) || (q == 2 && n > 3) || (q == 3 && n > 2))
    throw Error("ScaleTooLarge", "exhaustive subspace scans need GF(2) with n <= 3 or GF(3) with n <= 2");
  const int N = n * n;
  if (codim < 0 || codim > N) throw Error("InvalidArgument", "codimension out of range");
  const int k = N - codim;

  // f~ at every matrix; matrix index = sum of digit(vec position t) * q^t.
  std::uint64_t count = 1;
  for (int t = 0; t < N; ++t) count *= q;
  std::vector<std::uint8_t> zero_at(count);
  std::vector<std::uint64_t> weight(N, 1);
  for (int t = 1; t < N; ++t) weight[t] = weight[t - 1] * q;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Vec<Fp> v(N);
    std::uint64_t c = idx;
    for (int t = 0; t < N; ++t, c /= q) v(t) = Fp::make(static_cast<long long>(c % q), q);
    zero_at[idx] = is_zero(eval(f, unvectorize<Fp>(v, n)));
  }

  const std::vector<PivotPattern> patterns = pivot_patterns(N, k);
  std::mutex mu;
  std::vector<std::vector<std::uint8_t>> hits;  // digit rows, k x N
  std::uint64_t scanned = 0;

  parallel_for(patterns.size(), [&](std::uint64_t pi) {
    const PivotPattern& pat = patterns[pi];
    const int nfree = static_cast<int>(pat.free.size());
    std::vector<std::uint8_t> rows(static_cast<std::size_t>(k) * N, 0);
    for (int r = 0; r < k; ++r) rows[r * N + pat.pivots[r]] = 1;
    std::vector<std::uint8_t> digits(nfree, 0);
    std::vector<std::uint64_t> row_index(k);
    std::vector<std::vector<std::uint8_t>> local;
    std::uint64_t local_scanned = 0;
    for (;;) {
      ++local_scanned;
      for (int t = 0; t < nfree; ++t) rows[pat.free[t].first * N + pat.free[t].second] = digits[t];
      bool inside = true;
      if (q == 2) {
        // Bitmask encoding; walk the span in Gray-code order.
        for (int r = 0; r < k; ++r) {
          std::uint64_t m = 0;
          for (int t = 0; t < N; ++t)
            if (rows[r * N + t]) m |= std::uint64_t(1) << t;
          row_index[r] = m;
        }
        std::uint64_t cur = 0;
        for (std::uint64_t g = 1; g < (std::uint64_t(1) << k) && inside; ++g) {
          cur ^= row_index[__builtin_ctzll(g)];
          inside = zero_at[cur];
        }
      } else {
        std::uint64_t combos = 1;
        for (int r = 0; r < k; ++r) combos *= q;
        std::vector<std::uint8_t> v(N);
        for (std::uint64_t code = 1; code < combos && inside; ++code) {
          std::fill(v.begin(), v.end(), 0);
          std::uint64_t c = code;
          for (int r = 0; r < k; ++r, c /= q) {
            const auto a = static_cast<std::uint8_t>(c % q);
            if (a)
              for (int t = 0; t < N; ++t) v[t] = static_cast<std::uint8_t>((v[t] + a * rows[r * N + t]) % q);
          }
          std::uint64_t idx = 0;
          for (int t = 0; t < N; ++t) idx += v[t] * weight[t];
          inside = zero_at[idx];
        }
      }
      if (inside) local.push_back(rows);
      int t = 0;
      while (t < nfree && ++digits[t] == q) digits[t++] = 0;
      if (t == nfree) break;
    }
    std::lock_guard<std::mutex> lock(mu);
    scanned += local_scanned;
    for (auto& h : local) hits.push_back(std::move(h));
  });

  ConeScan out;
  out.codim = codim;
  out.scanned = scanned;
  for (const auto& h : hits) {
    Mat<Fp> b(k, N);
    for (int r = 0; r < k; ++r)
      for (int t = 0; t < N; ++t) b(r, t) = Fp::make(h[r * N + t], q);
    out.inside.push_back(MatrixSubspace<Fp>{n, f.field(), std::move(b)});
  }
  sort_unique(out.inside);
  return out;
}

OracleReport minimal_subspace_oracle(const GroupMap<Fp>& f) {
  OracleReport r;
  r.codim_n = scan_cone_subspaces(f, f.n());
  r.codim_n_minus_1 = scan_cone_subspaces(f, f.n() - 1);
  r.predicted = predicted_cone_subspaces(f);
  r.matches_prediction = r.codim_n.inside == r.predicted;
  return r;
}

#define SFL_INSTANTIATE(S)                                                                                      \
  template MatrixSubspace<S> span_of<S>(int, const Field&, const Mat<S>&);                                      \
  template MatrixSubspace<S> v_x_basis<S>(const Vec<S>&, Side, const Field&);                                   \
  template bool is_adapted_vector<S>(const GroupMap<S>&, const Vec<S>&, Side);                                  \
  template bool subspace_in_cone<S>(const GroupMap<S>&, const MatrixSubspace<S>&, std::uint64_t);               \
  template MatrixSubspace<S> intersection<S>(const MatrixSubspace<S>&, const MatrixSubspace<S>&);               \
  template MatrixSubspace<S> hadamard_image<S>(const Mat<S>&, const MatrixSubspace<S>&);

SFL_INSTANTIATE(Fp)
SFL_INSTANTIATE(Rational)

}  // namespace sfl
