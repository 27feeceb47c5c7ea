#include <doctest.h>

#include "generators.hpp"
#include "helpers.hpp"
#include "sfl/transform.hpp"

using namespace sfl;
using testing::fp;
using testing::mat;

namespace {

template <class S>
Mat<S> random_invertible(int n, const Field& field, Rng& rng) {
  for (;;) {
    Mat<S> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = random_element<S>(field, rng, false);
    if (!is_zero(determinant(m))) return m;
  }
}

// Random X Y^T, forced to have diagonal product 1 when `normalized`.
Mat<Fp> random_rank1(int n, const Field& field, Rng& rng, bool normalized) {
  Vec<Fp> x(n), y(n);
  for (int k = 0; k < n; ++k) x(k) = random_element<Fp>(field, rng, true), y(k) = random_element<Fp>(field, rng, true);
  if (normalized) {
    Fp prod = field.element<Fp>(1);
    for (int k = 0; k < n; ++k) prod *= x(k) * y(k);
    y(0) /= prod;
  }
  return outer(x, y);
}

Permutation random_perm(int n, Rng& rng) { return Permutation::unrank(rng.below(factorial(n)), n); }

// Every A over GF(p) with g = f.A, by exhaustive search.
bool h_equivalent_brute(const GroupMap<Fp>& f, const GroupMap<Fp>& g) {
  const int n = f.n();
  const std::uint32_t p = f.field().p;
  std::uint64_t total = 1;
  for (int k = 0; k < n * n; ++k) total *= p - 1;
  for (std::uint64_t code = 0; code < total; ++code) {
    Mat<Fp> a(n, n);
    std::uint64_t c = code;
    for (int k = 0; k < n * n; ++k, c /= p - 1) a(k % n, k / n) = fp(1 + static_cast<long long>(c % (p - 1)), p);
    if (h_action(f, a) == g) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("normalized rank-1 matrices") {
  Field f7 = Field::gfp(7);
  CHECK(is_normalized_rank1(ones<Fp>(3, f7)));
  CHECK(is_normalized_rank1(outer(testing::vec<Fp>(f7, {1, 2}), testing::vec<Fp>(f7, {1, 4}))));
  CHECK_FALSE(is_normalized_rank1(mat<Fp>(f7, {{1, 1}, {1, 2}})));
  CHECK_FALSE(is_normalized_rank1(outer(testing::vec<Fp>(f7, {1, 2}), testing::vec<Fp>(f7, {1, 1}))));
  CHECK_FALSE(is_normalized_rank1(zeros<Fp>(2, 2, f7)));
}

TEST_CASE("Hadamard maps preserve one and sgn exactly for normalized rank-1 factors") {
  Field f7 = Field::gfp(7);
  Rng rng(40);
  for (int n = 2; n <= 4; ++n) {
    int hits = 0;
    for (int trial = 0; trial < (n == 4 ? 12 : 40); ++trial) {
      Mat<Fp> r;
      switch (trial % 3) {
        case 0: r = random_rank1(n, f7, rng, true); break;
        case 1: r = random_rank1(n, f7, rng, false); break;
        default: r = random_nowhere_zero_matrix<Fp>(n, f7, rng);
      }
      const bool expected = is_normalized_rank1(r);
      hits += expected;
      for (const auto& f : {one_map<Fp>(n, f7), sgn_map<Fp>(n, f7)}) {
        auto v = is_transformation(f, f, hadamard_transformation(r, f7));
        CHECK((v.kind == VerdictKind::yes) == expected);
        if (v.kind != VerdictKind::no) CHECK(is_invertible(hadamard_transformation(r, f7)));
      }
    }
    CHECK(hits > 0);
  }
}

TEST_CASE("determinant preservers and scalar verdicts") {
  Field f7 = Field::gfp(7), q = Field::rationals();
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    Mat<Fp> p = random_invertible<Fp>(3, f7, rng), qm = random_invertible<Fp>(3, f7, rng);
    const Fp d = determinant(p) * determinant(qm);
    GroupMap<Fp> sgn = sgn_map<Fp>(3, f7);
    auto u = multiplication_transformation(p, qm, f7);
    auto v = is_transformation(sgn, sgn, u);
    if (d == fp(1, 7)) {
      CHECK(v.kind == VerdictKind::yes);
    } else {
      CHECK(v.kind == VerdictKind::yes_up_to_scalar);
      CHECK(*v.alpha == d);
    }
    auto ut = composed(u, transpose_transformation<Fp>(3, f7));
    CHECK(is_transformation(sgn, sgn, ut).kind == v.kind);
  }
  auto v = is_transformation(sgn_map<Rational>(2, q), sgn_map<Rational>(2, q),
                             scalar_transformation<Rational>(2, Rational(2), q));
  CHECK(v.kind == VerdictKind::yes_up_to_scalar);
  CHECK(*v.alpha == Rational(4));
}

TEST_CASE("negative verdicts carry witnesses") {
  Field f7 = Field::gfp(7);
  GroupMap<Fp> one = one_map<Fp>(3, f7), sgn = sgn_map<Fp>(3, f7);
  auto v = is_transformation(sgn, one, identity_transformation<Fp>(3, f7));
  CHECK(v.kind == VerdictKind::no);
  REQUIRE(v.monomial.has_value());
  REQUIRE(v.witness.has_value());
  CHECK_FALSE(eval(one, *v.witness) == eval(sgn, *v.witness));
  // A singular U kills the polynomial entirely.
  auto zero = scalar_transformation<Fp>(3, fp(0, 7), f7);
  CHECK(is_transformation(one, one, zero).kind == VerdictKind::no);
}

TEST_CASE("probabilistic mode") {
  Field f101 = Field::gfp(101), f11 = Field::gfp(11);
  Rng rng(42);
  GroupMap<Fp> sgn = sgn_map<Fp>(3, f101);
  Mat<Fp> p = random_invertible<Fp>(3, f101, rng);
  auto u = multiplication_transformation(p, identity<Fp>(3, f101), f101);
  auto v = is_transformation(sgn, sgn, u, CheckMode::sampled(10, 3));
  if (determinant(p) == fp(1, 101)) {
    CHECK(v.kind == VerdictKind::yes);
  } else {
    CHECK(v.kind == VerdictKind::yes_up_to_scalar);
    CHECK(*v.alpha == determinant(p));
  }
  CHECK(is_transformation(sgn, sgn, identity_transformation<Fp>(3, f101), CheckMode::sampled(5, 1)).kind ==
        VerdictKind::yes);
  auto no = is_transformation(sgn, one_map<Fp>(3, f101), identity_transformation<Fp>(3, f101), CheckMode::sampled(5, 1));
  CHECK(no.kind == VerdictKind::no);
  CHECK(no.witness.has_value());
  CHECK_THROWS_AS(is_transformation(sgn_map<Fp>(3, f11), sgn_map<Fp>(3, f11), identity_transformation<Fp>(3, f11),
                                    CheckMode::sampled(5, 1)),
                  Error);
  // Exact mode stops at n = 4; sampling goes further.
  GroupMap<Fp> s5 = sgn_map<Fp>(5, f101);
  CHECK_THROWS_AS(is_transformation(s5, s5, identity_transformation<Fp>(5, f101)), Error);
  CHECK(is_transformation(s5, s5, transpose_transformation<Fp>(5, f101), CheckMode::sampled(4, 9)).kind ==
        VerdictKind::yes);
}

TEST_CASE("H-equivalence decisions agree with exhaustive search") {
  Rng rng(43);
  for (auto [n, p] : {std::pair{2, 5u}, std::pair{2, 7u}, std::pair{3, 3u}}) {
    Field field = Field::gfp(p);
    int positives = 0;
    for (int trial = 0; trial < 30; ++trial) {
      GroupMap<Fp> f = testing::structured_map<Fp>(n, field, rng);
      GroupMap<Fp> g = trial % 2 ? h_action(f, random_nowhere_zero_matrix<Fp>(n, field, rng))
                                 : testing::structured_map<Fp>(n, field, rng);
      auto a = decide_h_equivalence(f, g);
      CHECK(a.has_value() == h_equivalent_brute(f, g));
      if (a) {
        ++positives;
        CHECK(h_action(f, *a) == g);
      }
    }
    CHECK(positives >= 15);
  }
}

TEST_CASE("H-equivalence round trips and the ambiguity class") {
  Rng rng(44);
  for (std::uint32_t p : {7u, 13u, 1048583u}) {
    Field field = Field::gfp(p);
    for (int trial = 0; trial < 12; ++trial) {
      int n = 2 + trial % 3;
      GroupMap<Fp> f = testing::structured_map<Fp>(n, field, rng);
      Mat<Fp> a0 = random_nowhere_zero_matrix<Fp>(n, field, rng);
      auto a = decide_h_equivalence(f, h_action(f, a0));
      REQUIRE(a.has_value());
      CHECK(is_normalized_rank1(Mat<Fp>(hadamard(*a, hadamard_inverse(a0)))));
    }
  }
  Field f7 = Field::gfp(7);
  auto e = decide_h_equivalence(sgn_map<Fp>(4, f7), sgn_map<Fp>(4, f7));
  REQUIRE(e.has_value());
  CHECK(equal(*e, ones<Fp>(4, f7)));
  CHECK_FALSE(decide_h_equivalence(sgn_map<Fp>(3, f7), one_map<Fp>(3, f7)).has_value());
  Field q = Field::rationals();
  CHECK_THROWS_AS(decide_h_equivalence(one_map<Rational>(2, q), one_map<Rational>(2, q)), Error);
  // Scaling one column of E by alpha scales the map.
  Mat<Fp> col = ones<Fp>(3, f7);
  for (int i = 0; i < 3; ++i) col(i, 0) = fp(3, 7);
  CHECK(h_action(sgn_map<Fp>(3, f7), col) == scaled(sgn_map<Fp>(3, f7), fp(3, 7)));
  CHECK(decide_h_equivalence(sgn_map<Fp>(3, f7), scaled(sgn_map<Fp>(3, f7), fp(3, 7))).has_value());
}

TEST_CASE("PH-equivalence") {
  Rng rng(45);
  Field f5 = Field::gfp(5), f7 = Field::gfp(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 3;
    GroupMap<Fp> f = testing::structured_map<Fp>(n, f7, rng);
    GroupMap<Fp> g = ph_action(f, random_nowhere_zero_matrix<Fp>(n, f7, rng), random_perm(n, rng), random_perm(n, rng));
    auto w = decide_ph_equivalence(f, g);
    REQUIRE(w.has_value());
    CHECK(ph_action(f, w->a, w->tau, w->tau_prime) == g);
  }
  for (const Field& field : {f5, f7}) {
    CHECK_FALSE(decide_ph_equivalence(sgn_map<Fp>(3, field), one_map<Fp>(3, field)).has_value());
    CHECK_FALSE(decide_ph_equivalence(one_map<Fp>(3, field), sgn_map<Fp>(3, field)).has_value());
  }
  auto self = decide_ph_equivalence(sgn_map<Fp>(3, f7), sgn_map<Fp>(3, f7));
  REQUIRE(self.has_value());
  CHECK(self->tau.is_identity());
  CHECK(self->tau_prime.is_identity());
  CHECK(equal(self->a, ones<Fp>(3, f7)));
  // The first witness in pair order: brute force over n = 2, GF(5).
  for (int trial = 0; trial < 10; ++trial) {
    GroupMap<Fp> f = random_map<Fp>(2, f5, rng), g = random_map<Fp>(2, f5, rng);
    std::optional<std::uint64_t> first;
    for (std::uint64_t k = 0; k < 4 && !first; ++k)
      if (h_equivalent_brute(ph_action(f, ones<Fp>(2, f5), Permutation::unrank(k / 2, 2), Permutation::unrank(k % 2, 2)), g))
        first = k;
    auto w = decide_ph_equivalence(f, g);
    REQUIRE(w.has_value() == first.has_value());
    if (w) CHECK(w->tau.rank() * 2 + w->tau_prime.rank() == *first);
  }
  CHECK_THROWS_AS(decide_ph_equivalence(one_map<Fp>(6, f7), one_map<Fp>(6, f7)), Error);
}

TEST_CASE("existence of transformations") {
  Rng rng(46);
  Field f5 = Field::gfp(5), f7 = Field::gfp(7);
  auto id = exists_transformation(sgn_map<Fp>(3, f7), sgn_map<Fp>(3, f7));
  REQUIRE(id.has_value());
  CHECK(*id == identity_transformation<Fp>(3, f7));
  for (const Field& field : {f5, f7}) {
    CHECK_FALSE(exists_transformation(sgn_map<Fp>(3, field), one_map<Fp>(3, field)).has_value());
    CHECK_FALSE(exists_transformation(one_map<Fp>(3, field), sgn_map<Fp>(3, field)).has_value());
  }
  // A map that is not PH-equivalent to its transpose needs the transpose operator.
  bool seen = false;
  for (int trial = 0; trial < 50 && !seen; ++trial) {
    GroupMap<Fp> f = random_map<Fp>(4, f7, rng);
    GroupMap<Fp> ft = transpose_map(f);
    if (decide_ph_equivalence(f, ft)) continue;
    seen = true;
    auto u = exists_transformation(f, ft);
    REQUIRE(u.has_value());
    CHECK(is_transformation(f, ft, *u).kind == VerdictKind::yes);
    // E_11 and E_12 land in the same column.
    Mat<Fp> a = apply(*u, basis_matrix<Fp>(4, 0, 0, f7)), b = apply(*u, basis_matrix<Fp>(4, 0, 1, f7));
    int ca = -1, cb = -1;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (!is_zero(a(i, j))) ca = j;
        if (!is_zero(b(i, j))) cb = j;
      }
    CHECK(ca == cb);
  }
  CHECK(seen);
  // Inverse law on random pairs.
  for (int trial = 0; trial < 15; ++trial) {
    int n = 2 + trial % 2;
    GroupMap<Fp> f = testing::structured_map<Fp>(n, f7, rng);
    GroupMap<Fp> g = ph_action(trial % 3 ? f : transpose_map(f), random_nowhere_zero_matrix<Fp>(n, f7, rng),
                               random_perm(n, rng), random_perm(n, rng));
    auto u = exists_transformation(f, g);
    REQUIRE(u.has_value());
    CHECK(is_invertible(*u));
    auto inv = inverse_transformation(*u);
    REQUIRE(inv.has_value());
    CHECK(is_transformation(g, f, *inv).kind == VerdictKind::yes);
  }
}

TEST_CASE("standard similarities") {
  Field f7 = Field::gfp(7);
  Rng rng(47);
  auto [u, alpha] = standard_similarity(sgn_map<Fp>(3, f7), {identity<Fp>(3, f7)}, {identity<Fp>(3, f7)});
  CHECK(u == identity_transformation<Fp>(3, f7));
  CHECK(alpha == fp(1, 7));
  for (int trial = 0; trial < 5; ++trial) {
    Mat<Fp> p = random_invertible<Fp>(3, f7, rng), qm = random_invertible<Fp>(3, f7, rng);
    qm.row(0) *= inverse(determinant(p) * determinant(qm));
    auto [v, a] = standard_similarity(sgn_map<Fp>(3, f7), {p}, {qm});
    CHECK(a == fp(1, 7));
    CHECK(is_transformation(sgn_map<Fp>(3, f7), sgn_map<Fp>(3, f7), v).kind == VerdictKind::yes);
  }
  // Rigid map: 1x1 blocks give a Hadamard map by an outer product.
  GroupMap<Fp> one = one_map<Fp>(3, f7);
  std::vector<Mat<Fp>> ps, qs;
  Vec<Fp> x(3), y(3);
  for (int k = 0; k < 3; ++k) {
    x(k) = random_element<Fp>(f7, rng, true);
    y(k) = random_element<Fp>(f7, rng, true);
    ps.push_back(Mat<Fp>::Constant(1, 1, x(k)));
    qs.push_back(Mat<Fp>::Constant(1, 1, y(k)));
  }
  auto [h, ha] = standard_similarity(one, ps, qs);
  CHECK(h == hadamard_transformation(outer(x, y), f7));
  Fp prod = fp(1, 7);
  for (int k = 0; k < 3; ++k) prod *= x(k) * y(k);
  CHECK(ha == prod);
  CHECK_THROWS_AS(standard_similarity(one, {identity<Fp>(3, f7)}, qs), Error);
  ps[1] = Mat<Fp>::Constant(1, 1, fp(0, 7));
  CHECK_THROWS_AS(standard_similarity(one, ps, qs), Error);
  CHECK_THROWS_AS(standard_similarity(h_action(one, random_nowhere_zero_matrix<Fp>(3, f7, rng)), ps, qs), Error);
}

namespace {

struct Built {
  TransformationMatrix<Fp> u;
  GroupMap<Fp> g;
  DecomposedForm<Fp> truth;
};

// U = K * (P_sigma V(M) P_tau) (or with M^T) for a fully-normalized f, together with
// the fully-normalized g that makes U a transformation up to a scalar.
Built build_decomposable(const GroupMap<Fp>& f, bool transpose, Rng& rng) {
  const int n = f.n();
  const Field& field = f.field();
  const GroupMap<Fp> base = transpose ? transpose_map(f) : f;
  const PartitionPair pp = partitions(base);
  std::vector<Permutation> sig, ta;
  for (const auto& s : all_permutations(n)) {
    if (is_adapted(s, pp.row_classes)) sig.push_back(s);
    if (is_adapted(s, pp.column_classes)) ta.push_back(s);
  }
  const Permutation sigma = sig[rng.below(sig.size())], tau = ta[rng.below(ta.size())];
  StandardSimilarity<Fp> v;
  for (const auto& c : pp.row_classes) v.p_blocks.push_back(random_invertible<Fp>(static_cast<int>(c.size()), field, rng));
  for (const auto& c : pp.column_classes) v.q_blocks.push_back(random_invertible<Fp>(static_cast<int>(c.size()), field, rng));
  v.alpha = determinant(block_diagonal(v.p_blocks, field)) * determinant(block_diagonal(v.q_blocks, field));
  // g before the Hadamard factor; K is then block-constant on its classes with a unit first row and column.
  const GroupMap<Fp> g0 = ph_action(base, ones<Fp>(n, field), sigma.inverse(), tau);
  const PartitionPair gp = partitions(g0);
  const std::vector<int> gr = class_index(gp.row_classes, n), gc = class_index(gp.column_classes, n);
  std::vector<std::vector<Fp>> lam(gp.row_classes.size(), std::vector<Fp>(gp.column_classes.size()));
  for (auto& row : lam)
    for (auto& x : row) x = random_element<Fp>(field, rng, true);
  Mat<Fp> k(n, n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      k(a - 1, b - 1) = gr[a] == gr[1] || gc[b] == gc[1] ? field.element<Fp>(1) : lam[gr[a]][gc[b]];
  Built out;
  out.truth = DecomposedForm<Fp>{transpose ? DecompositionCase::transpose : DecompositionCase::direct, k, sigma, tau, v};
  out.u = recompose(out.truth, field);
  out.g = h_action(g0, hadamard_inverse(k));
  return out;
}

}  // namespace

TEST_CASE("decomposition of transformations") {
  Field f7 = Field::gfp(7);
  Rng rng(48);
  // Hadamard by a normalized rank-1 matrix on the permanent.
  GroupMap<Fp> one = one_map<Fp>(3, f7);
  Mat<Fp> r = random_rank1(3, f7, rng, true);
  DecomposedForm<Fp> d = decompose(hadamard_transformation(r, f7), one, one);
  CHECK(d.kind == DecompositionCase::direct);
  CHECK(d.sigma.is_identity());
  CHECK(d.tau.is_identity());
  CHECK(equal(d.k, ones<Fp>(3, f7)));
  CHECK(recompose(d, f7) == hadamard_transformation(r, f7));
  // Transpose on a central map.
  GroupMap<Fp> c = sgn_map<Fp>(3, f7);
  DecomposedForm<Fp> t = decompose(transpose_transformation<Fp>(3, f7), c, c);
  CHECK(t.kind == DecompositionCase::transpose);
  CHECK(recompose(t, f7) == transpose_transformation<Fp>(3, f7));
  // Permutation maps on the permanent.
  for (int trial = 0; trial < 5; ++trial) {
    Permutation s0 = random_perm(3, rng), t0 = random_perm(3, rng);
    auto u = multiplication_transformation(perm_matrix<Fp>(s0, f7), perm_matrix<Fp>(t0, f7), f7);
    DecomposedForm<Fp> pd = decompose(u, one, one);
    CHECK(pd.sigma == s0);
    CHECK(pd.tau == t0);
    CHECK(equal(pd.k, ones<Fp>(3, f7)));
  }
  CHECK_THROWS_AS(decompose(identity_transformation<Fp>(3, f7), c, one), Error);
  CHECK_THROWS_AS(decompose(identity_transformation<Fp>(3, f7), h_action(c, random_nowhere_zero_matrix<Fp>(3, f7, rng)), c), Error);
}

TEST_CASE("decomposition round trips on fully-normalized maps") {
  Field f7 = Field::gfp(7);
  Rng rng(49);
  std::vector<GroupMap<Fp>> maps = {one_map<Fp>(3, f7), sgn_map<Fp>(2, f7), sgn_map<Fp>(3, f7),
                                    example_f4_map<Fp>(f7, fp(3, 7))};
  for (int k = 0; k < 6; ++k) maps.push_back(fully_normalize(testing::structured_map<Fp>(3, f7, rng)).g);
  for (const auto& f : maps) {
    REQUIRE(is_fully_normalized(f));
    for (int rep = 0; rep < 2; ++rep)
      for (bool transpose : {false, true}) {
        Built b = build_decomposable(f, transpose, rng);
        REQUIRE(is_fully_normalized(b.g));
        DecomposedForm<Fp> d = decompose(b.u, f, b.g);
        CHECK(d.kind == b.truth.kind);
        CHECK(d.sigma == b.truth.sigma);
        CHECK(d.tau == b.truth.tau);
        CHECK(equal(d.k, b.truth.k));
        CHECK(d.v.alpha == b.truth.v.alpha);
        CHECK(recompose(d, f7) == b.u);
        // Repeated runs give the same quadruple.
        DecomposedForm<Fp> again = decompose(b.u, f, b.g);
        CHECK(equal(again.k, d.k));
        CHECK(equal(block_diagonal(again.v.p_blocks, f7), block_diagonal(d.v.p_blocks, f7)));
      }
  }
}
