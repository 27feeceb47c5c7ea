#include <doctest.h>

#include <chrono>
#include <set>

#include "helpers.hpp"
#include "sfl/nullcone.hpp"

using namespace sfl;
using testing::fp;
using testing::vec;

namespace {

Vec<Fp> random_nonzero_vector(int n, const Field& field, Rng& rng) {
  for (;;) {
    Vec<Fp> x(n);
    bool nonzero = false;
    for (int k = 0; k < n; ++k) {
      x(k) = random_element<Fp>(field, rng, false);
      nonzero = nonzero || !is_zero(x(k));
    }
    if (nonzero) return x;
  }
}

std::vector<long long> key_of(const MatrixSubspace<Fp>& s) {
  std::vector<long long> k{s.dim()};
  for (const Fp& x : s.basis.reshaped<Eigen::RowMajor>()) k.push_back(x.value());
  return k;
}

}  // namespace

TEST_CASE("kernel subspaces") {
  Field f2 = Field::gfp(2), f7 = Field::gfp(7);
  for (int n = 1; n <= 4; ++n) {
    Vec<Fp> e1 = Vec<Fp>::Constant(n, fp(0, 7));
    e1(0) = fp(1, 7);
    MatrixSubspace<Fp> s = v_x_basis(e1, Side::column, f7);
    CHECK(s.dim() == n * n - n);
    for (int k = 0; k < s.dim(); ++k)
      for (int i = 0; i < n; ++i) CHECK(is_zero(s.element(k)(i, 0)));
  }
  Mat<Fp> rows = testing::mat<Fp>(f2, {{1, 0, 1, 0}, {0, 1, 0, 1}});  // E11 + E12, E21 + E22 in vec order
  CHECK(v_x_basis(vec<Fp>(f2, {1, 1}), Side::column, f2) == span_of<Fp>(2, f2, rows));
  CHECK_THROWS_AS(v_x_basis(vec<Fp>(f7, {0, 0}), Side::column, f7), Error);
  for (const Field& field : {Field::gfp(3), Field::gfp(5)})
    for (const auto& x : projective_points(2, field))
      for (const auto& y : projective_points(2, field)) CHECK_FALSE(v_x_basis(x, Side::column, field) == v_x_basis(y, Side::row, field));
}

TEST_CASE("codimensions of kernel spaces and their intersections") {
  Field f7 = Field::gfp(7), q = Field::rationals();
  Rng rng(50);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    Vec<Fp> x = random_nonzero_vector(n, f7, rng), y = random_nonzero_vector(n, f7, rng);
    MatrixSubspace<Fp> vx = v_x_basis(x, Side::column, f7), vy = v_x_basis(y, Side::row, f7);
    CHECK(vx.codim() == n);
    CHECK(vy.codim() == n);
    CHECK(intersection(vx, vy).codim() == 2 * n - 1);
    // Rank of an intersection on a random family, sometimes with dependent members.
    int p = 1 + static_cast<int>(rng.below(n + 1));
    Mat<Fp> fam(n, p);
    MatrixSubspace<Fp> inter;
    for (int k = 0; k < p; ++k) {
      Vec<Fp> z = k > 0 && rng.below(3) == 0 ? Vec<Fp>(fam.col(0) * fp(2, 7)) : random_nonzero_vector(n, f7, rng);
      fam.col(k) = z;
      MatrixSubspace<Fp> vz = v_x_basis(z, Side::column, f7);
      inter = k == 0 ? vz : intersection(inter, vz);
    }
    CHECK(inter.codim() == n * matrix_rank(fam));
  }
  Vec<Rational> xr(3);
  xr << Rational(1), Rational(-2), Rational(1, 3);
  CHECK(v_x_basis(xr, Side::row, q).codim() == 3);
}

TEST_CASE("adapted vectors and cone inclusion") {
  Field f5 = Field::gfp(5), f7 = Field::gfp(7);
  Rng rng(51);
  CHECK(is_adapted_vector(one_map<Fp>(3, f7), vec<Fp>(f7, {0, 4, 0}), Side::column));
  CHECK_FALSE(is_adapted_vector(one_map<Fp>(3, f7), vec<Fp>(f7, {1, 1, 0}), Side::column));
  for (int t = 0; t < 10; ++t) CHECK(is_adapted_vector(sgn_map<Fp>(3, f7), random_nonzero_vector(3, f7, rng), Side::row));
  CHECK_THROWS_AS(is_adapted_vector(h_action(sgn_map<Fp>(3, f7), random_nowhere_zero_matrix<Fp>(3, f7, rng)),
                                    vec<Fp>(f7, {1, 0, 0}), Side::column),
                  Error);

  GroupMap<Fp> sgn = sgn_map<Fp>(3, f5), one = one_map<Fp>(3, f5);
  for (int t = 0; t < 3; ++t) {
    Vec<Fp> x = random_nonzero_vector(3, f5, rng);
    CHECK(subspace_in_cone(sgn, v_x_basis(x, Side::column, f5)));
    CHECK(subspace_in_cone(sgn, v_x_basis(x, Side::row, f5)));
  }
  CHECK(subspace_in_cone(one, v_x_basis(vec<Fp>(f5, {0, 1, 0}), Side::column, f5)));
  CHECK_FALSE(subspace_in_cone(one, v_x_basis(vec<Fp>(f5, {1, 1, 0}), Side::column, f5)));
  MatrixSubspace<Fp> zero{3, f5, Mat<Fp>(0, 9)};
  CHECK(subspace_in_cone(one, zero));
  CHECK_THROWS_AS(subspace_in_cone(one, v_x_basis(vec<Fp>(f5, {1, 0, 0}), Side::column, f5), 1000), Error);
  Field q = Field::rationals();
  CHECK_THROWS_AS(subspace_in_cone(one_map<Rational>(2, q), MatrixSubspace<Rational>{2, q, Mat<Rational>(0, 4)}), Error);
}

TEST_CASE("Gaussian binomial counts") {
  CHECK(gaussian_binomial(4, 2, 3) == 130);
  CHECK(gaussian_binomial(4, 3, 3) == 40);
  CHECK(gaussian_binomial(9, 6, 2) == 788035);
  CHECK(gaussian_binomial(9, 7, 2) == 43435);
  CHECK(gaussian_binomial(5, 0, 2) == 1);
  CHECK(gaussian_binomial(5, 5, 7) == 1);
}

TEST_CASE("cone scan over GF(3), n = 2 matches an independent span enumeration") {
  Field f3 = Field::gfp(3);
  // All 2-dimensional subspaces from spans of vector pairs.
  std::vector<MatrixSubspace<Fp>> all;
  std::set<std::vector<long long>> seen;
  for (int a = 1; a < 81; ++a)
    for (int b = a + 1; b < 81; ++b) {
      Mat<Fp> rows(2, 4);
      for (int t = 0, ca = a, cb = b; t < 4; ++t, ca /= 3, cb /= 3) {
        rows(0, t) = fp(ca % 3, 3);
        rows(1, t) = fp(cb % 3, 3);
      }
      MatrixSubspace<Fp> s = span_of<Fp>(2, f3, rows);
      if (s.dim() == 2 && seen.insert(key_of(s)).second) all.push_back(s);
    }
  CHECK(all.size() == 130);
  for (long long v0 : {1, 2})
    for (long long v1 : {1, 2}) {
      GroupMap<Fp> f(2, f3, {fp(v0, 3), fp(v1, 3)});
      std::set<std::vector<long long>> expected;
      for (const auto& s : all)
        if (subspace_in_cone(f, s)) expected.insert(key_of(s));
      ConeScan scan = scan_cone_subspaces(f, 2);
      CHECK(scan.scanned == 130);
      std::set<std::vector<long long>> got;
      for (const auto& s : scan.inside) got.insert(key_of(s));
      CHECK(got == expected);
      CHECK(got.size() == 8);
    }
}

TEST_CASE("minimal subspace oracle on small fields") {
  Field f2 = Field::gfp(2), f3 = Field::gfp(3);
  for (long long v0 : {1, 2})
    for (long long v1 : {1, 2}) {
      OracleReport r = minimal_subspace_oracle(GroupMap<Fp>(2, f3, {fp(v0, 3), fp(v1, 3)}));
      CHECK(r.codim_n.scanned == 130);
      CHECK(r.codim_n.inside.size() == 8);
      CHECK(r.matches_prediction);
      CHECK(r.codim_n_minus_1.scanned == 40);
      CHECK(r.codim_n_minus_1.inside.empty());
    }
  OracleReport r2 = minimal_subspace_oracle(one_map<Fp>(2, f2));
  CHECK(r2.codim_n.scanned == gaussian_binomial(4, 2, 2));
  CHECK(r2.codim_n.inside.size() == 6);
  CHECK(r2.matches_prediction);
  for (const auto& s : r2.codim_n.inside) CHECK(classify_subspace(s).has_value());
  OracleReport r1 = minimal_subspace_oracle(one_map<Fp>(1, f3));
  CHECK(r1.codim_n.inside.size() == 1);
  CHECK(r1.codim_n.inside[0].dim() == 0);
  CHECK(r1.matches_prediction);
  CHECK(r1.codim_n_minus_1.inside.empty());
  CHECK_THROWS_AS(scan_cone_subspaces(one_map<Fp>(3, f3), 3), Error);
  CHECK_THROWS_AS(scan_cone_subspaces(one_map<Fp>(2, Field::gfp(5)), 2), Error);
}

TEST_CASE("codimension-2 scan over GF(2), n = 3") {
  ConeScan s = scan_cone_subspaces(one_map<Fp>(3, Field::gfp(2)), 2);
  CHECK(s.scanned == 43435);
  CHECK(s.inside.empty());
}
