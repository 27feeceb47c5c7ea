#include <doctest.h>

#include "helpers.hpp"
#include "sfl/functional.hpp"

using namespace sfl;
using testing::fp;
using testing::mat;

TEST_CASE("evaluation at permutation matrices returns the map value") {
  Field f7 = Field::gfp(7), q = Field::rationals();
  for (int n = 1; n <= 5; ++n) {
    for (const GroupMap<Fp>& f : {sgn_map<Fp>(n, f7), one_map<Fp>(n, f7), sgn_nfix_map<Fp>(n, f7, fp(2, 7), fp(3, 7))})
      for (const Permutation& s : all_permutations(n)) CHECK(eval(f, perm_matrix<Fp>(s, f7)) == f(s));
  }
  CHECK(eval(sgn_map<Rational>(4, q), identity<Rational>(4, q)) == Rational(1));
}

TEST_CASE("2x2 functional equals f(id) det(A * M)") {
  Field f5 = Field::gfp(5);
  GroupMap<Fp> f(2, f5, {fp(1, 5), fp(2, 5)});
  Mat<Fp> m = mat<Fp>(f5, {{1, 2}, {3, 4}});
  CHECK(eval(f, m) == fp(1, 5));
  Mat<Fp> a = mat<Fp>(f5, {{1, -2}, {1, 1}});
  CHECK(eval(f, m) == f.at(0) * determinant(Mat<Fp>(hadamard(a, m))));
}

TEST_CASE("evaluation identities for the actions and transpose") {
  Field f3 = Field::gfp(3), f7 = Field::gfp(7);
  Rng rng(12);
  // Exhaustive over GF(3), n = 2.
  for (int trial = 0; trial < 4; ++trial) {
    GroupMap<Fp> f = random_map<Fp>(2, f3, rng);
    GroupMap<Fp> ft = transpose_map(f);
    for (int code = 0; code < 81; ++code) {
      Mat<Fp> m(2, 2);
      int c = code;
      for (int k = 0; k < 4; ++k, c /= 3) m(k % 2, k / 2) = fp(c % 3, 3);
      CHECK(eval(ft, m) == eval(f, Mat<Fp>(m.transpose())));
    }
  }
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + static_cast<int>(rng.below(2));
    GroupMap<Fp> f = random_map<Fp>(n, f7, rng);
    Mat<Fp> m = random_matrix<Fp>(n, f7, rng), a = random_nowhere_zero_matrix<Fp>(n, f7, rng);
    Permutation t = Permutation::unrank(rng.below(factorial(n)), n), t2 = Permutation::unrank(rng.below(factorial(n)), n);
    CHECK(eval(transpose_map(f), m) == eval(f, Mat<Fp>(m.transpose())));
    CHECK(eval(h_action(f, a), m) == eval(f, hadamard(a, m)));
    Mat<Fp> moved = perm_matrix<Fp>(t, f7) * m * perm_matrix<Fp>(t2.inverse(), f7);
    CHECK(eval(ph_action(f, a, t, t2), m) == eval(f, hadamard(a, moved)));
    CHECK(polynomial_of(f).evaluate(m) == eval(f, m));
  }
}

TEST_CASE("functionals are linear in each column") {
  Field f7 = Field::gfp(7);
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    GroupMap<Fp> f = random_map<Fp>(n, f7, rng);
    Mat<Fp> m = random_matrix<Fp>(n, f7, rng);
    int j = static_cast<int>(rng.below(n));
    Vec<Fp> u = random_matrix<Fp>(n, f7, rng).col(0), v = random_matrix<Fp>(n, f7, rng).col(0);
    Fp lam = random_element<Fp>(f7, rng, false), mu = random_element<Fp>(f7, rng, false);
    Mat<Fp> mu_m = m, mv_m = m, mix = m;
    mu_m.col(j) = u;
    mv_m.col(j) = v;
    mix.col(j) = u * lam + v * mu;
    CHECK(eval(f, mix) == lam * eval(f, mu_m) + mu * eval(f, mv_m));
  }
}

TEST_CASE("polynomial expansion of a map") {
  Field f7 = Field::gfp(7);
  MultPoly<Fp> p1 = polynomial_of(GroupMap<Fp>(1, f7, {fp(3, 7)}));
  REQUIRE(p1.terms.size() == 1);
  CHECK(p1.terms.begin()->first == std::vector<std::uint8_t>{1});
  CHECK(p1.terms.begin()->second == fp(3, 7));
  MultPoly<Fp> det2 = polynomial_of(sgn_map<Fp>(2, f7));
  // Variables in column-major order: x11, x21, x12, x22.
  REQUIRE(det2.terms.size() == 2);
  CHECK(det2.terms.at({1, 0, 0, 1}) == fp(1, 7));
  CHECK(det2.terms.at({0, 1, 1, 0}) == fp(-1, 7));
  MultPoly<Fp> per3 = polynomial_of(one_map<Fp>(3, f7));
  CHECK(per3.terms.size() == 6);
  for (const auto& [exp, c] : per3.terms) CHECK(c == fp(1, 7));
}

TEST_CASE("expansion of composed functionals") {
  Field f7 = Field::gfp(7), q = Field::rationals();
  Rng rng(14);
  for (int n = 1; n <= 4; ++n) {
    GroupMap<Fp> g = random_map<Fp>(n, f7, rng);
    CHECK(expand_composed(g, identity_transformation<Fp>(n, f7)) == polynomial_of(g));
    Mat<Fp> r = random_nowhere_zero_matrix<Fp>(n, f7, rng);
    CHECK(expand_composed(g, hadamard_transformation<Fp>(r, f7)) == polynomial_of(h_action(g, r)));
  }
  MultPoly<Rational> scaled2 = expand_composed(sgn_map<Rational>(2, q), scalar_transformation<Rational>(2, Rational(2), q));
  CHECK(proportional(scaled2, polynomial_of(sgn_map<Rational>(2, q))) == Rational(4));
  // Composite transformations expand to the composed functional.
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng.below(2));
    GroupMap<Fp> g = random_map<Fp>(n, f7, rng);
    TransformationMatrix<Fp> u1{n, f7, zeros<Fp>(n * n, n * n, f7)}, u2 = u1;
    for (int i = 0; i < n * n; ++i)
      for (int j = 0; j < n * n; ++j) {
        u1.entries(i, j) = random_element<Fp>(f7, rng, false);
        u2.entries(i, j) = random_element<Fp>(f7, rng, false);
      }
    MultPoly<Fp> p = expand_composed(g, composed(u1, u2));
    for (int k = 0; k < 5; ++k) {
      Mat<Fp> m = random_matrix<Fp>(n, f7, rng);
      CHECK(p.evaluate(m) == eval(g, apply(u1, apply(u2, m))));
    }
  }
  CHECK_THROWS_AS(expand_composed(one_map<Fp>(5, f7), identity_transformation<Fp>(5, f7)), Error);
}

TEST_CASE("proportionality of polynomials") {
  Field f7 = Field::gfp(7);
  MultPoly<Fp> det3 = polynomial_of(sgn_map<Fp>(3, f7)), per3 = polynomial_of(one_map<Fp>(3, f7));
  CHECK(proportional(polynomial_of(scaled(sgn_map<Fp>(3, f7), fp(2, 7))), det3) == fp(2, 7));
  CHECK_FALSE(proportional(det3, per3).has_value());
  CHECK(proportional(det3, det3) == fp(1, 7));
  CHECK_THROWS_AS(proportional(det3, MultPoly<Fp>{3, f7, {}}), Error);
}

TEST_CASE("randomized identity testing") {
  Field f11 = Field::gfp(11), f13 = Field::gfp(13), f7 = Field::gfp(7);
  GroupMap<Fp> det3 = sgn_map<Fp>(3, f13);
  CHECK(probabilistic_equal(det3, identity_transformation<Fp>(3, f13), det3, 5, 1).equal);
  // 2^3 = 8 is not 1 mod 13, so M -> 2M changes the determinant.
  auto v = probabilistic_equal(det3, scalar_transformation<Fp>(3, fp(2, 13), f13), det3, 10, 1);
  CHECK_FALSE(v.equal);
  REQUIRE(v.witness.has_value());
  CHECK_FALSE(eval(det3, Mat<Fp>(*v.witness * fp(2, 13))) == eval(det3, *v.witness));
  CHECK_THROWS_AS(probabilistic_equal(sgn_map<Fp>(3, f11), identity_transformation<Fp>(3, f11), sgn_map<Fp>(3, f11), 3, 1),
                  Error);
  // Normalized rank-1 Hadamard factor preserves the permanent.
  Vec<Fp> x = testing::vec<Fp>(f13, {1, 2, 3}), y = testing::vec<Fp>(f13, {1, 1, 1});
  y(2) = (x(0) * x(1) * x(2)).inverse();
  GroupMap<Fp> per = one_map<Fp>(3, f13);
  CHECK(probabilistic_equal(per, hadamard_transformation<Fp>(outer(x, y), f13), per, 10, 7).equal);
  CHECK_THROWS_AS(probabilistic_equal(sgn_map<Fp>(3, f7), identity_transformation<Fp>(3, f7), sgn_map<Fp>(3, f7), 3, 1),
                  Error);
}
