#include "tst/polynomial.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace tst;

TEST_CASE("parse and to_string agree on a canonical form") {
  Polynomial p = Polynomial::parse("x1^2 - 1", 1);
  CHECK(p.coefficient(Monomial({{0, 2}})) == 1);
  CHECK(p.coefficient(Monomial()) == -1);
  CHECK(Polynomial::parse(p.to_string(), 1) == p);

  Polynomial q = Polynomial::parse("2*x1^4 + 3*x1^2 + 1", 1);
  CHECK(q.total_degree() == 4);
  CHECK(Polynomial::parse(q.to_string(), 1) == q);

  Polynomial r = Polynomial::parse("x1*x2 - 1/3", 2);
  CHECK(r.coefficient(Monomial({{0, 1}, {1, 1}})) == 1);
  CHECK(r.coefficient(Monomial()) == Rational(-1, 3));

  CHECK_THROWS_AS(Polynomial::parse("x0", 1), InputError);    // display is 1-based
  CHECK_THROWS_AS(Polynomial::parse("x3", 2), InputError);    // out of range
  CHECK_THROWS_AS(Polynomial::parse("x1^", 1), InputError);
  CHECK_THROWS_AS(Polynomial::parse("", 1), InputError);
  CHECK_THROWS_AS(Polynomial::parse("x1 +", 1), InputError);
}

TEST_CASE("ring operations match evaluation") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 1 + static_cast<int>(rng() % 3);
    Polynomial p = tst_test::random_polynomial(rng, n, 3);
    Polynomial q = tst_test::random_polynomial(rng, n, 3);
    RationalVector z = tst_test::random_vector(rng, n);
    CHECK((p + q)(z) == p(z) + q(z));
    CHECK((p - q)(z) == p(z) - q(z));
    CHECK((p * q)(z) == p(z) * q(z));
  }
}

TEST_CASE("squares expand correctly") {
  Polynomial x = Polynomial::variable(2, 0);
  Polynomial y = Polynomial::variable(2, 1);
  Polynomial lhs = (x + y) * (x + y);
  Polynomial rhs = x * x + (x * y) * Rational(2) + y * y;
  CHECK(lhs == rhs);
}

TEST_CASE("degree bookkeeping") {
  CHECK(Polynomial(2).total_degree() == 0);
  CHECK(Polynomial(2).is_homogeneous(0));
  CHECK(Polynomial::parse("x1^3*x2 + x2^4", 2).is_homogeneous(4));
  CHECK(!Polynomial::parse("x1^3*x2 + x2^3", 2).is_homogeneous(4));
}

TEST_CASE("partial derivatives satisfy the Euler identity on homogeneous input") {
  Polynomial p = Polynomial::parse("x1^3*x2", 2);
  Polynomial dp = p.partial_derivative(0);
  CHECK(dp == Polynomial::parse("3*x1^2*x2", 2));

  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 1 + static_cast<int>(rng() % 3);
    int d = 4 + static_cast<int>(rng() % 3);
    Polynomial h = tst_test::random_homogeneous(rng, n, d);
    Polynomial euler(n);
    for (int i = 0; i < n; ++i)
      euler = euler + Polynomial::variable(n, i) * h.partial_derivative(i);
    CHECK(euler == h * Rational(d));
  }
}

TEST_CASE("evaluation is exact") {
  Polynomial p = Polynomial::parse("x1^4 - 1", 1);
  RationalVector z(1);
  z << Rational(1, 2);
  CHECK(p(z) == Rational(-15, 16));
}
