#include "tst/symmetric_tensor.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace tst;

TEST_CASE("tuple multiplicities count distinct permutations") {
  CHECK(tuple_multiplicity({0, 0, 0, 0}) == 1);
  CHECK(tuple_multiplicity({0, 0, 1, 1}) == 6);
  CHECK(tuple_multiplicity({0, 1, 2, 3}) == 24);
  CHECK(tuple_multiplicity({0, 0, 0, 1}) == 4);
  CHECK(tuple_multiplicity({2, 0, 1}) == 6);  // sorted internally
}

TEST_CASE("polarization of the hyperbolic quartic") {
  // p = 2 z1^4 + 8 z1^2 z2^2 + 2 z2^4
  Polynomial p = Polynomial::parse("2*x1^4 + 8*x1^2*x2^2 + 2*x2^4", 2);
  SymmetricTensor t = tensor_from_form(p, 4);
  CHECK(t.entry({0, 0, 0, 0}) == 2);
  CHECK(t.entry({0, 0, 1, 1}) == Rational(4, 3));
  CHECK(t.entry({1, 1, 1, 1}) == 2);
  CHECK(t.entries().size() == 3);
  CHECK(form_from_tensor(t) == p);
}

TEST_CASE("a plain monomial lands on its symmetry class") {
  // z1^3 z2 has multiplicity 4, so the entry is 1/4.
  Polynomial p = Polynomial::parse("x1^3*x2", 2);
  SymmetricTensor t = tensor_from_form(p, 4);
  CHECK(t.entry({0, 0, 0, 1}) == Rational(1, 4));
  CHECK(t.entry({0, 0, 0, 0}) == 0);
}

TEST_CASE("tensor evaluation matches the polynomial exactly") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 1 + static_cast<int>(rng() % 4);
    int d = 4 + static_cast<int>(rng() % 3);
    Polynomial p = tst_test::random_homogeneous(rng, n, d);
    SymmetricTensor t = tensor_from_form(p, d);
    RationalVector z = tst_test::random_vector(rng, n);
    CHECK(eval_form(t, z) == p(z));
    CHECK(form_from_tensor(t) == p);
  }
}

TEST_CASE("multilinear contraction collapses to eval_form on equal slots") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 1 + static_cast<int>(rng() % 3);
    Polynomial p = tst_test::random_homogeneous(rng, n, 4);
    SymmetricTensor t = tensor_from_form(p, 4);
    RationalVector z = tst_test::random_vector(rng, n);
    std::vector<RationalVector> xs(4, z);
    CHECK(eval_multilinear(t, xs) == eval_form(t, z));
  }
}

TEST_CASE("multilinear contraction is linear in each slot") {
  std::mt19937_64 rng(47);
  Polynomial p = tst_test::random_homogeneous(rng, 3, 4);
  SymmetricTensor t = tensor_from_form(p, 4);
  std::vector<RationalVector> xs;
  for (int k = 0; k < 4; ++k) xs.push_back(tst_test::random_vector(rng, 3));
  RationalVector a = tst_test::random_vector(rng, 3);
  Rational lambda(3, 7);

  std::vector<RationalVector> shifted = xs;
  shifted[2] = xs[2] + a * lambda;
  std::vector<RationalVector> only_a = xs;
  only_a[2] = a;
  CHECK(eval_multilinear(t, shifted) ==
        eval_multilinear(t, xs) + lambda * eval_multilinear(t, only_a));
}

TEST_CASE("gamma squared values") {
  CHECK(gamma_squared(4) == 1);
  CHECK(gamma_squared(5) == Rational(256, 3125));
  CHECK(gamma_squared(6) == Rational(4, 729));
  CHECK_THROWS_AS(gamma_squared(3), InputError);
}

TEST_CASE("threshold instances validate their pieces") {
  Polynomial p = Polynomial::parse("x1^4", 1);
  SymmetricTensor t = tensor_from_form(p, 4);
  ThresholdInstance inst(t, Rational(2));
  CHECK(inst.gamma_sq() == 1);
  CHECK(inst.threshold_sq() == 4);
  CHECK_THROWS_AS(ThresholdInstance(t, Rational(1, 2)), InputError);
}
