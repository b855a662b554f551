#include "tst/numopt.hpp"

#include "tst/harness.hpp"

#include "test_util.hpp"

#include <cmath>
#include <doctest.h>

using namespace tst;

namespace {
QuarticCertificateData hyperbolic_quartic() {
  RationalVector d(2);
  d << 1, -1;
  return build_quartic(HqsfInstance(2, {QuadraticForm::diagonal(d)}));
}

AscentConfig quick() {
  AscentConfig cfg;
  cfg.restarts = 20;
  return cfg;
}
}  // namespace

TEST_CASE("sphere maximum of the hyperbolic quartic is its threshold base") {
  QuarticCertificateData data = hyperbolic_quartic();
  MaxEstimate est = maximize_sym(data, quick());
  CHECK(est.value == doctest::Approx(3.0).epsilon(1e-9));
  // Optimum at +-(1,1)/sqrt(2).
  CHECK(std::abs(est.argmax[0]) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK(std::abs(est.argmax[1]) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("sphere maximum of z^4 is 1, short of its threshold 2") {
  RationalVector d(1);
  d << 1;
  QuarticCertificateData data = build_quartic(HqsfInstance(1, {QuadraticForm::diagonal(d)}));
  MaxEstimate est = maximize_sym(data, quick());
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tensor path and quartic path agree") {
  QuarticCertificateData data = hyperbolic_quartic();
  SymmetricTensor t = tensorize(data).tensor();
  MaxEstimate direct = maximize_sym(t, quick());
  MaxEstimate closed = maximize_sym(data, quick());
  CHECK(std::abs(direct.value - closed.value) < 1e-8);
}

TEST_CASE("multilinear and symmetric maxima agree on symmetric tensors") {
  QuarticCertificateData data = hyperbolic_quartic();
  SymmetricTensor t = tensorize(data).tensor();
  MultilinearEstimate ml = maximize_multilinear(t, quick());
  CHECK(std::abs(ml.best.value - 3.0) < 1e-8);
  CHECK(ml.slots.size() == 4);
}

TEST_CASE("same seed, same bits") {
  QuarticCertificateData data = hyperbolic_quartic();
  AscentConfig cfg = quick();
  MaxEstimate a = maximize_sym(data, cfg);
  MaxEstimate b = maximize_sym(data, cfg);
  CHECK(a.value == b.value);
  REQUIRE(a.argmax.size() == b.argmax.size());
  for (Eigen::Index i = 0; i < a.argmax.size(); ++i) CHECK(a.argmax[i] == b.argmax[i]);

  cfg.seed = 999;
  MaxEstimate c = maximize_sym(data, cfg);
  CHECK(std::abs(c.value - a.value) < 1e-9);  // same max, found from elsewhere
}

TEST_CASE("residual minimization finds the feasible cone and avoids fake zeros") {
  Bq4eInstance feasible(1, Polynomial::parse("x1^2 - 1", 1));
  QuadraticSystem sys_yes = compile_homogeneous(feasible);
  AscentConfig cfg = quick();
  cfg.restarts = 40;
  MaxEstimate down = residual_min(sys_yes, cfg);
  CHECK(down.value < 1e-12);

  Bq4eInstance infeasible(1, Polynomial::parse("x1^2 + 1", 1));
  QuadraticSystem sys_no = compile_homogeneous(infeasible);
  MaxEstimate floor = residual_min(sys_no, cfg);
  CHECK(floor.value > 1e-8);
}

TEST_CASE("freezing x0 makes every system infeasible with a real gap") {
  Bq4eInstance feasible(1, Polynomial::parse("x1^2 - 1", 1));
  QuadraticSystem sys = compile_homogeneous(feasible);
  AscentConfig cfg = quick();
  MaxEstimate slice = residual_min(sys, cfg, 0);
  CHECK(slice.value > 1e-6);
  CHECK(std::abs(slice.argmax[0]) == 0.0);
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 5; ++rep) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<QuadraticForm> forms;
    int k = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < k; ++i) forms.push_back(tst_test::random_form(rng, n));
    QuarticCertificateData data = build_quartic(HqsfInstance(n, forms));

    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd z(n);
      for (int i = 0; i < n; ++i) z[i] = dist(rng);
      Eigen::VectorXd g = grad_p(data, z);
      const double h = 1e-5;
      double scale = std::max(1.0, g.norm());
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd zp = z, zm = z;
        zp[i] += h;
        zm[i] -= h;
        RationalVector rp(n), rm(n);
        for (int j = 0; j < n; ++j) {
          rp[j] = rational_from_double(zp[j]);
          rm[j] = rational_from_double(zm[j]);
        }
        double fd = (to_double(data.p(rp)) - to_double(data.p(rm))) / (2 * h);
        CHECK(std::abs(g[i] - fd) / scale < 1e-5);
      }
    }
  }
}

TEST_CASE("gradient works without stored forms too") {
  QuarticCertificateData data = hyperbolic_quartic();
  QuarticCertificateData bare = data;
  bare.forms.clear();
  Eigen::VectorXd z(2);
  z << 0.3, -0.7;
  Eigen::VectorXd a = grad_p(data, z);
  Eigen::VectorXd b = grad_p(bare, z);
  CHECK((a - b).norm() < 1e-9);

  // Frozen point: p = z^4 on one variable has gradient 4 z^3.
  RationalVector d1(1);
  d1 << 1;
  QuarticCertificateData defin = build_quartic(HqsfInstance(1, {QuadraticForm::diagonal(d1)}));
  Eigen::VectorXd one(1);
  one << 1.0;
  CHECK(grad_p(defin, one)[0] == doctest::Approx(4.0));
}

TEST_CASE("rationalize rounds to small-denominator convergents") {
  Eigen::VectorXd x(3);
  x << 0.5, 1.0 / 3.0, std::sqrt(2.0);
  RationalVector r = rationalize(x, 100);
  CHECK(r[0] == Rational(1, 2));
  CHECK(r[1] == Rational(1, 3));
  CHECK(r[2] == Rational(99, 70));

  Eigen::VectorXd z(1);
  z << 0.0;
  CHECK(rationalize(z, 10)[0] == 0);
}
