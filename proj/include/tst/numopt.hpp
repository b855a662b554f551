#pragma once

#include "tst/reduce_tensor.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tst {

// Everything in this module is double precision and seeded: a fixed seed
// reproduces the restart sequence and therefore the result bit for bit.
struct AscentConfig {
  int restarts = 50;
  int max_iters = 500;
  double step_tolerance = 1e-12;
  double value_tolerance = 1e-14;
  // Power-iteration shift; negative means pick automatically (2B for
  // quartic data, twice the coefficient-norm bound for raw tensors).
  double shift = -1.0;
  std::uint64_t seed = 12345;
};

struct MaxEstimate {
  double value = 0.0;  // best |form value| found; a lower bound up to rounding
  Eigen::VectorXd argmax;
  int iterations = 0;      // iterations spent by the winning run
  int restarts_used = 0;
  bool converged = false;  // the winning run hit a tolerance, not the budget
};

struct MultilinearEstimate {
  MaxEstimate best;
  std::vector<Eigen::VectorXd> slots;  // one unit vector per tensor slot
};

// Sphere maximization of |T(x, ..., x)|. Each restart runs projected
// gradient ascent with backtracking (monotone by construction, asserted)
// and shifted symmetric power iteration, both from the same start, on
// both signs of the form; the best strictly-larger value wins, so ties
// keep the lowest restart index. Deterministic under a fixed seed.
MaxEstimate maximize_sym(const SymmetricTensor& tensor, const AscentConfig& cfg);
MaxEstimate maximize_sym(const QuarticCertificateData& data, const AscentConfig& cfg);

// Sphere-product maximization of |T(x_1, ..., x_d)| by cyclic slot
// alignment (each update is the exact slot optimum, so the value is
// nondecreasing). Used as the cross-check that the symmetric and
// multilinear norms agree.
MultilinearEstimate maximize_multilinear(const SymmetricTensor& tensor,
                                         const AscentConfig& cfg);

// Minimizes the squared residual sum of a constraint system over the
// unit sphere: projected gradient descent plus a Gauss-Newton polish
// once the residual is small. frozen_zero pins one coordinate to 0 and
// searches the sphere slice orthogonal to it. Returns the minimum in
// .value and the argmin in .argmax.
MaxEstimate residual_min(const QuadraticSystem& sys, const AscentConfig& cfg,
                         std::optional<int> frozen_zero = std::nullopt);

// Gradient of p at z: 4 B |z|^2 z - 4 sum_i (z^T Q_i z) Q_i z when the
// generating forms are present, else the expanded polynomial's exact
// partial derivatives evaluated in double.
Eigen::VectorXd grad_p(const QuarticCertificateData& data, const Eigen::VectorXd& z);

// Componentwise continued-fraction rounding to denominators <= den_cap.
// Bridges float argmins back into the exact layer; callers must verify
// the result exactly and treat failure as a plain "no", never accept the
// rounded point on faith.
RationalVector rationalize(const Eigen::VectorXd& x, unsigned long den_cap);

}  // namespace tst
