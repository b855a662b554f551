#pragma once

#include "tst/reduce_box.hpp"
#include "tst/symmetric_tensor.hpp"

namespace tst {

// Sphere feasibility: a family of quadratic forms on R^dimension, asked
// to vanish simultaneously at a unit vector.
struct HqsfInstance {
  int dimension;
  std::vector<QuadraticForm> forms;

  HqsfInstance(int dimension_, std::vector<QuadraticForm> forms_);

  // Homogeneous-mode systems are already sphere feasibility problems.
  static HqsfInstance from_system(const QuadraticSystem& sys);
};

// The quartic p(z) = B (|z|^2)^2 - sum_i (z^T Q_i z)^2 with
// B = 1 + sum_i |Q_i|_F^2. On the unit sphere p stays within [1, B] and
// hits B exactly at the simultaneous zeros of the forms.
struct QuarticCertificateData {
  int dimension;
  Rational C;  // sum of squared Frobenius norms
  Rational B;  // C + 1
  Polynomial p;
  // The generating forms; empty when the data came from a bare file, in
  // which case gradient evaluation falls back to the expanded polynomial.
  std::vector<QuadraticForm> forms;
};

// Expands p fully. The dimension cap guards against accidentally dense
// instances; raise it deliberately if a bigger one is really wanted.
QuarticCertificateData build_quartic(const HqsfInstance& inst, int max_dimension = 40);

// Exact test for p(z) = B (|z|^2)^2 at z != 0. Scale-invariant, and by
// construction equivalent to all generating forms vanishing at z.
bool certify_max(const QuarticCertificateData& data, const RationalVector& z);

// p as an order-4 spectral threshold instance with threshold base B.
ThresholdInstance tensorize(const QuarticCertificateData& data);

// p_d(z, t) = p(z) * t_1 ... t_(d-4) on d - 4 fresh variables. The sphere
// maximum of |p_d| is gamma_d * max |p| with gamma_d^2 = 256 / d^d, the
// optimum putting |z|^2 = 4/d and the rest equally on the t_k.
struct OrderLift {
  int order;
  Polynomial lifted;
  Rational gamma_sq;
};

OrderLift lift_order(const QuarticCertificateData& data, int order);
ThresholdInstance lift_to_threshold(const QuarticCertificateData& data, int order);

enum class ThresholdVerdict { certified_yes, numerically_above, numerically_below };

struct ThresholdComparison {
  ThresholdVerdict verdict;
  double threshold;           // threshold_base * gamma_d
  double margin;              // estimate - threshold
  double relative_tolerance;  // slack used for the numeric verdict
};

// certified_yes only from an exact witness: eval_form(T, y)^2 must equal
// threshold_sq * (|y|^2)^order exactly. Otherwise the float estimate is
// compared against the threshold in exact rationals, counting anything
// within relative_tolerance as above.
ThresholdComparison threshold_compare(const ThresholdInstance& inst, double estimate,
                                      const RationalVector* exact_witness = nullptr,
                                      double relative_tolerance = 1e-6);

}  // namespace tst
