#include "tst/reduce_tensor.hpp"

#include <cmath>

namespace tst {

HqsfInstance::HqsfInstance(int dimension_, std::vector<QuadraticForm> forms_)
    : dimension(dimension_), forms(std::move(forms_)) {
  if (dimension < 1) throw InputError("instance dimension must be positive");
  for (const auto& q : forms)
    if (q.dimension() != dimension) throw InputError("form dimension mismatch");
}

HqsfInstance HqsfInstance::from_system(const QuadraticSystem& sys) {
  if (sys.mode != SystemMode::homogeneous)
    throw InputError("only homogeneous systems are sphere feasibility instances");
  return HqsfInstance(sys.dimension, sys.forms);
}

QuarticCertificateData build_quartic(const HqsfInstance& inst, int max_dimension) {
  if (inst.dimension > max_dimension)
    throw InputError("dimension " + std::to_string(inst.dimension) +
                     " exceeds the expansion cap " + std::to_string(max_dimension));
  Rational c = 0;
  for (const auto& q : inst.forms) c += frobenius_sq(q);
  Rational b = c + 1;

  Polynomial norm_sq(inst.dimension);
  for (int j = 0; j < inst.dimension; ++j)
    norm_sq.add_term(Monomial::variable(j, 2), 1);

  Polynomial p = (norm_sq * norm_sq) * b;
  for (const auto& q : inst.forms) {
    Polynomial qp = to_polynomial(q);
    p = p - qp * qp;
  }
  return QuarticCertificateData{inst.dimension, std::move(c), std::move(b), std::move(p),
                                inst.forms};
}

bool certify_max(const QuarticCertificateData& data, const RationalVector& z) {
  if (z.size() != data.dimension) throw InputError("point has wrong dimension");
  bool nonzero = false;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    if (z[i] != 0) {
      nonzero = true;
      break;
    }
  if (!nonzero) throw InputError("certification point must be nonzero");
  Rational nsq = z.dot(z);
  return data.p(z) == data.B * nsq * nsq;
}

ThresholdInstance tensorize(const QuarticCertificateData& data) {
  return ThresholdInstance(tensor_from_form(data.p, 4), data.B);
}

OrderLift lift_order(const QuarticCertificateData& data, int order) {
  if (order < 4) throw InputError("lift order must be >= 4");
  const int extra = order - 4;
  Polynomial lifted(data.dimension + extra);
  for (const auto& [m, c] : data.p.terms()) {
    std::vector<std::pair<int, int>> factors = m.factors();
    for (int k = 0; k < extra; ++k) factors.emplace_back(data.dimension + k, 1);
    lifted.add_term(Monomial(std::move(factors)), c);
  }
  return OrderLift{order, std::move(lifted), gamma_squared(order)};
}

ThresholdInstance lift_to_threshold(const QuarticCertificateData& data, int order) {
  OrderLift lift = lift_order(data, order);
  return ThresholdInstance(tensor_from_form(lift.lifted, order), data.B);
}

ThresholdComparison threshold_compare(const ThresholdInstance& inst, double estimate,
                                      const RationalVector* exact_witness,
                                      double relative_tolerance) {
  const double threshold =
      to_double(inst.threshold_base()) * std::sqrt(to_double(inst.gamma_sq()));
  ThresholdComparison out{ThresholdVerdict::numerically_below, threshold,
                          estimate - threshold, relative_tolerance};

  if (exact_witness != nullptr) {
    const RationalVector& y = *exact_witness;
    if (y.size() == inst.tensor().dimension()) {
      Rational nsq = y.dot(y);
      if (nsq != 0) {
        Rational val = eval_form(inst.tensor(), y);
        Rational nsq_pow = 1;
        for (int k = 0; k < inst.order(); ++k) nsq_pow *= nsq;
        if (val * val == inst.threshold_sq() * nsq_pow) {
          out.verdict = ThresholdVerdict::certified_yes;
          return out;
        }
      }
    }
  }

  if (estimate > 0) {
    Rational est = rational_from_double(estimate);
    Rational slack = 1 - rational_from_double(relative_tolerance);
    if (est * est >= inst.threshold_sq() * slack * slack)
      out.verdict = ThresholdVerdict::numerically_above;
  }
  return out;
}

}  // namespace tst
