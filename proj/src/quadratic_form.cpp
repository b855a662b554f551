#include "tst/quadratic_form.hpp"

namespace tst {

QuadraticForm::QuadraticForm(RationalMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InputError("quadratic form matrix not square");
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m_.cols(); ++j)
      if (m_(i, j) != m_(j, i)) throw InputError("quadratic form matrix not symmetric");
}

QuadraticForm QuadraticForm::zero(Eigen::Index dimension) {
  RationalMatrix m(dimension, dimension);
  m.setConstant(Rational(0));
  return QuadraticForm(std::move(m));
}

QuadraticForm QuadraticForm::diagonal(const RationalVector& d) {
  QuadraticForm q = zero(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) q.m_(i, i) = d[i];
  return q;
}

QuadraticForm QuadraticForm::rank_one(const RationalVector& ell) {
  RationalMatrix m = ell * ell.transpose();
  return QuadraticForm(std::move(m));
}

void QuadraticForm::add_product_term(Eigen::Index i, Eigen::Index j, const Rational& c) {
  if (i < 0 || j < 0 || i >= dimension() || j >= dimension())
    throw InvariantViolation("product term index out of range");
  if (i == j) {
    m_(i, i) += c;
  } else {
    Rational half = c / 2;
    m_(i, j) += half;
    m_(j, i) += half;
  }
}

bool QuadraticForm::operator==(const QuadraticForm& other) const {
  if (dimension() != other.dimension()) return false;
  for (Eigen::Index i = 0; i < dimension(); ++i)
    for (Eigen::Index j = 0; j < dimension(); ++j)
      if (m_(i, j) != other.m_(i, j)) return false;
  return true;
}

Rational quad_eval(const QuadraticForm& q, const RationalVector& z) {
  if (z.size() != q.dimension()) throw InputError("evaluation point has wrong dimension");
  return z.dot(q.matrix() * z);
}

Rational frobenius_sq(const QuadraticForm& q) {
  return q.matrix().cwiseProduct(q.matrix()).sum();
}

QuadraticForm rank_one_form(const RationalVector& ell) {
  return QuadraticForm::rank_one(ell);
}

Polynomial to_polynomial(const QuadraticForm& q) {
  const Eigen::Index n = q.dimension();
  Polynomial p(static_cast<int>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (q(i, i) != 0) p.add_term(Monomial::variable(static_cast<int>(i), 2), q(i, i));
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (q(i, j) != 0)
        p.add_term(Monomial({{static_cast<int>(i), 1}, {static_cast<int>(j), 1}}),
                   q(i, j) * 2);
    }
  }
  return p;
}

}  // namespace tst
