#pragma once

#include "tst/polynomial.hpp"
#include "tst/rational.hpp"

namespace tst {

// Symmetric rational matrix Q, used as the form z^T Q z. Symmetry is
// checked once at construction and preserved by every factory below.
class QuadraticForm {
 public:
  explicit QuadraticForm(RationalMatrix m);

  static QuadraticForm zero(Eigen::Index dimension);
  static QuadraticForm diagonal(const RationalVector& d);
  // ell ell^T, so quad_eval gives (ell . z)^2.
  static QuadraticForm rank_one(const RationalVector& ell);

  Eigen::Index dimension() const { return m_.rows(); }
  const RationalMatrix& matrix() const { return m_; }
  const Rational& operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  // Adds c * z_i z_j, keeping symmetry: off-diagonal entries get c/2 each.
  void add_product_term(Eigen::Index i, Eigen::Index j, const Rational& c);

  bool operator==(const QuadraticForm& other) const;

 private:
  RationalMatrix m_;
};

Rational quad_eval(const QuadraticForm& q, const RationalVector& z);
Rational frobenius_sq(const QuadraticForm& q);
QuadraticForm rank_one_form(const RationalVector& ell);

// The form as a polynomial in its dimension-many variables.
Polynomial to_polynomial(const QuadraticForm& q);

}  // namespace tst
