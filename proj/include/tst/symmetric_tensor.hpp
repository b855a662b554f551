#pragma once

#include "tst/polynomial.hpp"
#include "tst/rational.hpp"

#include <map>
#include <vector>

namespace tst {

// One sorted index tuple per symmetry class of entries.
using IndexTuple = std::vector<int>;

// Number of distinct permutations of the tuple: d! / prod(count_k!).
Rational tuple_multiplicity(const IndexTuple& idx);

// Symmetric order-d tensor on R^n, stored as one rational value per
// sorted index class. Zero values are not stored.
class SymmetricTensor {
 public:
  SymmetricTensor(int dimension, int order);

  int dimension() const { return dimension_; }
  int order() const { return order_; }
  const std::map<IndexTuple, Rational>& entries() const { return entries_; }

  Rational entry(IndexTuple idx) const;       // sorts its argument
  void set_entry(IndexTuple idx, Rational v); // sorts its argument

  bool operator==(const SymmetricTensor& other) const;

 private:
  int dimension_;
  int order_;
  std::map<IndexTuple, Rational> entries_;
};

// Polarization bijection between degree-d forms and symmetric tensors:
// entry(t) = coeff(monomial of t) / multiplicity(t).
SymmetricTensor tensor_from_form(const Polynomial& p, int degree);
Polynomial form_from_tensor(const SymmetricTensor& t);

// T(z, ..., z), via the multiplicity-weighted entry sum.
Rational eval_form(const SymmetricTensor& t, const RationalVector& z);

// Full multilinear contraction T(x_1, ..., x_d); each entry class is
// expanded over its distinct permutations. Exact and slot-linear.
Rational eval_multilinear(const SymmetricTensor& t, const std::vector<RationalVector>& xs);

// A spectral threshold question: is the symmetric operator norm of the
// tensor at least threshold_base * gamma(order)? gamma is kept as its
// exact square since it is irrational for odd orders.
class ThresholdInstance {
 public:
  ThresholdInstance(SymmetricTensor tensor, Rational threshold_base);

  const SymmetricTensor& tensor() const { return tensor_; }
  const Rational& threshold_base() const { return threshold_base_; }
  int order() const { return tensor_.order(); }

  Rational gamma_sq() const;      // 256 / d^d; equals 1 at d = 4
  Rational threshold_sq() const;  // threshold_base^2 * gamma_sq

 private:
  SymmetricTensor tensor_;
  Rational threshold_base_;
};

// gamma_d^2 = (16/d^2)^2 (1/d)^(d-4) = 256 / d^d for d >= 4.
Rational gamma_squared(int order);

}  // namespace tst
