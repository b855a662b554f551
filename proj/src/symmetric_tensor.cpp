#include "tst/symmetric_tensor.hpp"

#include <algorithm>

namespace tst {

Rational tuple_multiplicity(const IndexTuple& idx) {
  mpz_class numer;
  mpz_fac_ui(numer.get_mpz_t(), idx.size());
  mpz_class denom = 1;
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j < idx.size() && idx[j] == idx[i]) ++j;
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), j - i);
    denom *= f;
    i = j;
  }
  Rational m(numer, denom);
  m.canonicalize();
  return m;
}

SymmetricTensor::SymmetricTensor(int dimension, int order)
    : dimension_(dimension), order_(order) {
  if (dimension < 1) throw InputError("tensor dimension must be positive");
  if (order < 1) throw InputError("tensor order must be positive");
}

namespace {

void check_tuple(const IndexTuple& idx, int dimension, int order) {
  if (static_cast<int>(idx.size()) != order)
    throw InputError("index tuple length does not match tensor order");
  for (int k : idx)
    if (k < 0 || k >= dimension) throw InputError("tensor index out of range");
}

}  // namespace

Rational SymmetricTensor::entry(IndexTuple idx) const {
  std::sort(idx.begin(), idx.end());
  check_tuple(idx, dimension_, order_);
  auto it = entries_.find(idx);
  return it == entries_.end() ? Rational(0) : it->second;
}

void SymmetricTensor::set_entry(IndexTuple idx, Rational v) {
  std::sort(idx.begin(), idx.end());
  check_tuple(idx, dimension_, order_);
  if (v == 0)
    entries_.erase(idx);
  else
    entries_[std::move(idx)] = std::move(v);
}

bool SymmetricTensor::operator==(const SymmetricTensor& other) const {
  return dimension_ == other.dimension_ && order_ == other.order_ &&
         entries_ == other.entries_;
}

SymmetricTensor tensor_from_form(const Polynomial& p, int degree) {
  if (!p.is_homogeneous(degree))
    throw InputError("form is not homogeneous of the requested degree");
  if (p.variable_count() < 1)
    throw InputError("form needs at least one variable");
  SymmetricTensor t(p.variable_count(), degree);
  for (const auto& [m, c] : p.terms()) {
    IndexTuple idx;
    for (const auto& [var, exp] : m.factors())
      for (int k = 0; k < exp; ++k) idx.push_back(var);
    t.set_entry(idx, c / tuple_multiplicity(idx));
  }
  return t;
}

Polynomial form_from_tensor(const SymmetricTensor& t) {
  Polynomial p(t.dimension());
  for (const auto& [idx, v] : t.entries()) {
    std::vector<std::pair<int, int>> factors;
    std::size_t i = 0;
    while (i < idx.size()) {
      std::size_t j = i;
      while (j < idx.size() && idx[j] == idx[i]) ++j;
      factors.emplace_back(idx[i], static_cast<int>(j - i));
      i = j;
    }
    p.add_term(Monomial(std::move(factors)), v * tuple_multiplicity(idx));
  }
  return p;
}

Rational eval_form(const SymmetricTensor& t, const RationalVector& z) {
  if (z.size() != t.dimension()) throw InputError("evaluation point has wrong dimension");
  Rational acc = 0;
  for (const auto& [idx, v] : t.entries()) {
    Rational prod = v * tuple_multiplicity(idx);
    for (int k : idx) prod *= z[k];
    acc += prod;
  }
  return acc;
}

Rational eval_multilinear(const SymmetricTensor& t, const std::vector<RationalVector>& xs) {
  if (static_cast<int>(xs.size()) != t.order())
    throw InputError("slot count does not match tensor order");
  for (const auto& x : xs)
    if (x.size() != t.dimension()) throw InputError("slot vector has wrong dimension");
  Rational acc = 0;
  for (const auto& [idx, v] : t.entries()) {
    IndexTuple perm = idx;  // sorted, so next_permutation walks every class member
    Rational sum = 0;
    do {
      Rational prod = 1;
      for (std::size_t slot = 0; slot < perm.size(); ++slot) prod *= xs[slot][perm[slot]];
      sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc += v * sum;
  }
  return acc;
}

ThresholdInstance::ThresholdInstance(SymmetricTensor tensor, Rational threshold_base)
    : tensor_(std::move(tensor)), threshold_base_(std::move(threshold_base)) {
  if (tensor_.order() < 4) throw InputError("threshold instances need order >= 4");
  if (threshold_base_ < 1) throw InputError("threshold base must be >= 1");
}

Rational gamma_squared(int order) {
  if (order < 4) throw InputError("order must be >= 4");
  mpz_class dd;
  mpz_ui_pow_ui(dd.get_mpz_t(), order, order);
  Rational g(mpz_class(256), dd);
  g.canonicalize();
  return g;
}

Rational ThresholdInstance::gamma_sq() const { return gamma_squared(order()); }

Rational ThresholdInstance::threshold_sq() const {
  return threshold_base_ * threshold_base_ * gamma_sq();
}

}  // namespace tst
