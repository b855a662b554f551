#pragma once

#include "tst/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tst {

// Sorted (variable index, exponent) pairs; exponents strictly positive.
// The empty monomial is the constant 1.
class Monomial {
 public:
  Monomial() = default;
  // Accepts unsorted input, merges duplicates, drops zero exponents.
  explicit Monomial(std::vector<std::pair<int, int>> factors);

  static Monomial variable(int index, int exponent = 1);

  const std::vector<std::pair<int, int>>& factors() const { return factors_; }
  int degree() const;
  int max_variable() const;  // -1 for the constant monomial
  int exponent_of(int index) const;

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial& other) const { return factors_ == other.factors_; }
  bool operator<(const Monomial& other) const { return factors_ < other.factors_; }

 private:
  std::vector<std::pair<int, int>> factors_;
};

// Sparse exact polynomial over variables x_0..x_{n-1}. Terms are kept
// canonical: no zero coefficients, keys sorted by the map.
class Polynomial {
 public:
  explicit Polynomial(int variable_count = 0);

  static Polynomial constant(int variable_count, const Rational& c);
  static Polynomial variable(int variable_count, int index);

  int variable_count() const { return variable_count_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Rational& c) const;
  bool operator==(const Polynomial& other) const;

  // The zero polynomial has degree 0 here; nothing downstream needs -inf.
  int total_degree() const;
  bool is_homogeneous(int degree) const;

  Polynomial partial_derivative(int index) const;

  // Exact evaluation; z.size() must equal variable_count().
  Rational operator()(const RationalVector& z) const;

  // "x<k>" is 1-based in the text form: x1*x2^3 names indices 0 and 1.
  std::string to_string() const;
  static Polynomial parse(const std::string& text, int variable_count);

 private:
  int variable_count_;
  std::map<Monomial, Rational> terms_;
};

inline Rational poly_eval(const Polynomial& p, const RationalVector& z) { return p(z); }

}  // namespace tst
