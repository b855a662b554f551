#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>

namespace tst {

// Bad user-supplied data (files, CLI arguments, out-of-contract inputs).
// The CLI maps this to exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken internal invariant. Exit code 2; never raised by bad input alone.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Exact rational scalar. mpq_class keeps the canonical form we rely on
// everywhere: gcd(num, den) = 1, den > 0, zero is 0/1.
using Rational = mpq_class;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalVector = Vector<Rational>;
using RationalMatrix = Matrix<Rational>;

// Accepts "p", "-p", "p/q" with decimal digits only; canonicalizes.
Rational parse_rational(const std::string& text);

// "p" or "p/q", canonical. parse_rational(to_string(r)) == r.
std::string to_string(const Rational& r);

// Exact nonnegative square root, or nullopt if r < 0 or r is not the
// square of a rational.
std::optional<Rational> exact_sqrt(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

// Exact: every double is a binary rational.
inline Rational rational_from_double(double x) { return Rational(x); }

}  // namespace tst

namespace Eigen {

// Adapter so dense types can be instantiated on the exact scalar.
// Costs are rough; nothing here is performance-critical.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen
