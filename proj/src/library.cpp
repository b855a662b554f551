#include "tst/harness.hpp"

#include <cmath>
#include <limits>

namespace tst {

std::string to_string(Status s) {
  switch (s) {
    case Status::yes: return "yes";
    case Status::no: return "no";
    case Status::unknown: return "unknown";
  }
  throw InvariantViolation("bad status");
}

std::string to_string(PipelineVerdict v) {
  switch (v) {
    case PipelineVerdict::certified_yes: return "certified_yes";
    case PipelineVerdict::numerically_above: return "numerically_above";
    case PipelineVerdict::numerically_below: return "numerically_below";
    case PipelineVerdict::unknown: return "unknown";
  }
  throw InvariantViolation("bad verdict");
}

bool check_certificate(const Bq4eInstance& inst, const PositivityCertificate& cert) {
  switch (cert.kind) {
    case PositivityCertificate::Kind::square_plus_constant: {
      if (cert.c <= 0) return false;
      if (cert.g.variable_count() != inst.n) return false;
      Polynomial rebuilt = cert.g * cert.g + Polynomial::constant(inst.n, cert.c);
      return rebuilt == inst.h;
    }
    case PositivityCertificate::Kind::positive_combination: {
      Rational constant = inst.h.coefficient(Monomial());
      if (constant <= 0) return false;
      for (const auto& [m, c] : inst.h.terms()) {
        if (m.factors().empty()) continue;
        if (c <= 0) return false;
        for (const auto& [var, exp] : m.factors()) {
          (void)var;
          if (exp % 2 != 0) return false;
        }
      }
      return true;
    }
  }
  return false;
}

namespace {

RationalVector rvec(std::initializer_list<Rational> vals) {
  RationalVector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (const auto& x : vals) v[i++] = x;
  return v;
}

LibraryInstance yes_instance(std::string name, int n, const std::string& h,
                             RationalVector xi, std::string provenance) {
  return LibraryInstance{std::move(name),
                         Bq4eInstance(n, Polynomial::parse(h, n)),
                         Status::yes,
                         BoxWitness(std::move(xi)),
                         std::move(provenance),
                         std::nullopt};
}

LibraryInstance no_instance(std::string name, int n, const std::string& h,
                            PositivityCertificate cert, std::string provenance) {
  return LibraryInstance{std::move(name),
                         Bq4eInstance(n, Polynomial::parse(h, n)),
                         Status::no,
                         std::nullopt,
                         std::move(provenance),
                         std::move(cert)};
}

std::vector<LibraryInstance> make_library() {
  std::vector<LibraryInstance> lib;

  lib.push_back(yes_instance("sq-minus-1", 1, "x1^2 - 1", rvec({1}),
                             "degree 2; vanishes at the box corner x = 1"));
  lib.push_back(yes_instance("line-sum", 2, "x1 + x2 - 1", rvec({1, 0}),
                             "degree 1 in two variables; zero at (1, 0)"));
  lib.push_back(yes_instance("corner-product", 2, "x1*x2 - 1", rvec({1, 1}),
                             "degree 2 in two variables; zero only at (1, 1) and (-1, -1)"));
  lib.push_back(yes_instance("mixed-cube", 1, "x1^3 - x1", rvec({0}),
                             "degree 3 with zeros {-1, 0, 1}; witness at the interior zero"));
  lib.push_back(yes_instance("quartic-unit", 1, "x1^4 - 1", rvec({1}),
                             "degree 4; vanishes at x = 1"));

  lib.push_back(no_instance(
      "sq-plus-1", 1, "x1^2 + 1",
      {PositivityCertificate::Kind::square_plus_constant, Polynomial::parse("x1", 1),
       Rational(1)},
      "h = x1^2 + 1 >= 1 everywhere"));
  lib.push_back(no_instance(
      "quartic-plus-one", 1, "x1^4 + 1",
      {PositivityCertificate::Kind::positive_combination, Polynomial(1), Rational(0)},
      "even powers with positive coefficients plus 1"));
  lib.push_back(no_instance(
      "shifted-square", 1, "x1^4 + 2*x1^3 + x1^2 + 1",
      {PositivityCertificate::Kind::square_plus_constant,
       Polynomial::parse("x1^2 + x1", 1), Rational(1)},
      "h = (x1^2 + x1)^2 + 1 >= 1 everywhere"));
  lib.push_back(no_instance(
      "even-mix", 1, "2*x1^4 + 3*x1^2 + 1",
      {PositivityCertificate::Kind::positive_combination, Polynomial(1), Rational(0)},
      "even powers with positive coefficients plus 1"));
  lib.push_back(no_instance(
      "pair-squares", 2, "x1^2 + x2^2 + 1",
      {PositivityCertificate::Kind::positive_combination, Polynomial(2), Rational(0)},
      "even powers with positive coefficients plus 1, two variables"));

  // Undecided on purpose: each exercises a path no certified instance can.
  lib.push_back(LibraryInstance{
      "half-root", Bq4eInstance(1, Polynomial::parse("x1^2 - 1/4", 1)), Status::unknown,
      BoxWitness(rvec({Rational(1, 2)})),
      "has the box zero x = 1/2, but its sphere lift needs sqrt(3)/2, so the exact "
      "chain cannot certify it; kept unknown to exercise the inexact-witness path",
      std::nullopt});
  lib.push_back(LibraryInstance{
      "sqrt-two", Bq4eInstance(1, Polynomial::parse("x1^2 - 2", 1)), Status::unknown,
      std::nullopt,
      "h <= -1 on the box so there is no zero, but h is negative there and the "
      "positivity certificates do not apply; only the numeric path can speak",
      std::nullopt});

  return lib;
}

QuadraticForm diag_form(std::initializer_list<Rational> d) {
  return QuadraticForm::diagonal(rvec(d));
}

std::vector<HqsfLibraryInstance> make_hqsf_library() {
  std::vector<HqsfLibraryInstance> lib;
  lib.push_back({"hqsf-hyperbolic", HqsfInstance(2, {diag_form({1, -1})}), Status::yes,
                 rvec({1, 1}), "z1^2 = z2^2 along (1, 1)"});
  lib.push_back({"hqsf-definite", HqsfInstance(1, {diag_form({1})}), Status::no,
                 std::nullopt, "a definite form vanishes only at the origin"});
  lib.push_back({"hqsf-elliptic", HqsfInstance(2, {diag_form({1, 1})}), Status::no,
                 std::nullopt, "z1^2 + z2^2 = 1 on the unit circle, never 0"});
  lib.push_back({"hqsf-pair",
                 HqsfInstance(3, {diag_form({1, -1, 0}),
                                  rank_one_form(rvec({1, -1, 0}))}),
                 Status::yes, rvec({1, 1, 0}),
                 "both forms vanish along (1, 1, 0)"});
  lib.push_back({"hqsf-cone", HqsfInstance(3, {diag_form({1, 1, -2})}), Status::yes,
                 rvec({1, 1, 1}), "the cone z1^2 + z2^2 = 2 z3^2 meets the sphere"});
  return lib;
}

}  // namespace

const std::vector<LibraryInstance>& builtin_library() {
  static const std::vector<LibraryInstance> lib = make_library();
  return lib;
}

const std::vector<HqsfLibraryInstance>& builtin_hqsf_library() {
  static const std::vector<HqsfLibraryInstance> lib = make_hqsf_library();
  return lib;
}

const LibraryInstance* find_instance(const std::string& name) {
  for (const auto& inst : builtin_library())
    if (inst.name == name) return &inst;
  return nullptr;
}

const HqsfLibraryInstance* find_hqsf_instance(const std::string& name) {
  for (const auto& inst : builtin_hqsf_library())
    if (inst.name == name) return &inst;
  return nullptr;
}

BruteResult brute_bq4e(const Bq4eInstance& inst, int grid, int max_n) {
  if (grid < 2) throw InputError("grid must be at least 2");
  if (inst.n > max_n)
    throw InputError("exhaustive scan capped at n = " + std::to_string(max_n));
  double points = std::pow(static_cast<double>(grid) + 1.0, inst.n);
  if (points > 2e7) throw InputError("grid too fine for an exhaustive scan");

  BruteResult result{std::nullopt, std::numeric_limits<double>::infinity()};
  std::vector<int> ticks(inst.n, 0);
  RationalVector xi(inst.n);
  while (true) {
    for (int i = 0; i < inst.n; ++i) {
      Rational coord(2 * ticks[i] - grid, grid);
      coord.canonicalize();
      xi[i] = coord;
    }
    Rational v = inst.h(xi);
    if (v == 0 && !result.found) result.found = BoxWitness(xi);
    double a = std::abs(to_double(v));
    if (a < result.min_abs) result.min_abs = a;

    int pos = inst.n - 1;
    while (pos >= 0 && ticks[pos] == grid) {
      ticks[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++ticks[pos];
  }
  return result;
}

double brute_sphere_max(const Polynomial& p, int grid) {
  const int n = p.variable_count();
  if (n < 1 || n > 3) throw InputError("spherical scan supports 1 to 3 variables");
  if (grid < 2) throw InputError("grid must be at least 2");

  struct Term {
    std::vector<std::pair<int, int>> factors;
    double c;
  };
  std::vector<Term> terms;
  for (const auto& [m, c] : p.terms()) terms.push_back({m.factors(), to_double(c)});
  auto eval = [&](double x, double y, double z) {
    double coords[3] = {x, y, z};
    double acc = 0.0;
    for (const auto& t : terms) {
      double prod = t.c;
      for (const auto& [v, e] : t.factors)
        for (int k = 0; k < e; ++k) prod *= coords[v];
      acc += prod;
    }
    return acc;
  };

  const double pi = 3.141592653589793238462643383279502884;
  double best = -std::numeric_limits<double>::infinity();
  if (n == 1) {
    best = std::max(eval(1, 0, 0), eval(-1, 0, 0));
  } else if (n == 2) {
    for (int k = 0; k < 2 * grid; ++k) {
      double a = pi * k / grid;
      best = std::max(best, eval(std::cos(a), std::sin(a), 0));
    }
  } else {
    for (int i = 0; i <= grid; ++i) {
      double theta = pi * i / grid;
      for (int k = 0; k < 2 * grid; ++k) {
        double phi = pi * k / grid;
        best = std::max(best, eval(std::sin(theta) * std::cos(phi),
                                   std::sin(theta) * std::sin(phi), std::cos(theta)));
      }
    }
  }
  return best;
}

VerifyResult verify_witness(const QuadraticSystem& sys, const SphereWitness& w) {
  if (!w.exact)
    return {false, -1, "witness is flagged inexact and certifies nothing"};
  if (w.y.size() != sys.dimension) return {false, -1, "witness has wrong dimension"};
  bool nonzero = false;
  for (Eigen::Index i = 0; i < w.y.size(); ++i)
    if (w.y[i] != 0) nonzero = true;
  if (!nonzero) return {false, -1, "witness is the zero vector"};
  std::vector<Rational> vals = evaluate_system(sys, w.y);
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] != 0)
      return {false, static_cast<int>(i),
              "constraint " + std::to_string(i) + " evaluates to " + to_string(vals[i])};
  return {true, -1, "all " + std::to_string(vals.size()) + " constraints vanish exactly"};
}

VerifyResult verify_witness(const QuarticCertificateData& data, const SphereWitness& w) {
  if (!w.exact)
    return {false, -1, "witness is flagged inexact and certifies nothing"};
  if (w.y.size() != data.dimension) return {false, -1, "witness has wrong dimension"};
  if (certify_max(data, w.y))
    return {true, -1, "p attains B |y|^4 exactly at the witness"};
  return {false, -1, "p falls short of B |y|^4 at the witness"};
}

VerifyResult verify_witness(const ThresholdInstance& inst, const SphereWitness& w) {
  if (!w.exact)
    return {false, -1, "witness is flagged inexact and certifies nothing"};
  if (w.y.size() != inst.tensor().dimension())
    return {false, -1, "witness has wrong dimension"};
  Rational nsq = w.y.dot(w.y);
  if (nsq == 0) return {false, -1, "witness is the zero vector"};
  Rational val = eval_form(inst.tensor(), w.y);
  Rational nsq_pow = 1;
  for (int k = 0; k < inst.order(); ++k) nsq_pow *= nsq;
  if (val * val == inst.threshold_sq() * nsq_pow)
    return {true, -1, "the form attains the threshold exactly at the witness"};
  return {false, -1, "the form does not attain the threshold at the witness"};
}

}  // namespace tst
