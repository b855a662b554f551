#pragma once

#include "tst/io.hpp"
#include "tst/numopt.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tst {

enum class Status { yes, no, unknown };

std::string to_string(Status s);

// Machine-checkable reason an instance has no box zero. Either
// h = g^2 + c with c > 0 (checked by exact expansion), or every
// monomial of h has even exponents and a positive coefficient with a
// positive constant term. Both force h >= c > 0 on all of R^n.
struct PositivityCertificate {
  enum class Kind { square_plus_constant, positive_combination };
  Kind kind;
  Polynomial g;  // meaningful for square_plus_constant
  Rational c;
};

bool check_certificate(const Bq4eInstance& inst, const PositivityCertificate& cert);

struct LibraryInstance {
  std::string name;
  Bq4eInstance bq4e;
  Status status;
  std::optional<BoxWitness> witness;         // required when status == yes
  std::string provenance;
  std::optional<PositivityCertificate> certificate;  // required when status == no
};

// Direct sphere-feasibility instances, small enough for the multilinear
// cross-checks.
struct HqsfLibraryInstance {
  std::string name;
  HqsfInstance instance;
  Status status;
  std::optional<RationalVector> witness;
  std::string provenance;
};

// Shipped instances: 5 exactly-certifiable YES, 5 structurally-proved NO,
// 2 undecided edge cases that only the numeric path can speak to.
const std::vector<LibraryInstance>& builtin_library();
const std::vector<HqsfLibraryInstance>& builtin_hqsf_library();

const LibraryInstance* find_instance(const std::string& name);
const HqsfLibraryInstance* find_hqsf_instance(const std::string& name);

// Exhaustive scan of the grid {-1, -1 + 2/grid, ..., 1}^n with exact
// evaluation. found is the first exact zero in lexicographic order;
// min_abs the smallest |h| seen (as a double).
struct BruteResult {
  std::optional<BoxWitness> found;
  double min_abs;
};

BruteResult brute_bq4e(const Bq4eInstance& inst, int grid, int max_n = 4);

// Spherical-grid maximum of a form in up to 3 variables, angular
// resolution pi/grid. Double precision; an independent sanity oracle,
// not a certificate.
double brute_sphere_max(const Polynomial& p, int grid);

struct VerifyResult {
  bool accepted;
  int violated_index;  // -1 when accepted
  std::string detail;
};

// Exact residual check of a witness against a constraint system (any
// mode; inexact witnesses are rejected outright since they certify
// nothing).
VerifyResult verify_witness(const QuadraticSystem& sys, const SphereWitness& w);
// certify_max against quartic data.
VerifyResult verify_witness(const QuarticCertificateData& data, const SphereWitness& w);
// Exact spectral threshold attainment.
VerifyResult verify_witness(const ThresholdInstance& inst, const SphereWitness& w);

enum class PipelineVerdict { certified_yes, numerically_above, numerically_below, unknown };

std::string to_string(PipelineVerdict v);

struct StageRecord {
  std::string stage;
  std::string input_digest;
  std::string output_digest;
  double timing_ms;
};

struct PipelineReport {
  std::string instance;
  int lift;  // tensor order of the final stage; 4 means no lift
  PipelineVerdict verdict;
  std::vector<StageRecord> stages;
  std::map<std::string, double> margins;
  std::optional<SphereWitness> exact_witness;
};

// Reports serialize with timings included; strip_timings exists so
// determinism checks can compare everything else byte for byte.
Json report_to_json(const PipelineReport& report);
Json strip_timings(Json report);

// Runs reduce -> quartic -> tensorize (-> lift) end to end. An exact
// witness short-circuits to certified_yes; otherwise the maximization
// estimate and the residual floor decide, and near-zero residual argmins
// are rounded to rationals and re-verified exactly before they may
// upgrade the verdict.
PipelineReport run_pipeline(const LibraryInstance& inst, const AscentConfig& cfg,
                            int lift = 4, unsigned long den_cap = 1000);
PipelineReport run_pipeline(const HqsfLibraryInstance& inst, const AscentConfig& cfg,
                            int lift = 4, unsigned long den_cap = 1000);

}  // namespace tst
