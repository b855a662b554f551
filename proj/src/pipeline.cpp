#include "tst/harness.hpp"

#include <chrono>
#include <cmath>

namespace tst {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

PipelineVerdict from_threshold(ThresholdVerdict v) {
  switch (v) {
    case ThresholdVerdict::certified_yes: return PipelineVerdict::certified_yes;
    case ThresholdVerdict::numerically_above: return PipelineVerdict::numerically_above;
    case ThresholdVerdict::numerically_below: return PipelineVerdict::numerically_below;
  }
  throw InvariantViolation("bad threshold verdict");
}

// Shared tail: system -> quartic -> threshold (-> numeric fallback).
// candidate carries an exact or floating sphere witness when one exists.
void finish_pipeline(PipelineReport& rep, const QuadraticSystem& sys,
                     const Json& sys_json, const std::optional<SphereWitness>& candidate,
                     const AscentConfig& cfg, int lift, unsigned long den_cap) {
  auto t0 = Clock::now();
  HqsfInstance hq = HqsfInstance::from_system(sys);
  QuarticCertificateData data = build_quartic(hq);
  Json quartic_json = quartic_to_json(data);
  rep.stages.push_back(
      {"reduce-tensor", digest(sys_json), digest(quartic_json), ms_since(t0)});

  t0 = Clock::now();
  ThresholdInstance thr = lift == 4 ? tensorize(data) : lift_to_threshold(data, lift);
  Json thr_json = threshold_to_json(thr);
  rep.stages.push_back({lift == 4 ? "tensorize" : "lift-order", digest(quartic_json),
                        digest(thr_json), ms_since(t0)});

  if (candidate && candidate->exact) {
    if (!certify_max(data, candidate->y))
      throw InvariantViolation("exact witness failed the quartic max check");
    rep.verdict = PipelineVerdict::certified_yes;
    rep.exact_witness = candidate;
    rep.margins["threshold"] =
        to_double(thr.threshold_base()) * std::sqrt(to_double(thr.gamma_sq()));
    return;
  }
  if (candidate) {
    double rs = 0.0;
    for (const Rational& r : evaluate_system(sys, candidate->y)) {
      double v = to_double(r);
      rs += v * v;
    }
    rep.margins["witness_residual"] = rs;
  }

  t0 = Clock::now();
  MaxEstimate est =
      lift == 4 ? maximize_sym(data, cfg) : maximize_sym(thr.tensor(), cfg);
  rep.stages.push_back(
      {"maximize", digest(thr_json), digest(estimate_to_json(est)), ms_since(t0)});
  rep.margins["estimate"] = est.value;

  t0 = Clock::now();
  MaxEstimate floor = residual_min(sys, cfg);
  rep.stages.push_back(
      {"residual", digest(sys_json), digest(estimate_to_json(floor)), ms_since(t0)});
  rep.margins["residual_floor"] = floor.value;

  if (floor.value < 1e-10) {
    RationalVector rounded = rationalize(floor.argmax, den_cap);
    bool nonzero = false;
    for (Eigen::Index i = 0; i < rounded.size(); ++i)
      if (rounded[i] != 0) nonzero = true;
    if (nonzero) {
      bool all_zero = true;
      for (const Rational& r : evaluate_system(sys, rounded))
        if (r != 0) all_zero = false;
      if (all_zero) {
        if (!certify_max(data, rounded))
          throw InvariantViolation("recovered system zero failed the quartic max check");
        rep.verdict = PipelineVerdict::certified_yes;
        rep.exact_witness = SphereWitness{rounded, true};
        rep.margins["threshold"] =
            to_double(thr.threshold_base()) * std::sqrt(to_double(thr.gamma_sq()));
        return;
      }
    }
  }

  ThresholdComparison cmp = threshold_compare(thr, est.value);
  rep.margins["threshold"] = cmp.threshold;
  rep.margins["margin"] = cmp.margin;
  rep.verdict = from_threshold(cmp.verdict);
}

}  // namespace

Json report_to_json(const PipelineReport& report) {
  Json j;
  j["version"] = kFileVersion;
  j["kind"] = "report";
  j["instance"] = report.instance;
  j["lift"] = report.lift;
  j["verdict"] = to_string(report.verdict);
  Json stages = Json::array();
  for (const auto& s : report.stages) {
    Json stage;
    stage["stage"] = s.stage;
    stage["input_digest"] = s.input_digest;
    stage["output_digest"] = s.output_digest;
    stage["timing_ms"] = s.timing_ms;
    stages.push_back(stage);
  }
  j["stages"] = stages;
  Json margins = Json::object();
  for (const auto& [key, value] : report.margins) margins[key] = value;
  j["margins"] = margins;
  if (report.exact_witness)
    j["exact_witness"] = witness_to_json(*report.exact_witness);
  else
    j["exact_witness"] = nullptr;
  return j;
}

Json strip_timings(Json report) {
  if (report.contains("stages"))
    for (auto& stage : report["stages"]) stage.erase("timing_ms");
  return report;
}

PipelineReport run_pipeline(const LibraryInstance& inst, const AscentConfig& cfg,
                            int lift, unsigned long den_cap) {
  PipelineReport rep{inst.name, lift, PipelineVerdict::unknown, {}, {}, std::nullopt};

  Json in_json = bq4e_to_json(inst.bq4e);
  auto t0 = Clock::now();
  QuadraticSystem sys = compile_homogeneous(inst.bq4e);
  Json sys_json = system_to_json(sys);
  rep.stages.push_back({"reduce-box", digest(in_json), digest(sys_json), ms_since(t0)});

  std::optional<SphereWitness> candidate;
  if (inst.witness) candidate = witness_forward(inst.bq4e, *inst.witness);

  finish_pipeline(rep, sys, sys_json, candidate, cfg, lift, den_cap);
  return rep;
}

PipelineReport run_pipeline(const HqsfLibraryInstance& inst, const AscentConfig& cfg,
                            int lift, unsigned long den_cap) {
  PipelineReport rep{inst.name, lift, PipelineVerdict::unknown, {}, {}, std::nullopt};

  QuadraticSystem sys{SystemMode::homogeneous, inst.instance.dimension,
                      inst.instance.forms, {}, std::nullopt};
  Json sys_json = system_to_json(sys);

  std::optional<SphereWitness> candidate;
  if (inst.witness) candidate = SphereWitness{*inst.witness, true};

  finish_pipeline(rep, sys, sys_json, candidate, cfg, lift, den_cap);
  return rep;
}

}  // namespace tst
