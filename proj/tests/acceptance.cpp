// Acceptance gate: ten end-to-end checks, one [PASS]/[FAIL] line each.
// Exit code is the number of failures. Tolerances are pinned here, next
// to the checks that use them.
//
// Usage: acceptance <data-dir> [--write-baselines]
// The data dir holds margin_baselines.json, the committed regression
// anchors for the numeric margins; --write-baselines regenerates it.

#include "tst/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace tst;

namespace {

constexpr double kNoMargin = 1e-3;      // infeasible estimates sit this far under B
constexpr double kBaselineDrift = 1e-9; // allowed drift against committed estimates
constexpr double kSliceFloor = 1e-6;    // x0 = 0 slice residual never drops below
constexpr double kYesResidual = 1e-12;  // feasible systems reach this residual
constexpr double kBanachRel = 1e-6;     // |sym - multilinear| / max(1, |sym|)
constexpr double kLiftRel = 1e-3;       // lifted maxima vs gamma_d * base
constexpr double kGradRel = 1e-5;       // gradient vs central differences

struct Gate {
  int failures = 0;

  void report(const std::string& name, bool ok, double seconds,
              const std::string& detail) {
    std::printf("[%s] %-24s (%6.1fs)  %s\n", ok ? "PASS" : "FAIL", name.c_str(),
                seconds, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

HqsfInstance random_hqsf(std::mt19937_64& rng, int n, int k) {
  std::vector<QuadraticForm> forms;
  for (int i = 0; i < k; ++i) {
    RationalMatrix m = RationalMatrix::Zero(n, n);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        m(a, b) = r;
        m(b, a) = r;
      }
    forms.emplace_back(m);
  }
  return HqsfInstance(n, forms);
}

RationalVector random_point(std::mt19937_64& rng, int n) {
  RationalVector z(n);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  for (int i = 0; i < n; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    z[i] = r;
  }
  return z;
}

// 1. p is exactly sandwiched: (|z|^2)^2 <= p(z) <= B (|z|^2)^2, and
//    p hits the top exactly where every generating form vanishes.
bool criterion_sandwich(std::string& detail) {
  std::mt19937_64 rng(101);
  long checked = 0;
  for (int inst = 0; inst < 4; ++inst) {
    int n = 2 + inst % 3;
    int k = 1 + static_cast<int>(rng() % 3);
    HqsfInstance hq = random_hqsf(rng, n, k);
    QuarticCertificateData data = build_quartic(hq);
    for (int t = 0; t < 1000; ++t) {
      RationalVector z = random_point(rng, n);
      Rational nsq = z.dot(z);
      if (nsq == 0) continue;
      Rational val = data.p(z);
      if (val < nsq * nsq || val > data.B * nsq * nsq) {
        detail = "sandwich violated";
        return false;
      }
      bool zeros = true;
      for (const auto& q : hq.forms)
        if (quad_eval(q, z) != 0) zeros = false;
      if (certify_max(data, z) != zeros) {
        detail = "certify_max disagrees with the forms";
        return false;
      }
      ++checked;
    }
  }
  std::ostringstream os;
  os << checked << " exact evaluations across 4 instances";
  detail = os.str();
  return true;
}

// 2. Library end to end: the five feasible instances certify exactly;
//    the five infeasible ones stay under their thresholds by > 1e-3,
//    and their estimates match the committed baselines.
bool criterion_library(const std::string& baseline_path, bool write_baselines,
                       std::string& detail) {
  AscentConfig cfg;
  cfg.restarts = 200;

  Json estimates = Json::object();
  std::ostringstream os;
  for (const auto& inst : builtin_library()) {
    if (inst.status == Status::unknown) continue;
    PipelineReport rep = run_pipeline(inst, cfg);
    if (inst.status == Status::yes) {
      if (rep.verdict != PipelineVerdict::certified_yes || !rep.exact_witness) {
        detail = inst.name + ": expected an exact certificate";
        return false;
      }
    } else {
      if (rep.verdict != PipelineVerdict::numerically_below) {
        detail = inst.name + ": expected numerically_below";
        return false;
      }
      double margin = rep.margins.at("margin");
      if (!(margin < -kNoMargin)) {
        detail = inst.name + ": margin too thin";
        return false;
      }
      estimates[inst.name] = rep.margins.at("estimate");
    }
  }

  if (write_baselines) {
    Json j;
    j["version"] = kFileVersion;
    j["kind"] = "baselines";
    j["estimates"] = estimates;
    save_json(baseline_path, j);
    detail = "baselines written to " + baseline_path;
    return true;
  }

  Json stored;
  try {
    stored = load_json(baseline_path, "baselines");
  } catch (const InputError&) {
    detail = "missing baselines at " + baseline_path + "; run --write-baselines";
    return false;
  }
  for (const auto& [name, value] : estimates.items()) {
    if (!stored["estimates"].contains(name)) {
      detail = name + ": no committed baseline";
      return false;
    }
    double drift =
        std::abs(value.get<double>() - stored["estimates"][name].get<double>());
    if (drift > kBaselineDrift) {
      os << name << " drifted by " << drift;
      detail = os.str();
      return false;
    }
  }
  detail = "5 exact certificates, 5 margins beyond " + std::to_string(kNoMargin) +
           ", baselines stable";
  return true;
}

// 3. Tensorization is exact: eval_form reproduces p, polarization round
//    trips, and the multilinear contraction collapses correctly.
bool criterion_tensorization(std::string& detail) {
  std::mt19937_64 rng(103);
  long checked = 0;
  for (int inst = 0; inst < 3; ++inst) {
    int n = 2 + inst;
    HqsfInstance hq = random_hqsf(rng, n, 1 + inst % 2);
    QuarticCertificateData data = build_quartic(hq);
    SymmetricTensor t = tensor_from_form(data.p, 4);
    if (form_from_tensor(t) != data.p) {
      detail = "polarization round trip broke";
      return false;
    }
    for (int k = 0; k < 100; ++k) {
      RationalVector z = random_point(rng, n);
      if (eval_form(t, z) != data.p(z)) {
        detail = "eval_form disagrees with p";
        return false;
      }
      if (k % 10 == 0) {
        std::vector<RationalVector> xs(4, z);
        if (eval_multilinear(t, xs) != eval_form(t, z)) {
          detail = "multilinear contraction disagrees on equal slots";
          return false;
        }
      }
      ++checked;
    }
  }
  std::ostringstream os;
  os << checked << " exact tensor evaluations across 3 instances";
  detail = os.str();
  return true;
}

// 4. Witness maps: forward then backward is the identity, backward is
//    scale invariant, and corrupted witnesses are rejected.
bool criterion_witness_maps(std::string& detail) {
  std::mt19937_64 rng(107);
  int round_trips = 0;
  auto same = [](const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  };
  for (const auto& inst : builtin_library()) {
    if (inst.status != Status::yes) continue;
    SphereWitness w = witness_forward(inst.bq4e, *inst.witness);
    if (!w.exact) {
      detail = inst.name + ": forward witness unexpectedly inexact";
      return false;
    }
    QuadraticSystem sys = compile_homogeneous(inst.bq4e);
    if (!verify_witness(sys, w).accepted) {
      detail = inst.name + ": forward witness rejected";
      return false;
    }
    BoxWitness back = witness_backward(sys, w);
    if (!same(back.xi, inst.witness->xi)) {
      detail = inst.name + ": round trip lost the witness";
      return false;
    }
    Rational lambda(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 3));
    SphereWitness scaled{w.y * lambda, true};
    if (!same(witness_backward(sys, scaled).xi, inst.witness->xi)) {
      detail = inst.name + ": backward map is not scale invariant";
      return false;
    }
    SphereWitness corrupt = w;
    corrupt.y[1 + static_cast<int>(rng() % 3)] += 1;
    bool rejected = false;
    try {
      witness_backward(sys, corrupt);
    } catch (const InputError&) {
      rejected = true;
    }
    if (!rejected) {
      detail = inst.name + ": corrupted witness slipped through";
      return false;
    }
    ++round_trips;
  }
  detail = std::to_string(round_trips) + " exact round trips with rejection checks";
  return true;
}

// 5. The x0 = 0 slice is infeasible with a real gap on every compiled
//    system, while feasible systems reach ~zero residual on the full
//    sphere.
bool criterion_slice(std::string& detail) {
  AscentConfig cfg;
  cfg.restarts = 100;
  cfg.max_iters = 2000;  // the n = 2 systems descend slowly before the polish bites
  double worst_slice = 1e300;
  double worst_yes = 0;
  for (const auto& inst : builtin_library()) {
    QuadraticSystem sys = compile_homogeneous(inst.bq4e);
    MaxEstimate slice = residual_min(sys, cfg, 0);
    worst_slice = std::min(worst_slice, slice.value);
    if (!(slice.value > kSliceFloor)) {
      detail = inst.name + ": x0 = 0 slice residual " + std::to_string(slice.value);
      return false;
    }
    if (inst.status == Status::yes) {
      MaxEstimate full = residual_min(sys, cfg);
      worst_yes = std::max(worst_yes, full.value);
      if (!(full.value < kYesResidual)) {
        detail = inst.name + ": full-sphere residual " + std::to_string(full.value);
        return false;
      }
    }
  }
  std::ostringstream os;
  os << "slice floor " << worst_slice << ", worst feasible residual " << worst_yes;
  detail = os.str();
  return true;
}

// 6. Banach agreement: the symmetric and multilinear maxima coincide on
//    random symmetric tensors and on the tensorized library instances.
bool criterion_banach(std::string& detail) {
  AscentConfig cfg;
  cfg.restarts = 30;
  std::mt19937_64 rng(109);
  double worst = 0;

  auto agree = [&](const SymmetricTensor& t) {
    MaxEstimate sym = maximize_sym(t, cfg);
    MultilinearEstimate ml = maximize_multilinear(t, cfg);
    double gap = std::abs(sym.value - ml.best.value) / std::max(1.0, sym.value);
    worst = std::max(worst, gap);
    return gap <= kBanachRel;
  };

  for (int rep = 0; rep < 50; ++rep) {
    int n = 2 + static_cast<int>(rng() % 5);
    SymmetricTensor t(n, 4);
    int entries = 3 + static_cast<int>(rng() % 6);
    std::uniform_int_distribution<int> var(0, n - 1);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    for (int e = 0; e < entries; ++e) {
      IndexTuple idx{var(rng), var(rng), var(rng), var(rng)};
      Rational r(num(rng), den(rng));
      r.canonicalize();
      t.set_entry(idx, r);
    }
    if (t.entries().empty()) continue;
    if (!agree(t)) {
      detail = "random tensor " + std::to_string(rep) + " disagrees by " +
               std::to_string(worst);
      return false;
    }
  }
  for (const auto& inst : builtin_hqsf_library()) {
    QuarticCertificateData data = build_quartic(inst.instance);
    if (!agree(tensorize(data).tensor())) {
      detail = inst.name + " disagrees by " + std::to_string(worst);
      return false;
    }
  }
  std::ostringstream os;
  os << "worst relative gap " << worst << " over 55 tensors";
  detail = os.str();
  return true;
}

// 7. Order lifts: the numeric maxima of the order-5 and order-6 lifts
//    match gamma_d * (quartic maximum), cross-checked against a 1-D
//    oracle for the slack profile and a spherical grid scan at d = 5.
bool criterion_lifts(std::string& detail) {
  RationalVector d2(2);
  d2 << 1, -1;
  QuarticCertificateData data = build_quartic(HqsfInstance(2, {QuadraticForm::diagonal(d2)}));
  const double base = 3.0;  // exact sphere maximum of this p

  AscentConfig cfg;
  cfg.restarts = 60;

  for (int order : {5, 6}) {
    ThresholdInstance thr = lift_to_threshold(data, order);
    double gamma = std::sqrt(to_double(thr.gamma_sq()));

    // Independent slack profile: max over c of c^4 ((1-c^2)/(d-4))^((d-4)/2)
    // equals gamma_d, the optimum sitting at c^2 = 4/d.
    double oracle = 0;
    const int steps = 2000000;
    for (int i = 0; i <= steps; ++i) {
      double c = static_cast<double>(i) / steps;
      double rest = (1 - c * c) / (order - 4);
      double v = std::pow(c, 4) * std::pow(rest, (order - 4) / 2.0);
      oracle = std::max(oracle, v);
    }
    if (std::abs(oracle - gamma) / gamma > 1e-6) {
      detail = "gamma formula disagrees with the 1-D oracle at order " +
               std::to_string(order);
      return false;
    }

    MaxEstimate est = maximize_sym(thr.tensor(), cfg);
    double expected = gamma * base;
    if (std::abs(est.value - expected) / expected > kLiftRel) {
      detail = "order " + std::to_string(order) + " estimate " +
               std::to_string(est.value) + " vs " + std::to_string(expected);
      return false;
    }

    if (order == 5) {
      OrderLift lift = lift_order(data, order);
      double grid = brute_sphere_max(lift.lifted, 300);
      if (std::abs(grid - expected) / expected > kLiftRel) {
        detail = "grid scan " + std::to_string(grid) + " vs " + std::to_string(expected);
        return false;
      }
    }
  }
  detail = "orders 5 and 6 match gamma_d * base within rel 1e-3";
  return true;
}

// 8. grad_p agrees with central differences.
bool criterion_gradient(std::string& detail) {
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0;
  for (int instance = 0; instance < 3; ++instance) {
    int n = 2 + instance;
    HqsfInstance hq = random_hqsf(rng, n, 1 + instance % 2);
    QuarticCertificateData data = build_quartic(hq);
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd z(n);
      for (int i = 0; i < n; ++i) z[i] = dist(rng);
      Eigen::VectorXd g = grad_p(data, z);
      double scale = std::max(1.0, g.norm());
      const double h = 1e-5;
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd zp = z, zm = z;
        zp[i] += h;
        zm[i] -= h;
        RationalVector rp(n), rm(n);
        for (int j = 0; j < n; ++j) {
          rp[j] = rational_from_double(zp[j]);
          rm[j] = rational_from_double(zm[j]);
        }
        double fd = (to_double(data.p(rp)) - to_double(data.p(rm))) / (2 * h);
        double rel = std::abs(g[i] - fd) / scale;
        worst = std::max(worst, rel);
        if (rel > kGradRel) {
          detail = "gradient off by rel " + std::to_string(rel);
          return false;
        }
      }
    }
  }
  std::ostringstream os;
  os << "300 points, worst relative error " << worst;
  detail = os.str();
  return true;
}

// 9. Compiled sizes follow the closed forms for n = 1..5.
bool criterion_layout(std::string& detail) {
  for (int n = 1; n <= 5; ++n) {
    Polynomial h(n);
    for (int i = 0; i < n; ++i) {
      Polynomial xi = Polynomial::variable(n, i);
      h = h + xi * xi;
    }
    h = h + Polynomial::constant(n, Rational(1));
    Bq4eInstance inst(n, h);

    int M = 2 * n + 1;
    int P = M * (M + 1) / 2;
    QuadraticSystem hom = compile_homogeneous(inst);
    if (hom.dimension != (2 * n + 1) * (2 * n + 3) ||
        static_cast<int>(hom.forms.size()) != n + 2 * P + M + 1) {
      detail = "homogeneous counts wrong at n = " + std::to_string(n);
      return false;
    }
    QuadraticSystem aff = compile_affine(inst);
    if (aff.dimension != M + P || static_cast<int>(aff.forms.size()) != n + P + 1) {
      detail = "affine counts wrong at n = " + std::to_string(n);
      return false;
    }
  }
  detail = "dimensions (2n+1)(2n+3) and constraint counts check out for n = 1..5";
  return true;
}

// 10. Same seed, same report, byte for byte once timings are stripped.
bool criterion_determinism(std::string& detail) {
  AscentConfig cfg;
  cfg.restarts = 20;
  const LibraryInstance* no_inst = find_instance("sq-plus-1");
  const LibraryInstance* yes_inst = find_instance("sq-minus-1");
  const HqsfLibraryInstance* hq = find_hqsf_instance("hqsf-definite");
  if (!no_inst || !yes_inst || !hq) {
    detail = "library lookup failed";
    return false;
  }
  for (int round = 0; round < 2; ++round) {
    Json a = strip_timings(report_to_json(run_pipeline(*no_inst, cfg)));
    Json b = strip_timings(report_to_json(run_pipeline(*no_inst, cfg)));
    if (a.dump() != b.dump()) {
      detail = "infeasible pipeline reports differ";
      return false;
    }
  }
  Json a = strip_timings(report_to_json(run_pipeline(*yes_inst, cfg)));
  Json b = strip_timings(report_to_json(run_pipeline(*yes_inst, cfg)));
  Json c = strip_timings(report_to_json(run_pipeline(*hq, cfg)));
  Json d = strip_timings(report_to_json(run_pipeline(*hq, cfg)));
  if (a.dump() != b.dump() || c.dump() != d.dump()) {
    detail = "pipeline reports differ";
    return false;
  }
  detail = "repeated runs are byte-identical after strip_timings";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <data-dir> [--write-baselines]\n");
    return 64;
  }
  const std::string data_dir = argv[1];
  bool write_baselines = false;
  for (int i = 2; i < argc; ++i)
    if (std::strcmp(argv[i], "--write-baselines") == 0) write_baselines = true;

  Gate gate;
  auto run = [&](const std::string& name, auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    gate.report(name, ok, seconds_since(t0), detail);
  };

  run("exact-sandwich", [&](std::string& d) { return criterion_sandwich(d); });
  run("library-end-to-end", [&](std::string& d) {
    return criterion_library(data_dir + "/margin_baselines.json", write_baselines, d);
  });
  run("tensorization", [&](std::string& d) { return criterion_tensorization(d); });
  run("witness-maps", [&](std::string& d) { return criterion_witness_maps(d); });
  run("slice-infeasibility", [&](std::string& d) { return criterion_slice(d); });
  run("banach-agreement", [&](std::string& d) { return criterion_banach(d); });
  run("order-lifts", [&](std::string& d) { return criterion_lifts(d); });
  run("gradient-check", [&](std::string& d) { return criterion_gradient(d); });
  run("layout-counting", [&](std::string& d) { return criterion_layout(d); });
  run("determinism", [&](std::string& d) { return criterion_determinism(d); });

  if (gate.failures == 0)
    std::printf("all 10 criteria passed\n");
  else
    std::printf("%d criteria failed\n", gate.failures);
  return gate.failures;
}
