// Command-line front end: compile reductions, run the numeric oracles,
// verify witnesses, and drive whole pipelines on the builtin library.
#include "tst/harness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace tst;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct NumoptFlags {
  AscentConfig cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--restarts", cfg.restarts, "random restarts")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", cfg.max_iters, "iteration budget per restart")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", cfg.step_tolerance, "step-size tolerance");
    cmd->add_option("--shift", cfg.shift, "power-iteration shift (negative = auto)");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
  }
};

void print_estimate(const MaxEstimate& est, const std::string& format,
                    const std::string& label) {
  if (format == "json") {
    std::cout << estimate_to_json(est).dump(2) << "\n";
    return;
  }
  std::cout << label << " = " << fmt(est.value) << "\n"
            << "restarts = " << est.restarts_used
            << ", winner iterations = " << est.iterations
            << ", converged = " << (est.converged ? "yes" : "no") << "\n";
}

int run_reduce_box(const std::string& in, const std::string& out,
                   const std::string& mode) {
  Bq4eInstance inst = bq4e_from_json(load_json(in, "bq4e"));
  QuadraticSystem sys =
      mode == "affine" ? compile_affine(inst) : compile_homogeneous(inst);
  save_json(out, system_to_json(sys));
  std::cout << "wrote " << out << " (dimension " << sys.dimension << ", "
            << sys.forms.size() << " constraints)\n";
  return 0;
}

int run_reduce_tensor(const std::string& in, const std::string& quartic_out,
                      const std::string& threshold_out) {
  QuadraticSystem sys = system_from_json(load_json(in, "system"));
  QuarticCertificateData data = build_quartic(HqsfInstance::from_system(sys));
  if (!quartic_out.empty()) {
    save_json(quartic_out, quartic_to_json(data));
    std::cout << "wrote " << quartic_out << " (B = " << to_string(data.B) << ")\n";
  }
  if (!threshold_out.empty()) {
    save_json(threshold_out, threshold_to_json(tensorize(data)));
    std::cout << "wrote " << threshold_out << "\n";
  }
  if (quartic_out.empty() && threshold_out.empty())
    std::cout << "nothing to write; pass --quartic and/or --threshold\n";
  return 0;
}

int run_lift_order(const std::string& in, int order, const std::string& out) {
  QuarticCertificateData data = quartic_from_json(load_json(in, "quartic"));
  ThresholdInstance thr = lift_to_threshold(data, order);
  save_json(out, threshold_to_json(thr));
  std::cout << "wrote " << out << " (order " << order << ", threshold "
            << fmt(to_double(thr.threshold_base()) *
                   std::sqrt(to_double(thr.gamma_sq())))
            << ")\n";
  return 0;
}

int run_maximize(const std::string& in, const AscentConfig& cfg, bool multilinear,
                 const std::string& format) {
  Json j = load_json(in);
  std::string kind = json_kind(j);
  SymmetricTensor tensor(1, 4);
  bool have_tensor = false;
  if (kind == "quartic") {
    QuarticCertificateData data = quartic_from_json(j);
    if (!multilinear) {
      print_estimate(maximize_sym(data, cfg), format, "max p");
      return 0;
    }
    tensor = tensorize(data).tensor();
    have_tensor = true;
  } else if (kind == "threshold") {
    tensor = threshold_from_json(j).tensor();
    have_tensor = true;
  } else if (kind == "tensor") {
    tensor = tensor_from_json(j);
    have_tensor = true;
  }
  if (!have_tensor)
    throw InputError("maximize expects a quartic, threshold, or tensor file");
  if (multilinear) {
    MultilinearEstimate me = maximize_multilinear(tensor, cfg);
    print_estimate(me.best, format, "max |T(x_1,...,x_d)|");
  } else {
    print_estimate(maximize_sym(tensor, cfg), format, "max |T(x,...,x)|");
  }
  return 0;
}

int run_residual(const std::string& in, const AscentConfig& cfg,
                 std::optional<int> freeze, const std::string& format) {
  QuadraticSystem sys = system_from_json(load_json(in, "system"));
  MaxEstimate est = residual_min(sys, cfg, freeze);
  print_estimate(est, format, "min residual");
  return 0;
}

int run_verify(const std::string& in, const std::string& witness_path,
               const std::string& format) {
  Json j = load_json(in);
  SphereWitness w = witness_from_json(load_json(witness_path, "witness"));
  std::string kind = json_kind(j);
  VerifyResult res{false, -1, ""};
  if (kind == "system")
    res = verify_witness(system_from_json(j), w);
  else if (kind == "quartic")
    res = verify_witness(quartic_from_json(j), w);
  else if (kind == "threshold")
    res = verify_witness(threshold_from_json(j), w);
  else
    throw InputError("verify expects a system, quartic, or threshold file");
  if (format == "json") {
    Json out;
    out["accepted"] = res.accepted;
    out["violated_index"] = res.violated_index;
    out["detail"] = res.detail;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (res.accepted ? "accepted" : "rejected") << ": " << res.detail << "\n";
  }
  return 0;
}

int run_pipeline_cmd(const std::string& name, const std::string& file, int lift,
                     const AscentConfig& cfg, unsigned long den_cap,
                     bool strip, const std::string& out) {
  PipelineReport rep;
  if (!file.empty()) {
    LibraryInstance inst{file, bq4e_from_json(load_json(file, "bq4e")),
                         Status::unknown, std::nullopt, "loaded from file",
                         std::nullopt};
    rep = run_pipeline(inst, cfg, lift, den_cap);
  } else if (const LibraryInstance* inst = find_instance(name)) {
    rep = run_pipeline(*inst, cfg, lift, den_cap);
  } else if (const HqsfLibraryInstance* hq = find_hqsf_instance(name)) {
    rep = run_pipeline(*hq, cfg, lift, den_cap);
  } else {
    throw InputError("no library instance named '" + name + "'");
  }
  Json j = report_to_json(rep);
  if (strip) j = strip_timings(j);
  if (!out.empty()) {
    save_json(out, j);
    std::cout << "wrote " << out << " (verdict " << to_string(rep.verdict) << ")\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int run_library(const std::string& export_dir) {
  for (const auto& inst : builtin_library()) {
    std::printf("%-18s bq4e  n=%-2d %-8s %s\n", inst.name.c_str(), inst.bq4e.n,
                to_string(inst.status).c_str(), inst.provenance.c_str());
    if (!export_dir.empty())
      save_json(export_dir + "/" + inst.name + ".json", bq4e_to_json(inst.bq4e));
  }
  for (const auto& inst : builtin_hqsf_library()) {
    QuadraticSystem sys{SystemMode::homogeneous, inst.instance.dimension,
                        inst.instance.forms, {}, std::nullopt};
    std::printf("%-18s hqsf  N=%-2d %-8s %s\n", inst.name.c_str(),
                inst.instance.dimension, to_string(inst.status).c_str(),
                inst.provenance.c_str());
    if (!export_dir.empty())
      save_json(export_dir + "/" + inst.name + ".json", system_to_json(sys));
  }
  if (!export_dir.empty()) std::cout << "exported to " << export_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reduction compiler and verification toolkit"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string in, out, quartic_out, threshold_out, witness_path, name, file,
      export_dir, mode = "homogeneous";
  int order = 5, lift = 4, freeze_idx = -1;
  unsigned long den_cap = 1000;
  bool multilinear = false, strip = false;
  NumoptFlags nm;

  auto* cmd_rb = app.add_subcommand("reduce-box", "compile box feasibility to a sphere system");
  cmd_rb->add_option("input", in, "bq4e instance file")->required();
  cmd_rb->add_option("-o,--output", out, "system file to write")->required();
  cmd_rb->add_option("--mode", mode, "homogeneous (spectral-ready) or affine (baseline)")
      ->check(CLI::IsMember({"homogeneous", "affine"}));

  auto* cmd_rt = app.add_subcommand("reduce-tensor", "compile a sphere system to the quartic and its tensor");
  cmd_rt->add_option("input", in, "system file")->required();
  cmd_rt->add_option("--quartic", quartic_out, "quartic file to write");
  cmd_rt->add_option("--threshold", threshold_out, "threshold file to write");

  auto* cmd_lo = app.add_subcommand("lift-order", "lift a quartic to an odd or higher even order");
  cmd_lo->add_option("input", in, "quartic file")->required();
  cmd_lo->add_option("-d,--order", order, "target order (>= 5)")->required();
  cmd_lo->add_option("-o,--output", out, "threshold file to write")->required();

  auto* cmd_mx = app.add_subcommand("maximize", "numerically maximize a form on the sphere");
  cmd_mx->add_option("input", in, "quartic, threshold, or tensor file")->required();
  cmd_mx->add_flag("--multilinear", multilinear, "maximize over independent slot vectors");
  nm.attach(cmd_mx);

  auto* cmd_rs = app.add_subcommand("residual", "minimize a system's squared residual on the sphere");
  cmd_rs->add_option("input", in, "system file")->required();
  cmd_rs->add_option("--freeze", freeze_idx, "pin this coordinate to zero");
  nm.attach(cmd_rs);

  auto* cmd_vf = app.add_subcommand("verify", "check a witness exactly against an artifact");
  cmd_vf->add_option("input", in, "system, quartic, or threshold file")->required();
  cmd_vf->add_option("-w,--witness", witness_path, "witness file")->required();

  auto* cmd_pl = app.add_subcommand("pipeline", "run the full chain on a library instance or file");
  cmd_pl->add_option("name", name, "library instance name");
  cmd_pl->add_option("--file", file, "bq4e instance file instead of a library name");
  cmd_pl->add_option("--lift", lift, "final tensor order (default 4)");
  cmd_pl->add_option("--den-cap", den_cap, "denominator cap for rationalizing argmins");
  cmd_pl->add_flag("--strip-timings", strip, "drop timings from the report");
  cmd_pl->add_option("-o,--output", out, "report file to write");
  nm.attach(cmd_pl);

  auto* cmd_lib = app.add_subcommand("library", "list builtin instances");
  cmd_lib->add_option("--export", export_dir, "also write instance files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (cmd_rb->parsed()) return run_reduce_box(in, out, mode);
    if (cmd_rt->parsed()) return run_reduce_tensor(in, quartic_out, threshold_out);
    if (cmd_lo->parsed()) return run_lift_order(in, order, out);
    if (cmd_mx->parsed()) return run_maximize(in, nm.cfg, multilinear, format);
    if (cmd_rs->parsed()) {
      std::optional<int> freeze;
      if (freeze_idx >= 0) freeze = freeze_idx;
      return run_residual(in, nm.cfg, freeze, format);
    }
    if (cmd_vf->parsed()) return run_verify(in, witness_path, format);
    if (cmd_pl->parsed()) {
      if (name.empty() && file.empty())
        throw InputError("pipeline needs a library name or --file");
      return run_pipeline_cmd(name, file, lift, nm.cfg, den_cap, strip, out);
    }
    if (cmd_lib->parsed()) return run_library(export_dir);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
