#pragma once

// Command-line surface: simulate, classify, predict, deploy, sweep, replay.
// Results go to stdout, diagnostics to stderr; every command is
// non-interactive and exits nonzero with a one-line error on failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "swarmill/io.hpp"
#include "swarmill/svg.hpp"

namespace swarmill {

namespace clidetail {

inline std::string fmt10(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

inline void print_tail_stats(std::ostream& out, const TailStats& stats) {
  out << "c_sup = " << fmt10(stats.c_sup) << "\n"
      << "c_inf = " << fmt10(stats.c_inf) << "\n"
      << "omega_sup = " << fmt10(stats.omega_sup) << "\n"
      << "omega_inf = " << fmt10(stats.omega_inf) << "\n"
      << "lambda_min = " << fmt10(stats.lambda_min) << "\n"
      << "tail_samples = " << stats.window_samples << "\n";
}

inline int cmd_simulate(const std::string& config_path, const std::string& out_traj,
                        const std::string& out_metrics, const std::string& out_effective) {
  const RunConfig cfg = parse_run_config(read_file(config_path));
  if (!out_effective.empty()) write_file(out_effective, serialize_run_config(cfg));

  const Microstate init = build_init(cfg);
  const Trajectory traj = run(init, cfg.params, cfg.sim);
  write_file(out_traj, serialize_trajectory(traj));

  const MetricSeries series = metric_series(traj);
  if (!out_metrics.empty()) write_file(out_metrics, metrics_csv(traj, series));

  const TailStats stats = tail_stats(traj, series, cfg.thresholds);
  const Macrostate label = classify(stats, cfg.thresholds);
  std::cout << "label " << macrostate_code(label) << "\n";
  if (label == Macrostate::kMilling || label == Macrostate::kPulsingMill)
    std::cout << "mill_radius " << fmt10(measured_mill_radius(traj, cfg.thresholds.tail_fraction))
              << "\n";
  return 0;
}

inline int cmd_classify(const std::string& traj_path, const std::string& config_path) {
  const Trajectory traj = parse_trajectory(read_file(traj_path));
  const ClassifierThresholds thresholds =
      config_path.empty() ? default_thresholds(traj.params)
                          : parse_run_config(read_file(config_path)).thresholds;
  const MetricSeries series = metric_series(traj);
  const TailStats stats = tail_stats(traj, series, thresholds);
  const Macrostate label = classify(stats, thresholds);
  std::cout << "label " << macrostate_code(label) << "\n";
  if (label == Macrostate::kMilling || label == Macrostate::kPulsingMill)
    std::cout << "mill_radius " << fmt10(measured_mill_radius(traj, thresholds.tail_fraction)) << "\n";
  print_tail_stats(std::cout, stats);
  return 0;
}

inline int cmd_predict(double gamma, int n, const std::string& config_path, double tol_phi) {
  if (!config_path.empty()) {
    const RunConfig cfg = parse_run_config(read_file(config_path));
    const MillPrediction pred = pstar_membership(cfg.params, tol_phi);
    std::cout << "R_m = " << fmt10(pred.r_m) << "\n";
    for (const auto& c : pred.binding_constraints)
      std::cout << (c.satisfied ? "ok   " : "fail ") << c.name << " (margin " << fmt10(c.margin)
                << ")\n";
    std::cout << "in_pstar " << (pred.in_pstar ? "true" : "false") << "\n";
    return 0;
  }
  std::cout << "R_m = " << fmt10(predicted_radius(gamma, n)) << "\n";
  return 0;
}

inline int cmd_deploy(double r_star, int n_min, int n_max, int samples, std::uint64_t seed,
                      const DeployBox& box, const std::string& out_path) {
  const DeploySet set = deploy_set(r_star, n_min, n_max, samples, seed, box);
  write_file(out_path, deploy_csv(set));
  std::cout << "wrote " << set.samples.size() << " tuples to " << out_path << "\n";
  return 0;
}

inline int cmd_sweep(const std::string& spec_path, const std::string& out_dir) {
  const SweepFile file = parse_sweep_file(read_file(spec_path));
  std::filesystem::create_directories(out_dir);
  if (file.kind == SweepFile::Kind::kBoundary) {
    const auto rows = boundary_study(*file.boundary);
    const std::string path = out_dir + "/boundary.csv";
    write_file(path, boundary_csv(rows));
    std::cout << "wrote " << path << "\n";
    return 0;
  }
  if (file.kind == SweepFile::Kind::kRadius) {
    const auto rows = radius_study(*file.sweep);
    const std::string path = out_dir + "/radius.csv";
    write_file(path, radius_csv(rows));
    std::cout << "wrote " << path << "\n";
    return 0;
  }
  const PhaseDiagram diagram = run_sweep(*file.sweep);
  const std::string csv_path = out_dir + "/phase.csv";
  const std::string svg_path = out_dir + "/phase.svg";
  write_file(csv_path, phase_csv(diagram));
  write_file(svg_path, phase_svg(diagram));
  std::cout << "wrote " << csv_path << "\n" << "wrote " << svg_path << "\n";
  return 0;
}

inline int cmd_replay(const std::string& traj_path, const std::string& out_path, int frames) {
  const Trajectory traj = parse_trajectory(read_file(traj_path));
  write_file(out_path, replay_svg(traj, frames));
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace clidetail

inline int cli_main(int argc, const char* const* argv) {
  CLI::App app{"simulator and analysis toolkit for binary-sensing milling swarms"};
  app.require_subcommand(1);

  // simulate
  std::string sim_config, sim_out_traj, sim_out_metrics, sim_out_effective;
  auto* simulate = app.add_subcommand("simulate", "run a config and store trajectory + metrics");
  simulate->add_option("--config", sim_config, "run config JSON")->required();
  simulate->add_option("--out-trajectory", sim_out_traj, "trajectory output path")->required();
  simulate->add_option("--out-metrics", sim_out_metrics, "per-sample metrics CSV path");
  simulate->add_option("--effective-config", sim_out_effective, "echo the resolved config here");

  // classify
  std::string cls_traj, cls_config;
  auto* classify_cmd = app.add_subcommand("classify", "re-classify a stored trajectory");
  classify_cmd->add_option("--trajectory", cls_traj, "trajectory file")->required();
  classify_cmd->add_option("--config", cls_config, "run config supplying thresholds");

  // predict
  double pre_gamma = 0.0, pre_tol_phi = 1e-9;
  int pre_n = 0;
  std::string pre_config;
  auto* predict = app.add_subcommand("predict", "closed-form milling radius and membership report");
  predict->add_option("--gamma", pre_gamma, "sensing range");
  predict->add_option("--n", pre_n, "agent count");
  predict->add_option("--config", pre_config, "full run config for the membership report");
  predict->add_option("--tol-phi", pre_tol_phi, "tolerance on the critical angle")->capture_default_str();

  // deploy
  double dep_r_star = 0.0;
  int dep_n_min = 3, dep_n_max = 30, dep_samples = 10;
  std::uint64_t dep_seed = 0;
  DeployBox dep_box;
  std::string dep_out;
  auto* deploy = app.add_subcommand("deploy", "sample the deployment set for a target radius");
  deploy->add_option("--r-star", dep_r_star, "target milling radius")->required();
  deploy->add_option("--n-min", dep_n_min, "smallest agent count")->capture_default_str();
  deploy->add_option("--n-max", dep_n_max, "largest agent count")->capture_default_str();
  deploy->add_option("--samples", dep_samples, "(v, omega) samples per n")->capture_default_str();
  deploy->add_option("--seed", dep_seed, "RNG seed")->capture_default_str();
  deploy->add_option("--v-min", dep_box.v_min, "sampling box")->capture_default_str();
  deploy->add_option("--v-max", dep_box.v_max, "sampling box")->capture_default_str();
  deploy->add_option("--omega-min", dep_box.omega_min, "sampling box")->capture_default_str();
  deploy->add_option("--omega-max", dep_box.omega_max, "sampling box")->capture_default_str();
  deploy->add_option("--out", dep_out, "CSV output path")->required();

  // sweep
  std::string swp_spec, swp_out_dir;
  auto* sweep = app.add_subcommand("sweep", "run a phase/radius/boundary sweep spec");
  sweep->add_option("--spec", swp_spec, "sweep spec JSON")->required();
  sweep->add_option("--out-dir", swp_out_dir, "output directory")->required();

  // replay
  std::string rep_traj, rep_out;
  int rep_frames = 8;
  auto* replay = app.add_subcommand("replay", "render a stored trajectory as an SVG frame strip");
  replay->add_option("--trajectory", rep_traj, "trajectory file")->required();
  replay->add_option("--out", rep_out, "SVG output path")->required();
  replay->add_option("--frames", rep_frames, "number of frames")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (simulate->parsed())
      return clidetail::cmd_simulate(sim_config, sim_out_traj, sim_out_metrics, sim_out_effective);
    if (classify_cmd->parsed()) return clidetail::cmd_classify(cls_traj, cls_config);
    if (predict->parsed()) {
      if (pre_config.empty() && (pre_gamma <= 0.0 || pre_n < 2))
        throw std::runtime_error("predict: give --config, or both --gamma > 0 and --n >= 2");
      return clidetail::cmd_predict(pre_gamma, pre_n, pre_config, pre_tol_phi);
    }
    if (deploy->parsed())
      return clidetail::cmd_deploy(dep_r_star, dep_n_min, dep_n_max, dep_samples, dep_seed, dep_box, dep_out);
    if (sweep->parsed()) return clidetail::cmd_sweep(swp_spec, swp_out_dir);
    if (replay->parsed()) return clidetail::cmd_replay(rep_traj, rep_out, rep_frames);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace swarmill
