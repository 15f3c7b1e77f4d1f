#pragma once

// File formats: the run-config and sweep-spec JSON (strict parsing, unknown
// keys rejected, FOV angle unit explicit), the line-delimited trajectory
// format with hexfloat fields for exact round-trips, and the versioned CSV
// emitters whose column orders are frozen.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmill/classifier.hpp"
#include "swarmill/connectivity.hpp"
#include "swarmill/core.hpp"
#include "swarmill/dynamics.hpp"
#include "swarmill/init.hpp"
#include "swarmill/metrics.hpp"
#include "swarmill/mill_analysis.hpp"
#include "swarmill/sweep.hpp"

namespace swarmill {

// --------------------------------------------------------------------------
// Formatting helpers. %.17g round-trips doubles in CSV; %a is bit-exact for
// the trajectory format.

inline std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string fmt_hex(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%a", x);
  return buf;
}

inline double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::runtime_error("failed to parse number for " + what + ": '" + s + "'");
  return value;
}

// --------------------------------------------------------------------------
// Strict JSON helpers.

namespace iodetail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) throw std::runtime_error("unknown key '" + path + it.key() + "'");
  }
}

inline const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::runtime_error("missing key '" + path + key + "'");
  return *it;
}

inline double get_num(const json& obj, const std::string& path, const char* key) {
  const json& v = require(obj, path, key);
  if (!v.is_number()) throw std::runtime_error("key '" + path + key + "' must be a number");
  return v.get<double>();
}

inline double get_num_or(const json& obj, const char* key, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw std::runtime_error(std::string("key '") + key + "' must be a number");
  return it->get<double>();
}

/// Reads the FOV angle with an explicit unit key: phi_deg or phi_rad.
inline double get_phi(const json& obj, const std::string& path) {
  const bool has_deg = obj.contains("phi_deg");
  const bool has_rad = obj.contains("phi_rad");
  if (has_deg && has_rad) throw std::runtime_error("'" + path + "': give phi_deg or phi_rad, not both");
  if (!has_deg && !has_rad) throw std::runtime_error("'" + path + "': phi_deg or phi_rad required");
  return has_deg ? deg_to_rad(get_num(obj, path, "phi_deg")) : get_num(obj, path, "phi_rad");
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw std::runtime_error("parse error at line " + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace iodetail

// --------------------------------------------------------------------------
// Run configuration.

struct InitSpec {
  InitKind kind = InitKind::kRandomConnected;
  double spread = 0.0;    // random init; 0 resolves to 0.8 * gamma
  int max_attempts = 5000;
  double radius = 0.0;    // polygon init; 0 resolves to the predicted R_m
  Spin spin = Spin::kClockwise;
};

struct RunConfig {
  SwarmParams params;
  SimConfig sim;
  ClassifierThresholds thresholds;
  InitSpec init;
};

inline Microstate build_init(const RunConfig& cfg) {
  if (cfg.init.kind == InitKind::kPolygon) {
    const double radius =
        cfg.init.radius > 0.0 ? cfg.init.radius : predicted_radius(cfg.params.gamma, cfg.params.n);
    return regular_polygon_mill(cfg.params, radius, {0.0, 0.0}, cfg.init.spin);
  }
  const double spread = cfg.init.spread > 0.0 ? cfg.init.spread : 0.8 * cfg.params.gamma;
  return random_connected_init(cfg.params, spread, cfg.sim.seed, cfg.init.max_attempts);
}

/// Parses and fully resolves a run config: every default is materialized, so
/// serialize -> parse is the identity on effective configurations.
inline RunConfig parse_run_config(const std::string& text) {
  using iodetail::json;
  const json root = iodetail::parse_text(text);
  if (!root.is_object()) throw std::runtime_error("config root must be an object");
  iodetail::reject_unknown_keys(root, "", {"params", "sim", "thresholds", "init"});

  const json& jp = iodetail::require(root, "", "params");
  iodetail::reject_unknown_keys(jp, "params.", {"gamma", "v", "omega", "phi_deg", "phi_rad", "n"});
  const double n_raw = iodetail::get_num(jp, "params.", "n");
  if (n_raw != std::floor(n_raw)) throw std::runtime_error("params.n must be an integer");
  SwarmParams params(iodetail::get_num(jp, "params.", "gamma"), iodetail::get_num(jp, "params.", "v"),
                     iodetail::get_num(jp, "params.", "omega"), iodetail::get_phi(jp, "params"),
                     static_cast<int>(n_raw));

  const json& js = iodetail::require(root, "", "sim");
  iodetail::reject_unknown_keys(js, "sim.", {"dt", "horizon", "seed", "record_stride"});
  SimConfig sim{};
  sim.dt = iodetail::get_num_or(js, "dt", 0.0);
  if (sim.dt == 0.0) sim.dt = default_dt(params);
  sim.horizon = iodetail::get_num(js, "sim.", "horizon");
  if (js.contains("seed")) {
    if (!js["seed"].is_number_integer() && !js["seed"].is_number_unsigned())
      throw std::runtime_error("sim.seed must be an integer");
    sim.seed = js["seed"].get<std::uint64_t>();
  }
  const double stride_raw = iodetail::get_num_or(js, "record_stride", 0.0);
  if (stride_raw != std::floor(stride_raw) || stride_raw < 0)
    throw std::runtime_error("sim.record_stride must be a nonnegative integer");
  sim.record_stride = static_cast<std::int64_t>(stride_raw);
  if (sim.record_stride == 0) {
    const double steps = std::ceil(sim.horizon / sim.dt);
    sim.record_stride = std::max<std::int64_t>(1, static_cast<std::int64_t>(steps / 400.0));
  }
  sim.validate();

  ClassifierThresholds thresholds;
  if (root.contains("thresholds")) {
    const json& jt = root["thresholds"];
    iodetail::reject_unknown_keys(
        jt, "thresholds.", {"c1", "c2", "delta_c", "delta_omega", "eps_lambda", "tail_fraction"});
    thresholds.c1 = iodetail::get_num_or(jt, "c1", thresholds.c1);
    thresholds.c2 = iodetail::get_num_or(jt, "c2", thresholds.c2);
    thresholds.delta_c = iodetail::get_num_or(jt, "delta_c", thresholds.delta_c);
    thresholds.delta_omega = iodetail::get_num_or(jt, "delta_omega", thresholds.delta_omega);
    thresholds.eps_lambda = iodetail::get_num_or(jt, "eps_lambda", thresholds.eps_lambda);
    thresholds.tail_fraction = iodetail::get_num_or(jt, "tail_fraction", thresholds.tail_fraction);
  }
  thresholds = thresholds.resolved(params);

  InitSpec init;
  if (root.contains("init")) {
    const json& ji = root["init"];
    iodetail::reject_unknown_keys(ji, "init.", {"kind", "spread", "max_attempts", "radius", "spin"});
    const std::string kind = iodetail::require(ji, "init.", "kind").get<std::string>();
    if (kind == "random") {
      init.kind = InitKind::kRandomConnected;
    } else if (kind == "polygon") {
      init.kind = InitKind::kPolygon;
    } else {
      throw std::runtime_error("init.kind must be 'random' or 'polygon'");
    }
    init.spread = iodetail::get_num_or(ji, "spread", 0.0);
    const double attempts = iodetail::get_num_or(ji, "max_attempts", 5000.0);
    init.max_attempts = static_cast<int>(attempts);
    init.radius = iodetail::get_num_or(ji, "radius", 0.0);
    if (ji.contains("spin")) {
      const std::string spin = ji["spin"].get<std::string>();
      if (spin == "cw") {
        init.spin = Spin::kClockwise;
      } else if (spin == "ccw") {
        init.spin = Spin::kCounterClockwise;
      } else {
        throw std::runtime_error("init.spin must be 'cw' or 'ccw'");
      }
    }
  }
  if (init.kind == InitKind::kRandomConnected && init.spread == 0.0) init.spread = 0.8 * params.gamma;
  if (init.kind == InitKind::kPolygon && init.radius == 0.0)
    init.radius = predicted_radius(params.gamma, params.n);

  return RunConfig{params, sim, thresholds, init};
}

inline std::string serialize_run_config(const RunConfig& cfg) {
  using iodetail::json;
  json root;
  root["params"] = {{"gamma", cfg.params.gamma}, {"v", cfg.params.v},      {"omega", cfg.params.omega},
                    {"phi_rad", cfg.params.phi}, {"n", cfg.params.n}};
  root["sim"] = {{"dt", cfg.sim.dt},
                 {"horizon", cfg.sim.horizon},
                 {"seed", cfg.sim.seed},
                 {"record_stride", cfg.sim.record_stride}};
  root["thresholds"] = {{"c1", cfg.thresholds.c1},
                        {"c2", cfg.thresholds.c2},
                        {"delta_c", cfg.thresholds.delta_c},
                        {"delta_omega", cfg.thresholds.delta_omega},
                        {"eps_lambda", cfg.thresholds.eps_lambda},
                        {"tail_fraction", cfg.thresholds.tail_fraction}};
  if (cfg.init.kind == InitKind::kPolygon) {
    root["init"] = {{"kind", "polygon"},
                    {"radius", cfg.init.radius},
                    {"spin", cfg.init.spin == Spin::kClockwise ? "cw" : "ccw"}};
  } else {
    root["init"] = {{"kind", "random"}, {"spread", cfg.init.spread}, {"max_attempts", cfg.init.max_attempts}};
  }
  return root.dump(2) + "\n";
}

// --------------------------------------------------------------------------
// Trajectory files: line-delimited, hexfloat, self-describing.

inline constexpr const char* kTrajectoryMagic = "swarmill-trajectory v1";

inline std::string serialize_trajectory(const Trajectory& traj) {
  std::ostringstream out;
  out << kTrajectoryMagic << "\n";
  out << "params gamma=" << fmt_hex(traj.params.gamma) << " v=" << fmt_hex(traj.params.v)
      << " omega=" << fmt_hex(traj.params.omega) << " phi=" << fmt_hex(traj.params.phi)
      << " n=" << traj.params.n << "\n";
  out << "config dt=" << fmt_hex(traj.config.dt) << " horizon=" << fmt_hex(traj.config.horizon)
      << " seed=" << traj.config.seed << " record_stride=" << traj.config.record_stride
      << " samples=" << traj.samples.size() << "\n";
  for (const auto& s : traj.samples) {
    out << fmt_hex(s.t);
    for (const auto& a : s.state.agents)
      out << ' ' << fmt_hex(a.x) << ' ' << fmt_hex(a.y) << ' ' << fmt_hex(a.theta);
    out << '\n';
  }
  return out.str();
}

namespace iodetail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

/// Parses "key=value" returning value; enforces the expected key.
inline std::string kv(const std::string& token, const char* key, const char* where) {
  const auto eq = token.find('=');
  if (eq == std::string::npos || token.substr(0, eq) != key)
    throw std::runtime_error(std::string("trajectory header: expected ") + key + "=... in " + where);
  return token.substr(eq + 1);
}

}  // namespace iodetail

inline Trajectory parse_trajectory(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryMagic)
    throw std::runtime_error(std::string("trajectory: bad or missing magic; expected '") +
                             kTrajectoryMagic + "'");

  if (!std::getline(in, line)) throw std::runtime_error("trajectory: missing params header");
  auto ptoks = iodetail::split_ws(line);
  if (ptoks.size() != 6 || ptoks[0] != "params")
    throw std::runtime_error("trajectory: malformed params header");
  SwarmParams params(parse_double(iodetail::kv(ptoks[1], "gamma", "params"), "gamma"),
                     parse_double(iodetail::kv(ptoks[2], "v", "params"), "v"),
                     parse_double(iodetail::kv(ptoks[3], "omega", "params"), "omega"),
                     parse_double(iodetail::kv(ptoks[4], "phi", "params"), "phi"),
                     std::stoi(iodetail::kv(ptoks[5], "n", "params")));

  if (!std::getline(in, line)) throw std::runtime_error("trajectory: missing config header");
  auto ctoks = iodetail::split_ws(line);
  if (ctoks.size() != 6 || ctoks[0] != "config")
    throw std::runtime_error("trajectory: malformed config header");
  SimConfig config{};
  config.dt = parse_double(iodetail::kv(ctoks[1], "dt", "config"), "dt");
  config.horizon = parse_double(iodetail::kv(ctoks[2], "horizon", "config"), "horizon");
  config.seed = std::stoull(iodetail::kv(ctoks[3], "seed", "config"));
  config.record_stride = std::stoll(iodetail::kv(ctoks[4], "record_stride", "config"));
  const std::size_t expected = std::stoull(iodetail::kv(ctoks[5], "samples", "config"));

  Trajectory traj{{}, params, config};
  traj.samples.reserve(expected);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto toks = iodetail::split_ws(line);
    if (toks.size() != 1 + 3 * static_cast<std::size_t>(params.n))
      throw std::runtime_error("trajectory: sample line " + std::to_string(traj.samples.size() + 1) +
                               " holds " + std::to_string(toks.size()) + " fields, expected " +
                               std::to_string(1 + 3 * params.n));
    Trajectory::Sample s;
    s.t = parse_double(toks[0], "t");
    s.state.t = s.t;
    s.state.agents.resize(params.n);
    for (int i = 0; i < params.n; ++i) {
      s.state.agents[i].x = parse_double(toks[1 + 3 * i], "x");
      s.state.agents[i].y = parse_double(toks[2 + 3 * i], "y");
      s.state.agents[i].theta = parse_double(toks[3 + 3 * i], "theta");
    }
    traj.samples.push_back(std::move(s));
  }
  if (traj.samples.size() != expected)
    throw std::runtime_error("trajectory: truncated file; header promises " + std::to_string(expected) +
                             " samples, found " + std::to_string(traj.samples.size()));
  return traj;
}

// --------------------------------------------------------------------------
// CSV emitters. First line carries the format version; column orders frozen.

inline std::string metrics_csv(const Trajectory& traj, const MetricSeries& series) {
  std::ostringstream out;
  out << "# swarmill-metrics-csv v1\n";
  out << "t,v_bar,omega_bar,l_bar,scatter,radial_variance,circliness,r_max,r_min,swarm_radius,lambda2\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const MetricSample& m = series[i];
    const double lambda2 = algebraic_connectivity(disk_graph(traj.samples[i].state, traj.params));
    out << fmt_g17(m.t) << ',' << fmt_g17(m.v_bar) << ',' << fmt_g17(m.omega_bar) << ','
        << fmt_g17(m.l_bar) << ',' << fmt_g17(m.scatter) << ',' << fmt_g17(m.radial_variance) << ','
        << fmt_g17(m.circliness) << ',' << fmt_g17(m.r_max) << ',' << fmt_g17(m.r_min) << ','
        << fmt_g17(m.swarm_radius) << ',' << fmt_g17(lambda2) << '\n';
  }
  return out.str();
}

inline std::string cell_label_string(const CellResult& cell) {
  return cell.all_failed ? std::string("X") : std::string(1, macrostate_code(cell.label));
}

inline std::string phase_csv(const PhaseDiagram& diagram) {
  const SweepSpec& spec = diagram.spec;
  std::ostringstream out;
  out << "# swarmill-phase-csv v1\n";
  out << "x_param,x_value,y_param,y_value,label,count_M,count_P,count_E,count_U,count_C,count_S,"
         "count_failed,mean_mill_radius,mean_tail_circliness\n";
  for (int iy = 0; iy < diagram.ny(); ++iy) {
    for (int ix = 0; ix < diagram.nx(); ++ix) {
      const CellResult& cell = diagram.at(ix, iy);
      out << sweep_param_name(spec.axis_x.param) << ',' << fmt_g17(spec.axis_x.values[ix]) << ','
          << sweep_param_name(spec.axis_y.param) << ',' << fmt_g17(spec.axis_y.values[iy]) << ','
          << cell_label_string(cell) << ',' << cell.count(Macrostate::kMilling) << ','
          << cell.count(Macrostate::kPulsingMill) << ',' << cell.count(Macrostate::kEllipsoidal) << ','
          << cell.count(Macrostate::kUncharacterized) << ',' << cell.count(Macrostate::kCollapsingCircle)
          << ',' << cell.count(Macrostate::kSeparatedGroups) << ',' << cell.failed_count << ','
          << (std::isnan(cell.mean_mill_radius) ? "" : fmt_g17(cell.mean_mill_radius)) << ','
          << (std::isnan(cell.mean_tail_circliness) ? "" : fmt_g17(cell.mean_tail_circliness)) << '\n';
    }
  }
  return out.str();
}

inline std::string radius_csv(const std::vector<RadiusStudyRow>& rows) {
  std::ostringstream out;
  out << "# swarmill-radius-csv v1\n";
  out << "n,measured_radius,predicted_radius,label,mill_trials,trials,in_pstar\n";
  for (const auto& r : rows) {
    out << r.n << ',' << (std::isnan(r.measured_radius) ? "" : fmt_g17(r.measured_radius)) << ','
        << fmt_g17(r.predicted) << ',' << macrostate_code(r.label) << ',' << r.mill_trials << ','
        << r.trials << ',' << (r.in_pstar ? 1 : 0) << '\n';
  }
  return out.str();
}

inline std::string boundary_csv(const std::vector<BoundaryRow>& rows) {
  std::ostringstream out;
  out << "# swarmill-boundary-csv v1\n";
  out << "ratio,r_m,label,count_M,count_P,count_E,count_U,count_C,count_S,count_failed,mill_fraction\n";
  for (const auto& r : rows) {
    out << fmt_g17(r.ratio) << ',' << fmt_g17(r.r_m) << ',' << cell_label_string(r.cell) << ','
        << r.cell.count(Macrostate::kMilling) << ',' << r.cell.count(Macrostate::kPulsingMill) << ','
        << r.cell.count(Macrostate::kEllipsoidal) << ',' << r.cell.count(Macrostate::kUncharacterized)
        << ',' << r.cell.count(Macrostate::kCollapsingCircle) << ','
        << r.cell.count(Macrostate::kSeparatedGroups) << ',' << r.cell.failed_count << ','
        << fmt_g17(r.mill_fraction()) << '\n';
  }
  return out.str();
}

inline std::string deploy_csv(const DeploySet& set) {
  std::ostringstream out;
  out << "# swarmill-deploy-csv v1\n";
  out << "n,v,omega,gamma,phi,r_star,predicted_radius\n";
  for (const auto& s : set.samples) {
    out << s.n << ',' << fmt_g17(s.v) << ',' << fmt_g17(s.omega) << ',' << fmt_g17(s.gamma) << ','
        << fmt_g17(s.phi) << ',' << fmt_g17(set.r_star) << ',' << fmt_g17(predicted_radius(s.gamma, s.n))
        << '\n';
  }
  return out.str();
}

// --------------------------------------------------------------------------
// Sweep specification files.

struct SweepFile {
  enum class Kind { kPhase, kRadius, kBoundary };
  Kind kind = Kind::kPhase;
  std::optional<SweepSpec> sweep;        // phase and radius kinds
  std::optional<BoundarySpec> boundary;  // boundary kind
};

namespace iodetail {

inline SweepAxis parse_axis(const json& obj, const std::string& path) {
  reject_unknown_keys(obj, path + ".", {"param", "values"});
  const std::string name = require(obj, path + ".", "param").get<std::string>();
  const json& jv = require(obj, path + ".", "values");
  if (!jv.is_array() || jv.empty())
    throw std::runtime_error("'" + path + ".values' must be a nonempty array");
  SweepAxis axis;
  bool degrees = false;
  if (name == "gamma") {
    axis.param = SweepParam::kGamma;
  } else if (name == "v") {
    axis.param = SweepParam::kV;
  } else if (name == "omega") {
    axis.param = SweepParam::kOmega;
  } else if (name == "phi_deg") {
    axis.param = SweepParam::kPhi;
    degrees = true;
  } else if (name == "phi_rad") {
    axis.param = SweepParam::kPhi;
  } else if (name == "n") {
    axis.param = SweepParam::kN;
  } else {
    throw std::runtime_error("'" + path + ".param' must be one of gamma, v, omega, phi_deg, phi_rad, n");
  }
  for (const auto& v : jv) {
    if (!v.is_number()) throw std::runtime_error("'" + path + ".values' must hold numbers");
    axis.values.push_back(degrees ? deg_to_rad(v.get<double>()) : v.get<double>());
  }
  return axis;
}

inline ClassifierThresholds parse_thresholds(const json& root) {
  ClassifierThresholds thresholds;
  if (!root.contains("thresholds")) return thresholds;
  const json& jt = root["thresholds"];
  reject_unknown_keys(jt, "thresholds.",
                      {"c1", "c2", "delta_c", "delta_omega", "eps_lambda", "tail_fraction"});
  thresholds.c1 = get_num_or(jt, "c1", thresholds.c1);
  thresholds.c2 = get_num_or(jt, "c2", thresholds.c2);
  thresholds.delta_c = get_num_or(jt, "delta_c", thresholds.delta_c);
  thresholds.delta_omega = get_num_or(jt, "delta_omega", thresholds.delta_omega);
  thresholds.eps_lambda = get_num_or(jt, "eps_lambda", thresholds.eps_lambda);
  thresholds.tail_fraction = get_num_or(jt, "tail_fraction", thresholds.tail_fraction);
  return thresholds;
}

inline SweepSim parse_sweep_sim(const json& root) {
  SweepSim sim;
  if (!root.contains("sim")) return sim;
  const json& js = root["sim"];
  reject_unknown_keys(js, "sim.", {"dt", "horizon", "horizon_per_omega", "record_stride"});
  sim.dt = get_num_or(js, "dt", sim.dt);
  sim.horizon = get_num_or(js, "horizon", sim.horizon);
  if (js.contains("horizon_per_omega")) sim.horizon_per_omega = js["horizon_per_omega"].get<bool>();
  sim.record_stride = static_cast<std::int64_t>(get_num_or(js, "record_stride", 0.0));
  return sim;
}

}  // namespace iodetail

inline SweepFile parse_sweep_file(const std::string& text) {
  using iodetail::json;
  const json root = iodetail::parse_text(text);
  if (!root.is_object()) throw std::runtime_error("sweep spec root must be an object");
  const std::string kind =
      root.contains("kind") ? root["kind"].get<std::string>() : std::string("phase");

  SweepFile out;
  if (kind == "boundary") {
    out.kind = SweepFile::Kind::kBoundary;
    iodetail::reject_unknown_keys(root, "",
                                  {"kind", "ratios", "r_m_values", "n", "v", "trials",
                                   "spread_over_gamma", "init_max_attempts", "base_seed", "sim",
                                   "thresholds"});
    BoundarySpec spec;
    for (const auto& v : iodetail::require(root, "", "ratios")) spec.ratios.push_back(v.get<double>());
    for (const auto& v : iodetail::require(root, "", "r_m_values"))
      spec.r_m_values.push_back(v.get<double>());
    spec.n = static_cast<int>(iodetail::get_num_or(root, "n", 10.0));
    spec.v = iodetail::get_num_or(root, "v", 1.0);
    spec.trials = static_cast<int>(iodetail::get_num_or(root, "trials", 10.0));
    spec.spread_over_gamma = iodetail::get_num_or(root, "spread_over_gamma", 0.5);
    spec.init_max_attempts = static_cast<int>(iodetail::get_num_or(root, "init_max_attempts", 5000.0));
    spec.base_seed = static_cast<std::uint64_t>(iodetail::get_num_or(root, "base_seed", 0.0));
    spec.sim = iodetail::parse_sweep_sim(root);
    spec.thresholds = iodetail::parse_thresholds(root);
    spec.validate();
    out.boundary = spec;
    return out;
  }

  if (kind != "phase" && kind != "radius")
    throw std::runtime_error("sweep spec kind must be 'phase', 'radius', or 'boundary'");
  out.kind = kind == "phase" ? SweepFile::Kind::kPhase : SweepFile::Kind::kRadius;
  iodetail::reject_unknown_keys(root, "",
                                {"kind", "axis_x", "axis_y", "fixed", "trials_per_cell", "init",
                                 "couple_phi_critical", "base_seed", "sim", "thresholds"});

  const json& jf = iodetail::require(root, "", "fixed");
  iodetail::reject_unknown_keys(jf, "fixed.", {"gamma", "v", "omega", "phi_deg", "phi_rad", "n"});
  SwarmParams fixed(iodetail::get_num(jf, "fixed.", "gamma"), iodetail::get_num(jf, "fixed.", "v"),
                    iodetail::get_num(jf, "fixed.", "omega"), iodetail::get_phi(jf, "fixed"),
                    static_cast<int>(iodetail::get_num(jf, "fixed.", "n")));

  SweepSpec spec(fixed);
  spec.axis_x = iodetail::parse_axis(iodetail::require(root, "", "axis_x"), "axis_x");
  spec.axis_y = iodetail::parse_axis(iodetail::require(root, "", "axis_y"), "axis_y");
  spec.trials_per_cell = static_cast<int>(iodetail::get_num_or(root, "trials_per_cell", 5.0));
  if (root.contains("init")) {
    const json& ji = root["init"];
    iodetail::reject_unknown_keys(ji, "init.", {"kind", "spread", "max_attempts"});
    const std::string init_kind = iodetail::require(ji, "init.", "kind").get<std::string>();
    if (init_kind == "random") {
      spec.init = InitKind::kRandomConnected;
    } else if (init_kind == "polygon") {
      spec.init = InitKind::kPolygon;
    } else {
      throw std::runtime_error("init.kind must be 'random' or 'polygon'");
    }
    spec.spread = iodetail::get_num_or(ji, "spread", 0.0);
    spec.init_max_attempts = static_cast<int>(iodetail::get_num_or(ji, "max_attempts", 5000.0));
  }
  if (root.contains("couple_phi_critical")) spec.couple_phi_critical = root["couple_phi_critical"].get<bool>();
  spec.base_seed = static_cast<std::uint64_t>(iodetail::get_num_or(root, "base_seed", 0.0));
  spec.sim = iodetail::parse_sweep_sim(root);
  spec.thresholds = iodetail::parse_thresholds(root);
  spec.validate();
  out.sweep = spec;
  return out;
}

// --------------------------------------------------------------------------
// Small file helpers.

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace swarmill
