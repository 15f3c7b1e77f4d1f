#pragma once

// Parallel parameter-space exploration. Every (cell, trial) derives its seed
// from a stated mixing hash of (base_seed, ix, iy, trial), so diagrams are a
// pure function of the spec: bit-identical for any worker count and stable
// under extending trials_per_cell. Failed runs (non-finite states, rejected
// initializations) are tallied per cell, never aborting the sweep.

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "swarmill/classifier.hpp"
#include "swarmill/core.hpp"
#include "swarmill/dynamics.hpp"
#include "swarmill/init.hpp"
#include "swarmill/mill_analysis.hpp"

namespace swarmill {

/// Worker count: SWARMILL_WORKERS when set, hardware concurrency otherwise.
inline unsigned worker_count() {
  if (const char* env = std::getenv("SWARMILL_WORKERS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(index) for index in [0, task_count) on up to `workers` threads.
/// Results must be written to pre-allocated, per-index storage.
template <typename Fn>
inline void parallel_for(int task_count, unsigned workers, Fn&& fn) {
  if (task_count <= 0) return;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(task_count));
  if (workers <= 1) {
    for (int i = 0; i < task_count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto loop = [&] {
    for (int i = next.fetch_add(1); i < task_count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(loop);
  loop();
  for (auto& t : pool) t.join();
}

/// Per-(cell, trial) seed derivation; the published mixing contract.
inline std::uint64_t trial_seed(std::uint64_t base_seed, int ix, int iy, int trial) {
  std::uint64_t h = seed_combine(base_seed, 0x73776565ull);  // domain tag
  h = seed_combine(h, static_cast<std::uint64_t>(ix));
  h = seed_combine(h, static_cast<std::uint64_t>(iy));
  h = seed_combine(h, static_cast<std::uint64_t>(trial));
  return h;
}

enum class SweepParam { kGamma, kV, kOmega, kPhi, kN };

inline const char* sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::kGamma: return "gamma";
    case SweepParam::kV: return "v";
    case SweepParam::kOmega: return "omega";
    case SweepParam::kPhi: return "phi";
    case SweepParam::kN: return "n";
  }
  return "?";
}

struct SweepAxis {
  SweepParam param = SweepParam::kN;
  std::vector<double> values;  // phi in radians; n values must be integral
};

enum class InitKind { kRandomConnected, kPolygon };

/// Simulation controls for sweep cells. dt == 0 resolves to default_dt of the
/// cell's params; record_stride == 0 targets ~400 recorded samples; horizon
/// is in units of 1/omega when horizon_per_omega is set.
struct SweepSim {
  double dt = 0.0;
  double horizon = 150.0;
  bool horizon_per_omega = true;
  std::int64_t record_stride = 0;
};

struct SweepSpec {
  SweepAxis axis_x;
  SweepAxis axis_y;
  SwarmParams fixed;  // supplies every non-axis parameter
  int trials_per_cell = 5;
  InitKind init = InitKind::kRandomConnected;
  double spread = 0.0;  // 0 resolves to 0.8 * gamma
  int init_max_attempts = 5000;
  bool couple_phi_critical = false;  // phi = 2*pi/N per cell; phi must not be an axis
  std::uint64_t base_seed = 0;
  SweepSim sim;
  ClassifierThresholds thresholds;

  explicit SweepSpec(const SwarmParams& fixed_params) : fixed(fixed_params) {}

  void validate() const {
    if (axis_x.param == axis_y.param) throw std::invalid_argument("sweep: axis_x and axis_y must differ");
    for (const SweepAxis* axis : {&axis_x, &axis_y}) {
      if (axis->values.empty()) throw std::invalid_argument("sweep: empty axis grid");
      for (std::size_t i = 1; i < axis->values.size(); ++i)
        if (!(axis->values[i] > axis->values[i - 1]))
          throw std::invalid_argument("sweep: axis grids must be strictly increasing");
      if (axis->param == SweepParam::kN) {
        for (double value : axis->values)
          if (value < 2.0 || value != std::floor(value))
            throw std::invalid_argument("sweep: n grid values must be integers >= 2");
      }
    }
    if (couple_phi_critical &&
        (axis_x.param == SweepParam::kPhi || axis_y.param == SweepParam::kPhi))
      throw std::invalid_argument("sweep: couple_phi_critical conflicts with a phi axis");
    if (trials_per_cell < 1) throw std::invalid_argument("sweep: trials_per_cell >= 1 required");
    if (spread < 0.0) throw std::invalid_argument("sweep: spread >= 0 required");
    if (!(sim.horizon > 0.0)) throw std::invalid_argument("sweep: horizon > 0 required");
  }
};

namespace detail {

inline void apply_axis(SweepParam param, double value, double& gamma, double& v, double& omega,
                       double& phi, int& n) {
  switch (param) {
    case SweepParam::kGamma: gamma = value; break;
    case SweepParam::kV: v = value; break;
    case SweepParam::kOmega: omega = value; break;
    case SweepParam::kPhi: phi = value; break;
    case SweepParam::kN: n = static_cast<int>(value); break;
  }
}

}  // namespace detail

inline SwarmParams cell_params(const SweepSpec& spec, int ix, int iy) {
  double gamma = spec.fixed.gamma, v = spec.fixed.v, omega = spec.fixed.omega, phi = spec.fixed.phi;
  int n = spec.fixed.n;
  detail::apply_axis(spec.axis_x.param, spec.axis_x.values[ix], gamma, v, omega, phi, n);
  detail::apply_axis(spec.axis_y.param, spec.axis_y.values[iy], gamma, v, omega, phi, n);
  if (spec.couple_phi_critical) phi = kTwoPi / n;
  return SwarmParams(gamma, v, omega, phi, n);
}

inline SimConfig cell_sim_config(const SweepSpec& spec, const SwarmParams& params, std::uint64_t seed) {
  SimConfig cfg{};
  cfg.dt = spec.sim.dt > 0.0 ? spec.sim.dt : default_dt(params);
  cfg.horizon = spec.sim.horizon_per_omega ? spec.sim.horizon / params.omega : spec.sim.horizon;
  cfg.seed = seed;
  if (spec.sim.record_stride > 0) {
    cfg.record_stride = spec.sim.record_stride;
  } else {
    const double steps = std::ceil(cfg.horizon / cfg.dt);
    cfg.record_stride = std::max<std::int64_t>(1, static_cast<std::int64_t>(steps / 400.0));
  }
  return cfg;
}

struct CellResult {
  std::array<int, kMacrostateCount> label_counts{};
  int failed_count = 0;
  Macrostate label = Macrostate::kUncharacterized;
  bool all_failed = true;
  double mean_mill_radius = std::numeric_limits<double>::quiet_NaN();
  double mean_tail_circliness = std::numeric_limits<double>::quiet_NaN();

  int count(Macrostate m) const { return label_counts[static_cast<int>(m)]; }
};

namespace detail {

// Severity order for majority tie-breaks: most severe label wins.
inline constexpr std::array<Macrostate, kMacrostateCount> kSeverityOrder = {
    Macrostate::kSeparatedGroups, Macrostate::kCollapsingCircle, Macrostate::kPulsingMill,
    Macrostate::kMilling,         Macrostate::kEllipsoidal,      Macrostate::kUncharacterized,
};

inline void finalize_cell(CellResult& cell, double radius_sum, int radius_count, double c_sum, int ok_count) {
  cell.all_failed = (ok_count == 0);
  if (radius_count > 0) cell.mean_mill_radius = radius_sum / radius_count;
  if (ok_count > 0) cell.mean_tail_circliness = c_sum / ok_count;
  int best = -1;
  for (Macrostate m : kSeverityOrder) {
    const int c = cell.count(m);
    if (c > best) {
      best = c;
      cell.label = m;
    }
  }
}

}  // namespace detail

/// Evaluates one cell: trials_per_cell independent runs, aggregated.
inline CellResult evaluate_cell(const SweepSpec& spec, const SwarmParams& params, int ix, int iy) {
  CellResult cell;
  double radius_sum = 0.0, c_sum = 0.0;
  int radius_count = 0, ok_count = 0;
  for (int trial = 0; trial < spec.trials_per_cell; ++trial) {
    const std::uint64_t seed = trial_seed(spec.base_seed, ix, iy, trial);
    try {
      Microstate init =
          spec.init == InitKind::kPolygon
              ? regular_polygon_mill(params, predicted_radius(params.gamma, params.n))
              : random_connected_init(params, spec.spread > 0.0 ? spec.spread : 0.8 * params.gamma,
                                      seed, spec.init_max_attempts);
      const SimConfig cfg = cell_sim_config(spec, params, seed);
      const RunClassification rc = classify_run(init, params, cfg, spec.thresholds);
      ++cell.label_counts[static_cast<int>(rc.label)];
      ++ok_count;
      c_sum += rc.stats.c_sup;
      if (rc.mill_radius) {
        radius_sum += *rc.mill_radius;
        ++radius_count;
      }
    } catch (const std::exception&) {
      ++cell.failed_count;
    }
  }
  detail::finalize_cell(cell, radius_sum, radius_count, c_sum, ok_count);
  return cell;
}

struct PhaseDiagram {
  SweepSpec spec;
  std::vector<CellResult> cells;  // row-major: iy * nx + ix

  int nx() const { return static_cast<int>(spec.axis_x.values.size()); }
  int ny() const { return static_cast<int>(spec.axis_y.values.size()); }
  const CellResult& at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * nx() + ix]; }
};

inline PhaseDiagram run_sweep(const SweepSpec& spec) {
  spec.validate();
  const int nx = static_cast<int>(spec.axis_x.values.size());
  const int ny = static_cast<int>(spec.axis_y.values.size());
  // Validate every cell's parameter tuple up front so failures are loud.
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) (void)cell_params(spec, ix, iy);

  PhaseDiagram diagram{spec, std::vector<CellResult>(static_cast<std::size_t>(nx) * ny)};
  parallel_for(nx * ny, worker_count(), [&](int idx) {
    const int ix = idx % nx;
    const int iy = idx / nx;
    diagram.cells[idx] = evaluate_cell(spec, cell_params(spec, ix, iy), ix, iy);
  });
  return diagram;
}

// ---------------------------------------------------------------------------

struct RadiusStudyRow {
  int n = 0;
  double measured_radius = std::numeric_limits<double>::quiet_NaN();  // mean over M/P trials
  double predicted = 0.0;
  Macrostate label = Macrostate::kUncharacterized;
  int mill_trials = 0;  // trials that reported a radius (M or P)
  int trials = 0;
  bool in_pstar = false;
};

/// Radius-versus-N study: spec.axis_x must be the n axis and axis_y a
/// singleton. Reports the measured radius for mill-like labels next to the
/// closed-form prediction for each N.
inline std::vector<RadiusStudyRow> radius_study(const SweepSpec& spec) {
  if (spec.axis_x.param != SweepParam::kN)
    throw std::invalid_argument("radius_study: axis_x must sweep n");
  if (spec.axis_y.values.size() != 1)
    throw std::invalid_argument("radius_study: axis_y must hold a single fixed value");
  const PhaseDiagram diagram = run_sweep(spec);
  std::vector<RadiusStudyRow> rows;
  rows.reserve(spec.axis_x.values.size());
  for (int ix = 0; ix < diagram.nx(); ++ix) {
    const SwarmParams params = cell_params(spec, ix, 0);
    const CellResult& cell = diagram.at(ix, 0);
    RadiusStudyRow row;
    row.n = params.n;
    row.measured_radius = cell.mean_mill_radius;
    row.predicted = predicted_radius(params.gamma, params.n);
    row.label = cell.label;
    row.mill_trials = cell.count(Macrostate::kMilling) + cell.count(Macrostate::kPulsingMill);
    row.trials = spec.trials_per_cell;
    row.in_pstar = pstar_membership(params).in_pstar;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

/// Turning-radius-versus-milling-radius study at fixed N and critical FOV:
/// each cell derives gamma = 2*R_m*sin(pi/N) and omega = v/ratio, then
/// classifies runs from random connected initializations.
struct BoundarySpec {
  std::vector<double> ratios;      // v/omega values (lengths)
  std::vector<double> r_m_values;  // target milling radii
  int n = 10;
  double v = 1.0;
  int trials = 10;
  double spread_over_gamma = 0.5;
  int init_max_attempts = 5000;
  std::uint64_t base_seed = 0;
  SweepSim sim;
  ClassifierThresholds thresholds;

  void validate() const {
    if (ratios.empty() || r_m_values.empty()) throw std::invalid_argument("boundary_study: empty grid");
    for (double r : ratios)
      if (!(r > 0.0)) throw std::invalid_argument("boundary_study: ratios must be > 0");
    for (double r : r_m_values)
      if (!(r > 0.0)) throw std::invalid_argument("boundary_study: r_m values must be > 0");
    if (n < 2) throw std::invalid_argument("boundary_study: n >= 2 required");
    if (!(v > 0.0)) throw std::invalid_argument("boundary_study: v > 0 required");
    if (trials < 1) throw std::invalid_argument("boundary_study: trials >= 1 required");
    if (!(spread_over_gamma > 0.0)) throw std::invalid_argument("boundary_study: spread_over_gamma > 0 required");
  }
};

struct BoundaryRow {
  double ratio = 0.0;
  double r_m = 0.0;
  CellResult cell;

  double mill_fraction() const {
    const int ok = cell.label_counts[0] + cell.label_counts[1] + cell.label_counts[2] +
                   cell.label_counts[3] + cell.label_counts[4] + cell.label_counts[5];
    const int total = ok + cell.failed_count;
    return total > 0 ? static_cast<double>(cell.count(Macrostate::kMilling)) / total : 0.0;
  }
};

inline std::vector<BoundaryRow> boundary_study(const BoundarySpec& bspec) {
  bspec.validate();
  const int nx = static_cast<int>(bspec.ratios.size());
  const int ny = static_cast<int>(bspec.r_m_values.size());
  std::vector<BoundaryRow> rows(static_cast<std::size_t>(nx) * ny);
  parallel_for(nx * ny, worker_count(), [&](int idx) {
    const int ix = idx % nx;
    const int iy = idx / nx;
    const double ratio = bspec.ratios[ix];
    const double r_m = bspec.r_m_values[iy];
    const double gamma = 2.0 * r_m * std::sin(kPi / bspec.n);
    const SwarmParams params(gamma, bspec.v, bspec.v / ratio, kTwoPi / bspec.n, bspec.n);

    SweepSpec shim(params);  // reuse the cell evaluator; axes are placeholders
    shim.axis_x = {SweepParam::kGamma, {gamma}};
    shim.axis_y = {SweepParam::kN, {static_cast<double>(bspec.n)}};
    shim.trials_per_cell = bspec.trials;
    shim.init = InitKind::kRandomConnected;
    shim.spread = bspec.spread_over_gamma * gamma;
    shim.init_max_attempts = bspec.init_max_attempts;
    shim.base_seed = bspec.base_seed;
    shim.sim = bspec.sim;
    shim.thresholds = bspec.thresholds;
    rows[idx] = BoundaryRow{ratio, r_m, evaluate_cell(shim, params, ix, iy)};
  });
  return rows;
}

}  // namespace swarmill
