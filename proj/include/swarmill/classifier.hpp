#pragma once

// Macrostate classification: maps a run's tail statistics to one of the six
// labels {M, P, E, U, C, S}. Fixed precedence resolves the overlapping
// definitions: S (separated) first, then C (collapsing/reforming), then the
// circliness bands with P splitting off oscillating-rotation mills.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "swarmill/classifier_fwd.hpp"
#include "swarmill/connectivity.hpp"
#include "swarmill/dynamics.hpp"
#include "swarmill/metrics.hpp"

namespace swarmill {

inline char macrostate_code(Macrostate m) {
  switch (m) {
    case Macrostate::kMilling: return 'M';
    case Macrostate::kPulsingMill: return 'P';
    case Macrostate::kEllipsoidal: return 'E';
    case Macrostate::kUncharacterized: return 'U';
    case Macrostate::kCollapsingCircle: return 'C';
    case Macrostate::kSeparatedGroups: return 'S';
  }
  return '?';
}

inline const char* macrostate_name(Macrostate m) {
  switch (m) {
    case Macrostate::kMilling: return "milling";
    case Macrostate::kPulsingMill: return "pulsing-mill";
    case Macrostate::kEllipsoidal: return "ellipsoidal";
    case Macrostate::kUncharacterized: return "uncharacterized";
    case Macrostate::kCollapsingCircle: return "collapsing-circle";
    case Macrostate::kSeparatedGroups: return "separated-groups";
  }
  return "?";
}

/// Sup/inf surrogates for the limsup/liminf tail conditions, taken over the
/// recorded samples in the trailing tail_fraction of the horizon.
struct TailStats {
  double c_sup = 0.0;
  double c_inf = 0.0;
  double omega_sup = 0.0;
  double omega_inf = 0.0;
  double lambda_min = 0.0;  // liminf surrogate
  double lambda_sup = 0.0;  // limsup surrogate; the separated-groups test
  int window_samples = 0;
};

inline ClassifierThresholds ClassifierThresholds::resolved(const SwarmParams& params) const {
  ClassifierThresholds r = *this;
  if (r.delta_omega == 0.0) r.delta_omega = 0.1 * params.n * params.v;
  r.validate();
  return r;
}

inline void ClassifierThresholds::validate() const {
  if (!(0.0 < c1 && c1 < c2)) throw std::invalid_argument("thresholds: 0 < c1 < c2 required");
  if (!(delta_c > 0.0)) throw std::invalid_argument("thresholds: delta_c > 0 required");
  if (!(delta_omega > 0.0)) throw std::invalid_argument("thresholds: delta_omega > 0 required");
  if (!(eps_lambda > 0.0)) throw std::invalid_argument("thresholds: eps_lambda > 0 required");
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
    throw std::invalid_argument("thresholds: tail_fraction in (0, 1) required");
}

inline ClassifierThresholds default_thresholds(const SwarmParams& params) {
  return ClassifierThresholds{}.resolved(params);
}

/// Tail window statistics; lambda2 is recomputed from the stored microstates
/// over the same window. Requires >= 10 samples in the window.
inline TailStats tail_stats(const Trajectory& traj, const MetricSeries& series,
                            const ClassifierThresholds& thresholds) {
  if (series.size() != traj.samples.size())
    throw std::invalid_argument("tail_stats: series does not match trajectory");
  const double t_start = (1.0 - thresholds.tail_fraction) * traj.config.horizon;
  std::size_t first = traj.samples.size();
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    if (traj.samples[i].t >= t_start) {
      first = i;
      break;
    }
  }
  const auto count = traj.samples.size() - first;
  if (count < 10)
    throw std::invalid_argument("tail_stats: tail window holds " + std::to_string(count) +
                                " samples, need >= 10; lengthen the horizon or record more often");

  TailStats s;
  s.window_samples = static_cast<int>(count);
  s.c_sup = -std::numeric_limits<double>::infinity();
  s.c_inf = std::numeric_limits<double>::infinity();
  s.omega_sup = -std::numeric_limits<double>::infinity();
  s.omega_inf = std::numeric_limits<double>::infinity();
  s.lambda_min = std::numeric_limits<double>::infinity();
  s.lambda_sup = -std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i < traj.samples.size(); ++i) {
    s.c_sup = std::max(s.c_sup, series[i].circliness);
    s.c_inf = std::min(s.c_inf, series[i].circliness);
    s.omega_sup = std::max(s.omega_sup, series[i].omega_bar);
    s.omega_inf = std::min(s.omega_inf, series[i].omega_bar);
    const double lambda2 = algebraic_connectivity(disk_graph(traj.samples[i].state, traj.params));
    s.lambda_min = std::min(s.lambda_min, lambda2);
    s.lambda_sup = std::max(s.lambda_sup, lambda2);
  }
  return s;
}

/// The decision procedure, in fixed precedence order. The separated-groups
/// test is the limsup condition: the range graph must stay disconnected
/// through the whole tail window. (A converged mill rides the open range
/// boundary, so its instantaneous lambda2 flickering to zero is not
/// separation.)
inline Macrostate classify(const TailStats& stats, const ClassifierThresholds& thresholds) {
  thresholds.validate();
  if (stats.lambda_sup <= thresholds.eps_lambda) return Macrostate::kSeparatedGroups;
  if (stats.c_sup - stats.c_inf > thresholds.delta_c) return Macrostate::kCollapsingCircle;
  if (stats.c_sup < thresholds.c1) {
    if (stats.omega_sup - stats.omega_inf > thresholds.delta_omega) return Macrostate::kPulsingMill;
    return Macrostate::kMilling;
  }
  if (stats.c_sup < thresholds.c2) return Macrostate::kEllipsoidal;
  return Macrostate::kUncharacterized;
}

struct RunClassification {
  Macrostate label;
  TailStats stats;
  std::optional<double> mill_radius;  // reported for M and P labels only
};

/// run -> metric_series -> tail_stats -> classify, with the measured mill
/// radius attached for mill-like labels.
inline RunClassification classify_run(const Microstate& init, const SwarmParams& params,
                                      const SimConfig& config, const ClassifierThresholds& thresholds) {
  const ClassifierThresholds th = thresholds.resolved(params);
  const Trajectory traj = run(init, params, config);
  const MetricSeries series = metric_series(traj);
  const TailStats stats = tail_stats(traj, series, th);
  const Macrostate label = classify(stats, th);
  RunClassification out{label, stats, std::nullopt};
  if (label == Macrostate::kMilling || label == Macrostate::kPulsingMill)
    out.mill_radius = measured_mill_radius(traj, th.tail_fraction);
  return out;
}

}  // namespace swarmill
