#pragma once

// Macroscopic properties measurable by an external observer: average speed,
// group rotation, angular momentum, scatter, radial variance, circliness,
// and the measured mill radius. The normalization radius R is the maximum
// centroid distance at the same instant, making the normalized metrics
// scale-invariant.

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "swarmill/core.hpp"
#include "swarmill/dynamics.hpp"

namespace swarmill {

struct MetricSample {
  double t = 0.0;
  double v_bar = 0.0;            // average speed
  double omega_bar = 0.0;        // group rotation, signed
  double l_bar = 0.0;            // angular momentum, normalized by R
  double scatter = 0.0;          // normalized by R^2
  double radial_variance = 0.0;  // normalized by R^2
  double circliness = 0.0;       // r_max/r_min - 1; +inf when r_min == 0
  double r_max = 0.0;
  double r_min = 0.0;
  double swarm_radius = 0.0;     // the normalization radius R = r_max
};

using MetricSeries = std::vector<MetricSample>;

inline Vec2 centroid(const Microstate& state) {
  if (state.size() < 1) throw std::invalid_argument("centroid: empty microstate");
  Vec2 sum{0.0, 0.0};
  for (const auto& a : state.agents) sum = sum + a.pos();
  return sum * (1.0 / state.size());
}

/// (max_i ||p_i - mu|| - min_i ||p_i - mu||) / min_i ||p_i - mu||.
/// 0 is a perfect mill; +inf is the sentinel for an agent at the centroid.
inline double circliness(const Microstate& state) {
  const Vec2 mu = centroid(state);
  double r_max = 0.0;
  double r_min = std::numeric_limits<double>::infinity();
  for (const auto& a : state.agents) {
    const double r = (a.pos() - mu).norm();
    r_max = std::max(r_max, r);
    r_min = std::min(r_min, r);
  }
  if (r_min == 0.0) return std::numeric_limits<double>::infinity();
  return (r_max - r_min) / r_min;
}

/// Instantaneous velocity of one agent: direction theta, magnitude v held
/// exactly (the model moves at constant speed, so the norm is analytic).
struct Velocity {
  double vx = 0.0;
  double vy = 0.0;
  double speed = 0.0;
};

inline std::vector<Velocity> agent_velocities(const Microstate& state, const SwarmParams& params) {
  std::vector<Velocity> out(state.agents.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double th = state.agents[i].theta;
    out[i] = {params.v * std::cos(th), params.v * std::sin(th), params.v};
  }
  return out;
}

/// Evaluates all Table-style swarm properties at one instant. velocities must
/// be the model velocities at the same instant (magnitude v, direction theta).
/// All-coincident states report NaN for the R-normalized metrics.
inline MetricSample table1_metrics(const Microstate& state, std::span<const Velocity> velocities) {
  const int n = state.size();
  if (n < 1) throw std::invalid_argument("table1_metrics: empty microstate");
  if (static_cast<int>(velocities.size()) != n)
    throw std::invalid_argument("table1_metrics: one velocity per agent required");

  const Vec2 mu = centroid(state);
  MetricSample m;
  m.t = state.t;

  double r_max = 0.0, r_min = std::numeric_limits<double>::infinity();
  double r_sum = 0.0;
  std::vector<double> radii(n);
  for (int i = 0; i < n; ++i) {
    radii[i] = (state.agents[i].pos() - mu).norm();
    r_max = std::max(r_max, radii[i]);
    r_min = std::min(r_min, radii[i]);
    r_sum += radii[i];
  }
  m.r_max = r_max;
  m.r_min = r_min;
  m.swarm_radius = r_max;

  // The mean of identical speeds is that speed; computing it directly keeps
  // the constant-speed model's average exact instead of 1-2 ulp off.
  bool uniform_speed = true;
  double speed_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    speed_sum += velocities[i].speed;
    uniform_speed = uniform_speed && velocities[i].speed == velocities[0].speed;
  }
  m.v_bar = uniform_speed ? velocities[0].speed : speed_sum / n;

  double rotation = 0.0;
  for (int i = 0; i < n; ++i) {
    if (radii[i] == 0.0) continue;  // directionless radial; contributes nothing
    const Vec2 radial = (state.agents[i].pos() - mu) * (1.0 / radii[i]);
    rotation += cross({velocities[i].vx, velocities[i].vy}, radial);
  }
  m.omega_bar = rotation;

  m.circliness = (r_min == 0.0) ? std::numeric_limits<double>::infinity()
                                : (r_max - r_min) / r_min;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (r_max == 0.0) {
    m.l_bar = m.scatter = m.radial_variance = nan;
    return m;
  }

  double momentum = 0.0, sq_sum = 0.0, var_sum = 0.0;
  const double r_mean = r_sum / n;
  for (int i = 0; i < n; ++i) {
    momentum += cross({velocities[i].vx, velocities[i].vy}, state.agents[i].pos() - mu);
    sq_sum += radii[i] * radii[i];
    var_sum += (radii[i] - r_mean) * (radii[i] - r_mean);
  }
  m.l_bar = momentum / (r_max * n);
  m.scatter = sq_sum / (r_max * r_max * n);
  m.radial_variance = var_sum / (r_max * r_max * n);
  return m;
}

/// Mean over the trailing tail_fraction of samples of the mean centroid
/// distance (1/N) sum ||p_i - mu||.
inline double measured_mill_radius(const Trajectory& traj, double tail_fraction) {
  if (traj.samples.empty()) throw std::invalid_argument("measured_mill_radius: empty trajectory");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw std::invalid_argument("measured_mill_radius: tail_fraction in (0, 1] required");
  const auto count = traj.samples.size();
  auto first = count - std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tail_fraction * count)));
  double acc = 0.0;
  for (auto s = first; s < count; ++s) {
    const Microstate& state = traj.samples[s].state;
    const Vec2 mu = centroid(state);
    double r_sum = 0.0;
    for (const auto& a : state.agents) r_sum += (a.pos() - mu).norm();
    acc += r_sum / state.size();
  }
  return acc / static_cast<double>(count - first);
}

inline MetricSeries metric_series(const Trajectory& traj) {
  MetricSeries series;
  series.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    const auto vel = agent_velocities(s.state, traj.params);
    series.push_back(table1_metrics(s.state, vel));
  }
  return series;
}

}  // namespace swarmill
