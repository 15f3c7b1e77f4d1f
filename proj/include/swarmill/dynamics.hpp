#pragma once

// The continuous-time model: binary cone sensor, bang-bang turn controller,
// and unicycle kinematics integrated with classical RK4 at a fixed step.
// Sensor outputs are evaluated synchronously on the step's input state and
// the turn rate is held constant across the step.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmill/core.hpp"

namespace swarmill {

/// Time history of a run: states recorded every record_stride steps.
struct Trajectory {
  struct Sample {
    double t;
    Microstate state;
  };
  std::vector<Sample> samples;
  SwarmParams params;
  SimConfig config;
};

/// Binary sensor of agent i: 1 iff some other agent lies in its FOV.
inline int sense(int i, const Microstate& state, const SwarmParams& params) {
  const int n = state.size();
  if (i < 0 || i >= n) throw std::out_of_range("sense: agent index out of range");
  const AgentState& me = state.agents[i];
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    if (in_fov(me, state.agents[j].x, state.agents[j].y, params)) return 1;
  }
  return 0;
}

/// Turn rate from the sensor bit: +omega on detection, -omega otherwise.
inline double control(int h, const SwarmParams& params) {
  return h != 0 ? params.omega : -params.omega;
}

namespace detail {

struct Deriv {
  double dx, dy, dtheta;
};

inline Deriv rate(double theta, double v, double u) {
  return {v * std::cos(theta), v * std::sin(theta), u};
}

inline AgentState rk4_agent(const AgentState& s, double v, double u, double dt) {
  const Deriv k1 = rate(s.theta, v, u);
  const Deriv k2 = rate(s.theta + 0.5 * dt * k1.dtheta, v, u);
  const Deriv k3 = rate(s.theta + 0.5 * dt * k2.dtheta, v, u);
  const Deriv k4 = rate(s.theta + dt * k3.dtheta, v, u);
  AgentState out;
  out.x = s.x + dt * ((k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx) / 6.0);
  out.y = s.y + dt * ((k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy) / 6.0);
  out.theta = wrap_angle(s.theta + dt * ((k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta) / 6.0));
  return out;
}

}  // namespace detail

/// Advances one step with externally supplied turn rates (one per agent).
inline Microstate step_with_controls(const Microstate& state, std::span<const double> turn_rates,
                                     const SwarmParams& params, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt > 0 required");
  if (static_cast<int>(turn_rates.size()) != state.size())
    throw std::invalid_argument("step_with_controls: one turn rate per agent required");
  Microstate next;
  next.t = state.t + dt;
  next.agents.resize(state.agents.size());
  for (int i = 0; i < state.size(); ++i)
    next.agents[i] = detail::rk4_agent(state.agents[i], params.v, turn_rates[i], dt);
  return next;
}

/// Advances one step of the closed-loop model. All sensors read the input
/// state, so the update is synchronous across agents.
inline Microstate step(const Microstate& state, const SwarmParams& params, double dt) {
  if (state.size() != params.n)
    throw std::invalid_argument("step: microstate size does not match params.n");
  std::vector<double> u(state.agents.size());
  for (int i = 0; i < state.size(); ++i) u[i] = control(sense(i, state, params), params);
  return step_with_controls(state, u, params, dt);
}

/// Integration step giving small heading and travel increments per step.
inline double default_dt(const SwarmParams& params) {
  return std::min(0.01 / params.omega, 0.01 * params.gamma / params.v);
}

/// Runs the closed loop from t = 0 to the horizon, recording every
/// record_stride steps (the initial state is always recorded).
/// Deterministic; throws on non-finite state naming the offending step.
inline Trajectory run(const Microstate& init, const SwarmParams& params, const SimConfig& config) {
  config.validate();
  if (init.size() != params.n)
    throw std::invalid_argument("run: microstate size does not match params.n");

  const auto steps = static_cast<std::int64_t>(std::ceil(config.horizon / config.dt - 1e-9));
  Trajectory traj{{}, params, config};
  traj.samples.reserve(static_cast<std::size_t>(steps / config.record_stride) + 1);

  Microstate state = init;
  state.t = 0.0;
  for (auto& a : state.agents) a.theta = wrap_angle(a.theta);
  traj.samples.push_back({0.0, state});

  for (std::int64_t k = 1; k <= steps; ++k) {
    state = step(state, params, config.dt);
    state.t = static_cast<double>(k) * config.dt;
    for (const auto& a : state.agents) {
      if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(a.theta))
        throw std::runtime_error("run: non-finite state at step " + std::to_string(k));
    }
    if (k % config.record_stride == 0) traj.samples.push_back({state.t, state});
  }
  return traj;
}

}  // namespace swarmill
