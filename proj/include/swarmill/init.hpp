#pragma once

// Initial-condition generators: the regular-polygon mill, seeded random
// connected clouds, and the antipodal mixed-heading configuration whose
// equal-radius start is not preserved by the controller.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "swarmill/core.hpp"

namespace swarmill {

/// Direction of travel around the mill circle.
enum class Spin { kClockwise, kCounterClockwise };

/// Places agent k at angle 2*pi*k/N on the circle, heading tangential.
/// Mills that emerge under the turn-toward-detection controller travel
/// clockwise; use Spin::kClockwise for a self-sustaining start.
inline Microstate regular_polygon_mill(const SwarmParams& params, double radius,
                                       Vec2 center = {0.0, 0.0},
                                       Spin spin = Spin::kClockwise) {
  if (!(radius > 0.0)) throw std::invalid_argument("regular_polygon_mill: radius > 0 required");
  const double tangent = (spin == Spin::kCounterClockwise) ? 0.5 * kPi : -0.5 * kPi;
  Microstate state;
  state.agents.resize(params.n);
  for (int k = 0; k < params.n; ++k) {
    const double alpha = kTwoPi * static_cast<double>(k) / params.n;
    state.agents[k].x = center.x + radius * std::cos(alpha);
    state.agents[k].y = center.y + radius * std::sin(alpha);
    state.agents[k].theta = wrap_angle(alpha + tangent);
  }
  return state;
}

namespace detail {

/// Connectivity of the r-disk graph (edges at distance < gamma), by BFS.
/// Equivalent to lambda2(L_disk) > 0 for the undirected graph.
inline bool disk_graph_connected(const Microstate& state, double gamma) {
  const int n = state.size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  const double g2 = gamma * gamma;
  while (!queue.empty()) {
    const int i = queue.back();
    queue.pop_back();
    for (int j = 0; j < n; ++j) {
      if (seen[j]) continue;
      const double dx = state.agents[j].x - state.agents[i].x;
      const double dy = state.agents[j].y - state.agents[i].y;
      if (dx * dx + dy * dy < g2) {
        seen[j] = 1;
        ++reached;
        queue.push_back(j);
      }
    }
  }
  return reached == n;
}

}  // namespace detail

/// Samples positions uniformly in a disk of the given spread (centered at the
/// origin) and headings uniformly in [-pi, pi), resampling until the r-disk
/// graph is connected. Pure function of (params, spread, seed).
inline Microstate random_connected_init(const SwarmParams& params, double spread,
                                        std::uint64_t seed, int max_attempts = 1000) {
  if (!(spread > 0.0)) throw std::invalid_argument("random_connected_init: spread > 0 required");
  if (max_attempts < 1) throw std::invalid_argument("random_connected_init: max_attempts >= 1 required");
  Rng rng(seed);
  Microstate state;
  state.agents.resize(params.n);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    for (auto& a : state.agents) {
      const double r = spread * std::sqrt(rng.next_unit());
      const double ang = rng.next_angle();
      a.x = r * std::cos(ang);
      a.y = r * std::sin(ang);
      a.theta = rng.next_angle();
    }
    if (detail::disk_graph_connected(state, params.gamma)) return state;
  }
  throw std::runtime_error(
      "random_connected_init: no connected configuration after " +
      std::to_string(max_attempts) +
      " attempts (spread too large relative to gamma and n)");
}

/// Antipodal configuration with every agent at the given distance from the
/// centroid but headings of mixed tangential sense: agents at the top and
/// bottom (diametrically opposed) travel clockwise, the two side arcs
/// counterclockwise. Equal radii at t = 0; the controller does not keep them.
inline Microstate counterexample_config(const SwarmParams& params, double radius) {
  if (params.n < 4 || params.n % 2 != 0)
    throw std::invalid_argument("counterexample_config: n must be even and >= 4");
  if (!(radius > 0.0)) throw std::invalid_argument("counterexample_config: radius > 0 required");
  Microstate state;
  state.agents.resize(params.n);
  const int half = params.n / 2;
  for (int k = 0; k < params.n; ++k) {
    const double alpha = 0.5 * kPi + kTwoPi * static_cast<double>(k) / params.n;
    const bool anchor = (k == 0 || k == half);  // the opposed pair A, B
    const double tangent = anchor ? -0.5 * kPi : 0.5 * kPi;
    state.agents[k].x = radius * std::cos(alpha);
    state.agents[k].y = radius * std::sin(alpha);
    state.agents[k].theta = wrap_angle(alpha + tangent);
  }
  return state;
}

}  // namespace swarmill
