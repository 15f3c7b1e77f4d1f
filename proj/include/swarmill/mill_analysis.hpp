#pragma once

// Closed-form mill analysis: the predicted milling radius gamma/(2 sin(pi/N)),
// membership in the sufficient-condition parameter set (critical FOV angle
// phi = 2*pi/N and turning radius v/omega at most the milling radius), the
// inverse deployment set for a chosen target radius, and the largest agent
// count a fixed FOV angle can sustain.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmill/core.hpp"

namespace swarmill {

/// Emergent milling radius gamma / (2 sin(pi/n)).
inline double predicted_radius(double gamma, int n) {
  if (n < 2) throw std::invalid_argument("predicted_radius: n >= 2 required");
  if (!(gamma > 0.0)) throw std::invalid_argument("predicted_radius: gamma > 0 required");
  return gamma / (2.0 * std::sin(kPi / n));
}

struct ConstraintCheck {
  std::string name;
  bool satisfied = false;
  double margin = 0.0;  // >= 0 means satisfied by that much
};

struct MillPrediction {
  double r_m = 0.0;
  bool in_pstar = false;
  std::array<ConstraintCheck, 2> binding_constraints;
};

/// Checks both sufficient conditions: |phi - 2*pi/N| <= tol_phi and
/// v/omega <= r_m. The critical angle is exact; tol_phi only absorbs
/// representation rounding, not deliberate fuzz.
inline MillPrediction pstar_membership(const SwarmParams& params, double tol_phi = 1e-9) {
  MillPrediction out;
  out.r_m = predicted_radius(params.gamma, params.n);
  const double phi_critical = kTwoPi / params.n;
  const double phi_error = std::abs(params.phi - phi_critical);
  const double ratio_slack = out.r_m - params.v / params.omega;
  out.binding_constraints[0] = {"phi = 2*pi/N", phi_error <= tol_phi, tol_phi - phi_error};
  out.binding_constraints[1] = {"v/omega <= R_m", ratio_slack >= 0.0, ratio_slack};
  out.in_pstar = out.binding_constraints[0].satisfied && out.binding_constraints[1].satisfied;
  return out;
}

struct DeployTuple {
  int n = 0;
  double v = 0.0;
  double omega = 0.0;
  double gamma = 0.0;
  double phi = 0.0;
};

/// Sampling box for the (v, omega) pairs of a deployment set.
struct DeployBox {
  double v_min = 0.1;
  double v_max = 1.0;
  double omega_min = 0.1;
  double omega_max = 2.0;
};

struct DeploySet {
  double r_star = 0.0;
  std::vector<DeployTuple> samples;
};

/// All sampled parameter tuples produce a mill of radius exactly r_star:
/// phi = 2*pi/N, gamma = 2*r_star*sin(pi/N), and v/omega <= r_star.
inline DeploySet deploy_set(double r_star, int n_min, int n_max, int k_samples,
                            std::uint64_t seed, const DeployBox& box = {}) {
  if (!(r_star > 0.0)) throw std::invalid_argument("deploy_set: r_star > 0 required");
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("deploy_set: need 2 <= n_min <= n_max");
  if (k_samples < 1) throw std::invalid_argument("deploy_set: k_samples >= 1 required");
  if (!(box.v_min > 0.0 && box.v_max >= box.v_min && box.omega_min > 0.0 && box.omega_max >= box.omega_min))
    throw std::invalid_argument("deploy_set: malformed sampling box");
  if (box.v_min / box.omega_max > r_star)
    throw std::invalid_argument("deploy_set: no (v, omega) in the box satisfies v/omega <= r_star");

  DeploySet out;
  out.r_star = r_star;
  Rng rng(seed);
  for (int n = n_min; n <= n_max; ++n) {
    const double phi = kTwoPi / n;
    const double gamma = 2.0 * r_star * std::sin(kPi / n);
    for (int k = 0; k < k_samples; ++k) {
      double v = 0.0, omega = 0.0;
      bool found = false;
      for (int tries = 0; tries < 100000; ++tries) {
        v = rng.uniform(box.v_min, box.v_max);
        omega = rng.uniform(box.omega_min, box.omega_max);
        if (v / omega <= r_star) {
          found = true;
          break;
        }
      }
      if (!found) throw std::runtime_error("deploy_set: feasible (v, omega) region too small to sample");
      out.samples.push_back({n, v, omega, gamma, phi});
    }
  }
  return out;
}

/// Largest N whose critical FOV angle 2*pi/N is still at least phi, i.e.
/// floor(2*pi/phi). Beyond it the critical-angle condition cannot be met at
/// that FOV. The small slack absorbs degree-to-radian rounding.
inline int predicted_breakup_n(double phi) {
  if (!(phi > 0.0 && phi < kTwoPi)) throw std::invalid_argument("predicted_breakup_n: phi in (0, 2*pi) required");
  return static_cast<int>(std::floor(kTwoPi / phi + 1e-9));
}

}  // namespace swarmill
