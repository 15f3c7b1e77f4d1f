#pragma once

// Core value types and geometric primitives for the binary-sensing swarm
// model: parameter tuple, agent pose, swarm microstate, seeded RNG, and the
// conical field-of-view test every other module builds on.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace swarmill {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle into [-pi, pi).
inline double wrap_angle(double a) {
  double w = std::remainder(a, kTwoPi);
  if (w >= kPi) w -= kTwoPi;
  return w;
}

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
};

/// Scalar 2D cross product a_x*b_y - a_y*b_x.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Agent capability / environment parameters: sensing range gamma, forward
/// speed v, turn-rate magnitude omega, FOV opening angle phi (radians),
/// and agent count n. Immutable after construction; construction validates.
struct SwarmParams {
  double gamma;
  double v;
  double omega;
  double phi;
  int n;

  SwarmParams(double gamma_, double v_, double omega_, double phi_, int n_)
      : gamma(gamma_), v(v_), omega(omega_), phi(phi_), n(n_) {
    if (!(gamma > 0.0)) throw std::invalid_argument("SwarmParams: gamma > 0 required");
    if (!(v > 0.0)) throw std::invalid_argument("SwarmParams: v > 0 required");
    if (!(omega > 0.0)) throw std::invalid_argument("SwarmParams: omega > 0 required");
    // 2*pi is allowed so the FOV can degenerate to the full disk.
    if (!(phi > 0.0 && phi <= kTwoPi)) throw std::invalid_argument("SwarmParams: phi in (0, 2*pi] required");
    if (n < 2) throw std::invalid_argument("SwarmParams: n >= 2 required");
  }
};

/// Pose of one agent. theta is kept wrapped in [-pi, pi).
struct AgentState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 pos() const { return {x, y}; }
};

/// The collective state of all agents at time t.
struct Microstate {
  std::vector<AgentState> agents;
  double t = 0.0;

  int size() const { return static_cast<int>(agents.size()); }
};

/// Fixed-step integration controls. record_stride is the number of steps
/// between recorded trajectory samples.
struct SimConfig {
  double dt;
  double horizon;
  std::uint64_t seed = 0;
  std::int64_t record_stride = 1;

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt > 0 required");
    if (!(horizon >= dt)) throw std::invalid_argument("SimConfig: horizon >= dt required");
    if (record_stride < 1) throw std::invalid_argument("SimConfig: record_stride >= 1 required");
  }
};

// ---------------------------------------------------------------------------
// Deterministic RNG. One named generator (splitmix64) used for every
// stochastic operation; streams are derived from explicit seeds so results
// are reproducible cell-by-cell regardless of execution order.

inline constexpr std::uint64_t kSeedGamma = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Combines a seed with one more word; chain to derive per-task seeds.
/// Asymmetric in (h, w) so argument order separates streams.
inline constexpr std::uint64_t seed_combine(std::uint64_t h, std::uint64_t w) {
  return mix64(mix64(h + kSeedGamma) + w);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kSeedGamma;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform heading in [-pi, pi).
  double next_angle() { return wrap_angle(-kPi + kTwoPi * next_unit()); }

  /// Derives an independent stream; the parent generator is not advanced.
  Rng split(std::uint64_t stream) const { return Rng(seed_combine(state_, stream)); }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------

/// True iff the point (target_x, target_y) lies inside the observer's conical
/// field of view: distance <= gamma and |bearing - theta| <= phi/2, both
/// boundaries inclusive. Coincident points are defined to be out of view.
inline bool in_fov(const AgentState& observer, double target_x, double target_y,
                   const SwarmParams& params) {
  const double dx = target_x - observer.x;
  const double dy = target_y - observer.y;
  const double d2 = dx * dx + dy * dy;
  if (d2 == 0.0) return false;
  if (d2 > params.gamma * params.gamma) return false;
  const double offset = wrap_angle(std::atan2(dy, dx) - observer.theta);
  return std::abs(offset) <= 0.5 * params.phi;
}

}  // namespace swarmill
