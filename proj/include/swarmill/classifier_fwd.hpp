#pragma once

// Macrostate labels and classifier thresholds, separated out so that lighter
// headers can name them without pulling in the classifier pipeline.

namespace swarmill {

struct SwarmParams;

enum class Macrostate {
  kMilling,
  kPulsingMill,
  kEllipsoidal,
  kUncharacterized,
  kCollapsingCircle,
  kSeparatedGroups,
};

inline constexpr int kMacrostateCount = 6;

/// Thresholds realizing the tail-condition macrostate table. c1/c2 bound the
/// circliness bands; delta_c and delta_omega turn the strict ">0" oscillation
/// conditions into finite bands usable under floating point; delta_omega == 0
/// means "resolve to 0.1 * N * v from the params".
struct ClassifierThresholds {
  double c1 = 0.3;
  double c2 = 0.8;
  double delta_c = 0.1;
  double delta_omega = 0.0;
  double eps_lambda = 1e-6;
  double tail_fraction = 0.25;

  ClassifierThresholds resolved(const SwarmParams& params) const;
  void validate() const;
};

}  // namespace swarmill
