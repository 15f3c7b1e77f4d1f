#include <catch2/catch_amalgamated.hpp>

#include "swarmill/classifier.hpp"
#include "swarmill/init.hpp"

using namespace swarmill;
using Catch::Approx;

namespace {

const SwarmParams kParams{1.0, 1.0, 2.0, kTwoPi / 10, 10};

ClassifierThresholds defaults() { return default_thresholds(kParams); }

TailStats stats(double c_sup, double c_inf, double w_sup, double w_inf, double lambda_min,
                double lambda_sup = -1.0) {
  if (lambda_sup < 0.0) lambda_sup = lambda_min;
  return TailStats{c_sup, c_inf, w_sup, w_inf, lambda_min, lambda_sup, 100};
}

}  // namespace

TEST_CASE("threshold defaults and validation", "[classifier]") {
  const ClassifierThresholds t = defaults();
  REQUIRE(t.c1 == 0.3);
  REQUIRE(t.c2 == 0.8);
  REQUIRE(t.delta_omega == Approx(0.1 * kParams.n * kParams.v));
  ClassifierThresholds bad = t;
  bad.c1 = 0.9;  // violates c1 < c2
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  ClassifierThresholds tf = t;
  tf.tail_fraction = 1.0;
  REQUIRE_THROWS_AS(tf.validate(), std::invalid_argument);
}

TEST_CASE("classification decision table", "[classifier]") {
  const ClassifierThresholds t = defaults();
  // Separation dominates everything else.
  REQUIRE(classify(stats(5.0, 0.0, 9.0, -9.0, 0.0), t) == Macrostate::kSeparatedGroups);
  REQUIRE(classify(stats(0.0, 0.0, 0.0, 0.0, 1e-7), t) == Macrostate::kSeparatedGroups);
  // Oscillating circliness -> collapsing circle.
  REQUIRE(classify(stats(0.5, 0.1, 0.0, 0.0, 1.0), t) == Macrostate::kCollapsingCircle);
  // Steady low circliness -> mill; with rotation oscillation -> pulsing mill.
  REQUIRE(classify(stats(0.05, 0.05, 2.0, 2.0, 1.0), t) == Macrostate::kMilling);
  REQUIRE(classify(stats(0.05, 0.05, 2.0, 0.5, 1.0), t) == Macrostate::kPulsingMill);
  // Mid band -> ellipsoidal; high band -> uncharacterized.
  REQUIRE(classify(stats(0.5, 0.5, 0.0, 0.0, 1.0), t) == Macrostate::kEllipsoidal);
  REQUIRE(classify(stats(0.9, 0.9, 0.0, 0.0, 1.0), t) == Macrostate::kUncharacterized);
}

TEST_CASE("classify is total and one label per input", "[classifier]") {
  const ClassifierThresholds t = defaults();
  Rng rng(5150);
  for (int i = 0; i < 2000; ++i) {
    const double c_inf = rng.uniform(0.0, 2.0);
    const double c_sup = c_inf + rng.uniform(0.0, 2.0);
    const double w_inf = rng.uniform(-10.0, 10.0);
    const double lambda_min = rng.next_unit() < 0.3 ? 0.0 : rng.uniform(0.0, 4.0);
    const TailStats s = stats(c_sup, c_inf, w_inf + rng.uniform(0.0, 5.0), w_inf, lambda_min,
                              lambda_min + (rng.next_unit() < 0.5 ? 0.0 : rng.uniform(0.0, 2.0)));
    const Macrostate label = classify(s, t);
    // Separation dominance: a tail that never reconnects is S regardless.
    if (s.lambda_sup <= t.eps_lambda) REQUIRE(label == Macrostate::kSeparatedGroups);
    if (s.lambda_sup > t.eps_lambda) REQUIRE(label != Macrostate::kSeparatedGroups);
    REQUIRE((label == Macrostate::kMilling || label == Macrostate::kPulsingMill ||
             label == Macrostate::kEllipsoidal || label == Macrostate::kUncharacterized ||
             label == Macrostate::kCollapsingCircle || label == Macrostate::kSeparatedGroups));
  }
}

TEST_CASE("raising c_sup never moves the label toward milling", "[classifier]") {
  const ClassifierThresholds t = defaults();
  const auto rank = [](Macrostate m) {
    switch (m) {
      case Macrostate::kMilling: return 0;
      case Macrostate::kEllipsoidal: return 1;
      default: return 2;  // kUncharacterized
    }
  };
  Rng rng(31337);
  for (int i = 0; i < 500; ++i) {
    const double c_lo = rng.uniform(0.0, 1.2);
    const double c_hi = c_lo + rng.uniform(0.0, 1.2);
    // Hold oscillation fixed at zero so only the band membership moves.
    const Macrostate a = classify(stats(c_lo, c_lo, 0, 0, 1.0), t);
    const Macrostate b = classify(stats(c_hi, c_hi, 0, 0, 1.0), t);
    REQUIRE(rank(b) >= rank(a));
  }
}

TEST_CASE("tail_stats on a constant trajectory", "[classifier]") {
  const Microstate poly = regular_polygon_mill(kParams, 1.0);
  Trajectory traj{{}, kParams, SimConfig{0.1, 10.0, 0, 1}};
  for (int k = 0; k <= 100; ++k) {
    Trajectory::Sample s{0.1 * k, poly};
    s.state.t = s.t;
    traj.samples.push_back(s);
  }
  const MetricSeries series = metric_series(traj);
  const TailStats s = tail_stats(traj, series, defaults());
  REQUIRE(s.c_sup == s.c_inf);
  REQUIRE(s.window_samples >= 10);
  REQUIRE(s.lambda_min > 0.0);
}

TEST_CASE("tail_stats rejects windows with too few samples", "[classifier]") {
  const Microstate poly = regular_polygon_mill(kParams, 1.0);
  Trajectory traj{{}, kParams, SimConfig{0.1, 10.0, 0, 1}};
  for (int k = 0; k <= 20; ++k) {
    Trajectory::Sample s{0.1 * k, poly};
    s.state.t = s.t;
    traj.samples.push_back(s);
  }
  const MetricSeries series = metric_series(traj);
  REQUIRE_THROWS_AS(tail_stats(traj, series, defaults()), std::invalid_argument);
}

TEST_CASE("diverging pair classifies as separated", "[classifier]") {
  SwarmParams p(1.0, 1.0, 1.0, kPi / 3, 2);
  Microstate init;
  init.agents = {{0, 0, -kPi}, {3.0, 0, 0}};  // far apart, heading apart
  SimConfig cfg{default_dt(p), 30.0, 0, 50};
  const RunClassification rc = classify_run(init, p, cfg, ClassifierThresholds{});
  REQUIRE(rc.label == Macrostate::kSeparatedGroups);
  REQUIRE(rc.stats.lambda_min == 0.0);
  REQUIRE(rc.stats.lambda_sup == 0.0);
  REQUIRE_FALSE(rc.mill_radius.has_value());
}

TEST_CASE("polygon start in the sufficient set classifies as milling", "[classifier]") {
  const double r_m = 1.0 / (2.0 * std::sin(kPi / 10));
  SwarmParams p(1.0, 1.0, 1.0 / (0.5 * r_m), kTwoPi / 10, 10);
  SimConfig cfg{default_dt(p), 120.0 / p.omega, 0, 100};
  const RunClassification rc =
      classify_run(regular_polygon_mill(p, r_m), p, cfg, ClassifierThresholds{});
  REQUIRE(rc.label == Macrostate::kMilling);
  REQUIRE(rc.mill_radius.has_value());
  REQUIRE(*rc.mill_radius == Approx(r_m).epsilon(0.01));
  REQUIRE(rc.stats.c_sup < 1e-2);
}

TEST_CASE("counterexample start does not classify as milling", "[classifier]") {
  const int n = 6;
  const double r_m = 1.0 / (2.0 * std::sin(kPi / n));
  SwarmParams p(1.0, 1.0, 1.0 / r_m, kTwoPi / n, n);
  SimConfig cfg{default_dt(p), 100.0 / p.omega, 0, 100};
  const RunClassification rc =
      classify_run(counterexample_config(p, r_m), p, cfg, ClassifierThresholds{});
  REQUIRE(rc.label != Macrostate::kMilling);
}

TEST_CASE("classify_run is deterministic", "[classifier]") {
  SwarmParams p(1.0, 1.0, 2.0, kTwoPi / 8, 8);
  const Microstate init = random_connected_init(p, 0.8, 404);
  SimConfig cfg{default_dt(p), 60.0 / p.omega, 404, 50};
  const RunClassification a = classify_run(init, p, cfg, ClassifierThresholds{});
  const RunClassification b = classify_run(init, p, cfg, ClassifierThresholds{});
  REQUIRE(a.label == b.label);
  REQUIRE(a.stats.c_sup == b.stats.c_sup);
  REQUIRE(a.stats.lambda_min == b.stats.lambda_min);
  REQUIRE(a.mill_radius.has_value() == b.mill_radius.has_value());
}
