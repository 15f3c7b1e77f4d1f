#include <catch2/catch_amalgamated.hpp>

#include "swarmill/connectivity.hpp"
#include "swarmill/core.hpp"
#include "swarmill/init.hpp"
#include "swarmill/metrics.hpp"

using namespace swarmill;
using Catch::Approx;

TEST_CASE("wrap_angle maps into [-pi, pi)", "[core]") {
  REQUIRE(wrap_angle(0.0) == 0.0);
  REQUIRE(wrap_angle(kPi) == Approx(-kPi));
  REQUIRE(wrap_angle(-kPi) == Approx(-kPi));
  REQUIRE(wrap_angle(3.0 * kPi) == Approx(-kPi));
  REQUIRE(wrap_angle(kPi / 2 + kTwoPi) == Approx(kPi / 2));
  Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    const double w = wrap_angle(rng.uniform(-50.0, 50.0));
    REQUIRE(w >= -kPi);
    REQUIRE(w < kPi);
  }
}

TEST_CASE("SwarmParams validates on construction", "[core]") {
  REQUIRE_NOTHROW(SwarmParams(1.0, 1.0, 1.0, kPi / 3, 6));
  REQUIRE_NOTHROW(SwarmParams(1.0, 1.0, 1.0, kTwoPi, 6));  // full-disk FOV allowed
  REQUIRE_THROWS_AS(SwarmParams(0.0, 1.0, 1.0, 1.0, 6), std::invalid_argument);
  REQUIRE_THROWS_AS(SwarmParams(1.0, 0.0, 1.0, 1.0, 6), std::invalid_argument);
  REQUIRE_THROWS_AS(SwarmParams(1.0, 1.0, 0.0, 1.0, 6), std::invalid_argument);
  REQUIRE_THROWS_AS(SwarmParams(1.0, 1.0, 1.0, 0.0, 6), std::invalid_argument);
  REQUIRE_THROWS_AS(SwarmParams(1.0, 1.0, 1.0, kTwoPi + 0.1, 6), std::invalid_argument);
  REQUIRE_THROWS_AS(SwarmParams(1.0, 1.0, 1.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("in_fov basic cone membership", "[core]") {
  SwarmParams p(2.0, 1.0, 1.0, kPi / 2, 2);
  AgentState obs{0.0, 0.0, 0.0};
  REQUIRE(in_fov(obs, 1.0, 0.0, p));        // directly ahead, in range
  REQUIRE_FALSE(in_fov(obs, 0.0, 1.0, p));  // bearing 90 deg exceeds half-angle 45
  REQUIRE_FALSE(in_fov(obs, 3.0, 0.0, p));  // distance 3 > gamma
  REQUIRE_FALSE(in_fov(obs, 0.0, 0.0, p));  // coincident points are out of view
}

TEST_CASE("in_fov boundaries are inclusive", "[core]") {
  // Range boundary: distance exactly gamma (dyadic values, no rounding).
  SwarmParams range_p(2.0, 1.0, 1.0, kPi / 2, 2);
  REQUIRE(in_fov(AgentState{0, 0, 0}, 2.0, 0.0, range_p));
  // Angle boundary: half-angle pi/2 with target at bearing exactly pi/2.
  SwarmParams angle_p(2.0, 1.0, 1.0, kPi, 2);
  REQUIRE(in_fov(AgentState{0, 0, 0}, 0.0, 1.0, angle_p));
  REQUIRE(in_fov(AgentState{0, 0, 0}, 0.0, -1.0, angle_p));
}

TEST_CASE("in_fov is invariant under rigid motions", "[core]") {
  SwarmParams p(1.7, 1.0, 1.0, 1.1, 2);
  Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    AgentState obs{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.next_angle()};
    const double tx = rng.uniform(-3, 3), ty = rng.uniform(-3, 3);
    const bool before = in_fov(obs, tx, ty, p);

    const double rot = rng.next_angle(), ox = rng.uniform(-5, 5), oy = rng.uniform(-5, 5);
    const double c = std::cos(rot), s = std::sin(rot);
    AgentState obs2{c * obs.x - s * obs.y + ox, s * obs.x + c * obs.y + oy,
                    wrap_angle(obs.theta + rot)};
    const double tx2 = c * tx - s * ty + ox, ty2 = s * tx + c * ty + oy;
    REQUIRE(in_fov(obs2, tx2, ty2, p) == before);
  }
}

TEST_CASE("in_fov with phi = 2*pi degenerates to the range test", "[core]") {
  SwarmParams p(1.5, 1.0, 1.0, kTwoPi, 2);
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    AgentState obs{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.next_angle()};
    const double tx = rng.uniform(-2, 2), ty = rng.uniform(-2, 2);
    const double d = std::hypot(tx - obs.x, ty - obs.y);
    if (d == 0.0) continue;
    REQUIRE(in_fov(obs, tx, ty, p) == (d <= p.gamma));
  }
}

TEST_CASE("regular_polygon_mill places the documented square", "[core]") {
  SwarmParams p(1.0, 1.0, 1.0, kPi / 2, 4);
  const Microstate state = regular_polygon_mill(p, 1.0, {0, 0}, Spin::kCounterClockwise);
  REQUIRE(state.size() == 4);
  const double expect[4][3] = {{1, 0, kPi / 2}, {0, 1, -kPi}, {-1, 0, -kPi / 2}, {0, -1, 0}};
  for (int k = 0; k < 4; ++k) {
    CAPTURE(k);
    REQUIRE(state.agents[k].x == Approx(expect[k][0]).margin(1e-12));
    REQUIRE(state.agents[k].y == Approx(expect[k][1]).margin(1e-12));
    // heading pi wraps to -pi
    REQUIRE(state.agents[k].theta == Approx(expect[k][2]).margin(1e-12));
  }
}

TEST_CASE("regular_polygon_mill hexagon side equals circumradius", "[core]") {
  SwarmParams p(1.0, 1.0, 1.0, kTwoPi / 6, 6);
  const Microstate state = regular_polygon_mill(p, 1.0);
  double min_pair = 1e300;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      min_pair = std::min(min_pair, (state.agents[i].pos() - state.agents[j].pos()).norm());
  REQUIRE(min_pair == Approx(1.0).margin(1e-12));
}

TEST_CASE("regular_polygon_mill has circliness zero", "[core]") {
  SwarmParams p(1.0, 1.0, 1.0, kTwoPi / 10, 10);
  const Microstate state = regular_polygon_mill(p, 2.0, {3.0, -1.0});
  REQUIRE(circliness(state) < 1e-12);
  const Vec2 mu = centroid(state);
  REQUIRE(mu.x == Approx(3.0).margin(1e-12));
  REQUIRE(mu.y == Approx(-1.0).margin(1e-12));
}

TEST_CASE("random_connected_init is deterministic and connected", "[core]") {
  SwarmParams p(3.0, 1.0, 1.0, kPi / 3, 10);
  const Microstate a = random_connected_init(p, 2.0, 1234);
  const Microstate b = random_connected_init(p, 2.0, 1234);
  REQUIRE(a.size() == 10);
  for (int i = 0; i < 10; ++i) {
    REQUIRE(a.agents[i].x == b.agents[i].x);
    REQUIRE(a.agents[i].y == b.agents[i].y);
    REQUIRE(a.agents[i].theta == b.agents[i].theta);
    REQUIRE(a.agents[i].theta >= -kPi);
    REQUIRE(a.agents[i].theta < kPi);
  }
  REQUIRE(algebraic_connectivity(disk_graph(a, p)) > 0.0);

  const Microstate c = random_connected_init(p, 2.0, 99);
  bool differs = false;
  for (int i = 0; i < 10; ++i) differs |= (a.agents[i].x != c.agents[i].x);
  REQUIRE(differs);
}

TEST_CASE("random_connected_init fails after the rejection cap", "[core]") {
  SwarmParams p(1.0, 1.0, 1.0, kPi / 3, 2);
  REQUIRE_THROWS_AS(random_connected_init(p, 100.0, 5, 50), std::runtime_error);
}

TEST_CASE("counterexample_config equal radii, mixed headings", "[core]") {
  SwarmParams p(1.0, 1.0, 1.0, kTwoPi / 6, 6);
  const Microstate state = counterexample_config(p, 1.0);
  const Vec2 mu = centroid(state);
  for (const auto& a : state.agents) REQUIRE((a.pos() - mu).norm() == Approx(1.0).margin(1e-12));
  REQUIRE(circliness(state) < 1e-12);

  SwarmParams p5(1.0, 1.0, 1.0, kTwoPi / 5, 5);
  REQUIRE_THROWS_AS(counterexample_config(p5, 1.0), std::invalid_argument);
}

TEST_CASE("seed mixing separates streams", "[core]") {
  REQUIRE(seed_combine(1, 2) != seed_combine(2, 1));
  REQUIRE(seed_combine(0, 0) != seed_combine(0, 1));
  Rng a(5), b(5);
  REQUIRE(a.next_u64() == b.next_u64());
  Rng c = a.split(1), d = a.split(2);
  REQUIRE(c.next_u64() != d.next_u64());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}
