#include <doctest.h>

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/geodesic.hpp"
#include "core/surface.hpp"

using namespace geocoil;

namespace {

// Deterministic on-surface state generator.
PhaseState random_state(const Surface& s, std::mt19937& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Vec3 x;
  do {
    x = Vec3{coord(rng), coord(rng), coord(rng)};
  } while (norm(x) < 0.2);
  x = s.project_to_surface(normalized(x));
  Vec3 v = s.project_velocity(x, Vec3{coord(rng), coord(rng), coord(rng)});
  while (norm(v) < 0.1) {
    v = s.project_velocity(x, Vec3{coord(rng), coord(rng), coord(rng)});
  }
  return make_phase_state(s, x, v);
}

// Test-local independent coding of the constrained acceleration for the
// quartic family, written directly from the coordinate formulas.
Vec3 direct_quartic_acceleration(const EpsTriple& eps, const Vec3& x, const Vec3& v) {
  double vhv = 0.0, g2 = 0.0;
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    const double gi = 2.0 * x[i] + 4.0 * eps[i] * x[i] * x[i] * x[i];
    const double hii = 2.0 + 12.0 * eps[i] * x[i] * x[i];
    g[i] = gi;
    g2 += gi * gi;
    vhv += hii * v[i] * v[i];
  }
  return g * (-vhv / g2);
}

}  // namespace

TEST_CASE("acceleration matches the direct coordinate formula") {
  std::mt19937 rng(7);
  const Surface s = Surface::quartic(EpsTriple{0.02, 0.03, 0.04});
  for (int k = 0; k < 100; ++k) {
    const PhaseState st = random_state(s, rng);
    const auto [dx, dv] = geodesic_rhs(s, st);
    CHECK(norm(dx - st.v) == 0.0);
    const Vec3 direct = direct_quartic_acceleration(s.eps(), st.x, st.v);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(dv[i] - direct[i]) < 1e-14);
  }
}

TEST_CASE("momentum derivative equals x cross acceleration") {
  // L = x cross v, so dL/dt = x cross a along the flow; the closed-form
  // momentum right side must agree with that chain-rule evaluation.
  std::mt19937 rng(8);
  const Surface s = Surface::quartic(EpsTriple{-0.04, 0.01, 0.05});
  for (int k = 0; k < 100; ++k) {
    const PhaseState st = random_state(s, rng);
    const auto [dx, dv] = geodesic_rhs(s, st);
    const Vec3 oracle = cross(st.x, dv);
    const Vec3 closed = momentum_rhs_exact(s, st);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(closed[i] - oracle[i]) < 1e-12);
  }
}

TEST_CASE("round sphere geodesics are great circles") {
  const Surface s = Surface::quartic(EpsTriple{0.0, 0.0, 0.0});
  const Vec3 x0{1.0, 0.0, 0.0};
  const Vec3 v0{0.0, 1.0, 0.0};
  const PhaseState init = make_phase_state(s, x0, v0);
  const double two_pi = 2.0 * std::acos(-1.0);
  const Trajectory traj = integrate_geodesic(s, init, two_pi, 1e-12);
  const PhaseState& last = traj.samples.back();
  CHECK(norm(last.x - x0) < 1e-6);
  CHECK(norm(last.v - v0) < 1e-6);
  // Mid-course spot check against cos/sin motion.
  for (const PhaseState& p : traj.samples) {
    CHECK(std::abs(p.x[0] - std::cos(p.t)) < 1e-6);
    CHECK(std::abs(p.x[1] - std::sin(p.t)) < 1e-6);
    CHECK(std::abs(p.x[2]) < 1e-9);
  }
}

TEST_CASE("round sphere conserves the momentum vector") {
  const Surface s = Surface::quartic(EpsTriple{0.0, 0.0, 0.0});
  std::mt19937 rng(9);
  const PhaseState init = random_state(s, rng);
  const Vec3 L0 = angular_momentum(init);
  const Trajectory traj = integrate_geodesic(s, init, 100.0, 1e-10);
  double worst = 0.0;
  for (const PhaseState& p : traj.samples)
    worst = std::max(worst, norm(angular_momentum(p) - L0));
  CHECK(worst <= 1e-9 * norm(L0));
}

TEST_CASE("integration respects the surface and speed invariants") {
  const Surface s = Surface::quartic(EpsTriple{0.02, 0.03, 0.04});
  std::mt19937 rng(10);
  const PhaseState init = random_state(s, rng);
  const Trajectory traj = integrate_geodesic(s, init, 50.0, 1e-10);
  CHECK(traj.stats.max_constraint_drift <= 1e-9);
  CHECK(traj.stats.max_energy_drift <= 1e-8);
  CHECK(traj.samples.size() >= 100);
  CHECK(traj.samples.front().t == 0.0);
  CHECK(std::abs(traj.samples.back().t - 50.0) < 1e-9);
  // Positive deformation keeps the surface inside the unit ball.
  for (const PhaseState& p : traj.samples) CHECK(norm(p.x) <= 1.0 + 1e-12);
}

TEST_CASE("time reversal retraces the path") {
  const Surface s = Surface::quartic(EpsTriple{0.05, -0.03, 0.02});
  std::mt19937 rng(11);
  const PhaseState init = random_state(s, rng);
  const Trajectory fwd = integrate_geodesic(s, init, 5.0, 1e-12);
  const PhaseState& end = fwd.samples.back();
  const PhaseState back = make_phase_state(s, end.x, -end.v);
  const Trajectory rev = integrate_geodesic(s, back, 5.0, 1e-12);
  CHECK(norm(rev.samples.back().x - init.x) < 1e-6);
  CHECK(norm(rev.samples.back().v + init.v) < 1e-6);
}

TEST_CASE("invalid integration parameters are rejected") {
  const Surface s = Surface::quartic(EpsTriple{0.0, 0.0, 0.0});
  const PhaseState init =
      make_phase_state(s, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0});
  CHECK_THROWS_AS(integrate_geodesic(s, init, -1.0, 1e-10), Error);
  CHECK_THROWS_AS(integrate_geodesic(s, init, 1.0, 1e-3), Error);
  CHECK_THROWS_AS(integrate_geodesic(s, init, 1.0, 1e-15), Error);
}

TEST_CASE("off-surface or non-tangent initial data is rejected") {
  const Surface s = Surface::quartic(EpsTriple{0.02, 0.03, 0.04});
  CHECK_THROWS_AS(make_phase_state(s, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}),
                  Error);  // phi(1,0,0) = 0.02, off surface
  const Vec3 x = s.project_to_surface(Vec3{1.0, 0.0, 0.0});
  CHECK_THROWS_AS(make_phase_state(s, x, Vec3{1.0, 0.0, 0.0}), Error);  // normal
  CHECK_THROWS_AS(make_phase_state(s, x, Vec3{0.0, 0.0, 0.0}), Error);  // zero
}

TEST_CASE("loop normals of a great circle reproduce the momentum direction") {
  const Surface s = Surface::quartic(EpsTriple{0.0, 0.0, 0.0});
  const Vec3 x0{1.0, 0.0, 0.0};
  const Vec3 v0 = normalized(Vec3{0.0, 1.0, 1.0});
  const PhaseState init = make_phase_state(s, x0, v0);
  const Trajectory traj = integrate_geodesic(s, init, 40.0, 1e-11);
  const Vec3 l_hat = normalized(angular_momentum(init));
  const auto normals = loop_normals(traj);
  // 40 time units at unit speed: six full loops.
  CHECK(normals.size() == 6);
  double prev = -1.0;
  for (const LoopNormal& ln : normals) {
    CHECK(norm(ln.normal - l_hat) < 1e-6);
    CHECK(ln.t_mid > prev);
    prev = ln.t_mid;
  }
}

TEST_CASE("too short a trajectory yields no loops") {
  const Surface s = Surface::quartic(EpsTriple{0.0, 0.0, 0.0});
  const PhaseState init =
      make_phase_state(s, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0});
  const Trajectory traj = integrate_geodesic(s, init, 1.0, 1e-10);
  try {
    (void)loop_normals(traj);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooShort);
  }
}
