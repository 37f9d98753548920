#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "core/surface.hpp"
#include "core/vec3.hpp"

namespace geocoil {

/// Point of the second-order flow: position on the surface, tangent velocity.
struct PhaseState {
  Vec3 x;
  Vec3 v;
  double t = 0.0;
};

/// Conservation monitors accumulated over an integration.
struct TrajectoryStats {
  double max_constraint_drift = 0.0;  ///< max |phi(x)| over stored samples
  double max_energy_drift = 0.0;      ///< max relative speed-squared drift over samples
  double max_step_constraint = 0.0;   ///< max |phi| seen before per-step repair
  double max_step_energy = 0.0;       ///< max relative speed drift before repair
};

struct Trajectory {
  std::vector<PhaseState> samples;
  Surface surface = Surface::quartic(EpsTriple{0.0, 0.0, 0.0});
  TrajectoryStats stats;
};

/// Mean plane normal of one quasi-circular loop of a trajectory.
struct LoopNormal {
  double t_mid = 0.0;
  Vec3 normal;
};

/// Validates the on-surface/tangent/nonzero-speed invariants and returns the
/// state (position and velocity are taken as given, not repaired).
PhaseState make_phase_state(const Surface& s, const Vec3& x, const Vec3& v, double t = 0.0);

/// Right side of the geodesic equation x'' = -[(v.Hv)/|g|^2] g as a first-order
/// pair (dx/dt, dv/dt).
std::pair<Vec3, Vec3> geodesic_rhs(const Surface& s, const PhaseState& state);

/// Adaptive integration of the geodesic flow with per-step constraint repair:
/// each accepted state is projected back to the surface, its velocity is
/// re-tangentialized, and the speed is rescaled to the initial speed.
Trajectory integrate_geodesic(const Surface& s, const PhaseState& init, double t_end, double tol);

Vec3 angular_momentum(const PhaseState& state);

/// Time derivative of the angular momentum along the flow, in the closed form
/// available for the quartic family (explicit coordinate sums).
Vec3 momentum_rhs_exact(const Surface& s, const PhaseState& state);

/// Splits a trajectory into loops at successive returns to the plane spanned
/// by the initial position and initial angular momentum, and returns the
/// normalized time-average of the angular momentum over each loop.
std::vector<LoopNormal> loop_normals(const Trajectory& traj);

}  // namespace geocoil
