#pragma once

#include <vector>

#include "core/averaged.hpp"
#include "core/geodesic.hpp"
#include "core/surface.hpp"
#include "core/vec3.hpp"

namespace geocoil {

/// One per-loop comparison: the loop-averaged angular-momentum direction of
/// the exact geodesic against the slow-flow direction at the same time.
struct ComparisonRecord {
  double t_mid = 0.0;
  Vec3 exact_normal{};       ///< unit loop normal of the exact trajectory
  Vec3 averaged_direction{}; ///< unit slow-flow momentum at t_mid
  double angle_error = 0.0;  ///< angle between the two directions, in [0, pi]
};

struct ComparisonReport {
  std::vector<ComparisonRecord> records;
  double max_angle_error = 0.0;
  double horizon = 0.0;    ///< compared time span
  double eps_scale = 0.0;  ///< max |coefficient| of the surface
  Trajectory trajectory;   ///< the exact run (for rendering / inspection)
  MomentumPath path;       ///< the slow-flow run
};

/// Integrates the exact geodesic and the slow momentum flow from matching
/// initial data and compares loop normals against the slow solution.  The
/// initial point/velocity are repaired onto the surface first.  Requires a
/// small-coefficient surface (max |eps| <= 0.1).
ComparisonReport run_comparison(const Surface& surface, const Vec3& x0,
                                const Vec3& v0, double t_end, double tol);

}  // namespace geocoil
