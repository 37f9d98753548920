#include "core/compare.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace geocoil {

namespace {

/// Linear interpolation of the slow-flow momentum at time t.
Vec3 path_at(const MomentumPath& path, double t) {
  const auto& ts = path.t;
  if (ts.empty()) fail(Errc::TooShort, "empty momentum path");
  if (t <= ts.front()) return path.L.front();
  if (t >= ts.back()) return path.L.back();
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
  const std::size_t lo = hi - 1;
  const double span = ts[hi] - ts[lo];
  const double w = span > 0.0 ? (t - ts[lo]) / span : 0.0;
  return path.L[lo] * (1.0 - w) + path.L[hi] * w;
}

}  // namespace

ComparisonReport run_comparison(const Surface& surface, const Vec3& x0,
                                const Vec3& v0, double t_end, double tol) {
  if (!surface.is_quartic())
    fail(Errc::InvalidArgument, "comparison requires the quartic sphere");
  const EpsTriple eps = surface.eps();
  double scale = 0.0;
  for (double e : eps) scale = std::max(scale, std::abs(e));
  if (scale > 0.1)
    fail(Errc::InvalidArgument, "comparison requires max |eps| <= 0.1");

  const Vec3 x = surface.project_to_surface(x0);
  const Vec3 v = surface.project_velocity(x, v0);
  const PhaseState init = make_phase_state(surface, x, v);

  ComparisonReport report;
  report.horizon = t_end;
  report.eps_scale = scale;
  report.trajectory = integrate_geodesic(surface, init, t_end, tol);

  const std::vector<LoopNormal> normals = loop_normals(report.trajectory);

  const Vec3 L0 = angular_momentum(report.trajectory.samples.front());
  report.path = integrate_averaged(MomentumPoint{L0, eps}, t_end, tol);

  report.records.reserve(normals.size());
  for (const LoopNormal& ln : normals) {
    ComparisonRecord rec;
    rec.t_mid = ln.t_mid;
    rec.exact_normal = ln.normal;
    rec.averaged_direction = normalized(path_at(report.path, ln.t_mid));
    rec.angle_error = angle_between(rec.exact_normal, rec.averaged_direction);
    report.max_angle_error = std::max(report.max_angle_error, rec.angle_error);
    report.records.push_back(rec);
  }
  return report;
}

}  // namespace geocoil
