#include "core/atlas.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/stationary.hpp"

namespace geocoil {

const char* top_type_name(TopType t) {
  switch (t) {
    case TopType::I: return "I";
    case TopType::II: return "II";
    case TopType::III: return "III";
    case TopType::IV: return "IV";
    case TopType::Marginal: return "Marginal";
  }
  return "?";
}

Vec3 boundary_residuals(const EpsTriple& eps) { return quadratic_forms(eps); }

TopType classify_type(const EpsTriple& eps, double tol) {
  int zeros = 0;
  int zero_idx = -1;
  for (int i = 0; i < 3; ++i) {
    if (std::fabs(eps[i]) <= tol) {
      ++zeros;
      zero_idx = i;
    }
  }
  if (zeros == 3) fail(Errc::AllZero, "all coefficients vanish");
  if (zeros == 2) return TopType::Marginal;
  if (zeros == 1) {
    // One vanishing coefficient: type IV when the remaining pair has opposite
    // signs; otherwise the input sits on a classification boundary.
    const double paired = eps[(zero_idx + 1) % 3] * eps[(zero_idx + 2) % 3];
    return paired < -tol ? TopType::IV : TopType::Marginal;
  }

  const double g1 = eps[1] * eps[2], g2 = eps[2] * eps[0], g3 = eps[0] * eps[1];
  if (std::min({g1, g2, g3}) > tol) {
    // Equal signs: types I and II, separated by the boundary quadratics.
    const Vec3 q = boundary_residuals(eps);
    const double qmin = std::min({q[0], q[1], q[2]});
    if (qmin > tol) return TopType::I;
    if (qmin < -tol) return TopType::II;
    return TopType::Marginal;
  }
  if (std::fabs(g1) <= tol || std::fabs(g2) <= tol || std::fabs(g3) <= tol) {
    return TopType::Marginal;
  }
  // Mixed signs: exactly one of the three pair patterns must hold.
  const int matches = (g1 > 0.0 && g3 <= 0.0 ? 1 : 0) + (g2 > 0.0 && g1 <= 0.0 ? 1 : 0) +
                      (g3 > 0.0 && g2 <= 0.0 ? 1 : 0);
  return matches == 1 ? TopType::III : TopType::Marginal;
}

RegionMap sample_region_map(int resolution) {
  if (resolution < 16) fail(Errc::InvalidArgument, "resolution must be at least 16");
  RegionMap map;
  map.resolution = resolution;
  for (int jv = 0; jv <= resolution; ++jv) {
    const double v = -1.0 + 2.0 * jv / resolution;
    for (int ju = 0; ju <= resolution; ++ju) {
      const double u = -1.0 + 2.0 * ju / resolution;
      const double r2 = u * u + v * v;
      if (r2 > 1.0) continue;
      const double w = std::sqrt(std::max(0.0, 1.0 - r2));
      TopType t = TopType::Marginal;
      try {
        t = classify_type(EpsTriple{u, v, w});
      } catch (const Error&) {
        // unreachable for unit vectors; keep Marginal as the defensive label
      }
      map.samples.push_back(RegionSample{u, v, t});
    }
  }
  return map;
}

}  // namespace geocoil
