#pragma once

#include <vector>

#include "core/surface.hpp"
#include "core/vec3.hpp"

namespace geocoil {

/// Topological class of the separatrix net, decided by sign conditions on
/// quadratic forms in the deformation coefficients.  Marginal marks
/// coefficients on (or within tolerance of) a boundary surface, where the
/// class is not defined by strict inequalities.
enum class TopType { I, II, III, IV, Marginal };

const char* top_type_name(TopType t);

/// The three boundary quadratics (q1, q2, q3); their zero sets are the conics
/// separating the net-type regions.
Vec3 boundary_residuals(const EpsTriple& eps);

/// Classifies a coefficient triple into net types I-IV.  All deciding
/// quantities (the coefficients themselves and the quadratics built from
/// them) are compared against tol, so callers working far from unit scale
/// should rescale first.  AllZero when every coefficient is within tol of 0.
TopType classify_type(const EpsTriple& eps, double tol = 1e-12);

/// One classified node of the projective coefficient disk: the unit
/// coefficient vector (u, v, sqrt(1-u^2-v^2)) with nonnegative third component.
struct RegionSample {
  double u = 0.0;
  double v = 0.0;
  TopType type = TopType::Marginal;
};

struct RegionMap {
  int resolution = 0;
  std::vector<RegionSample> samples;  // nodes with u^2 + v^2 <= 1, row-major
};

/// Samples the closed unit disk on a (resolution+1)^2 node grid.
/// InvalidArgument when resolution < 16.
RegionMap sample_region_map(int resolution);

}  // namespace geocoil
