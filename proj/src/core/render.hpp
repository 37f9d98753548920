#pragma once

#include <string>
#include <vector>

#include "core/atlas.hpp"
#include "core/separatrix.hpp"
#include "core/vec3.hpp"

namespace geocoil {

/// Disk model of the projective plane: the upper-hemisphere representative of
/// an antipodal pair, projected to its first two components.
struct DiskPoint {
  double u = 0.0;
  double v = 0.0;
  bool boundary = false;  ///< u^2 + v^2 within 1e-9 of 1 (equator point)
};

/// Folds a unit vector to its canonical antipodal representative (third
/// component positive; ties broken by the second, then first component) and
/// drops the third coordinate.
DiskPoint to_disk(const Vec3& p);

/// Deterministic drawing parameters; the defaults are the canonical style
/// shared by every figure the tool emits.
struct RenderStyle {
  double canvas = 600.0;
  double radius = 270.0;
  double edge_width = 1.6;
  double overlay_width = 1.2;
  double glyph_size = 6.0;
};

/// Separatrix net on the projective disk: solid separatrix edges (split at
/// the equator with antipodal re-entry), focus/saddle glyphs, optional dashed
/// overlay curves (unit vectors).  Pure function of its inputs.
std::string render_net_svg(const SeparatrixGraph& g,
                           const std::vector<std::vector<Vec3>>& overlays = {},
                           const RenderStyle& style = {});

/// Region map of the coefficient disk, one filled cell per grid node, with a
/// fixed five-entry legend (types I-IV and Marginal).
std::string render_region_map_svg(const RegionMap& map, const RenderStyle& style = {});

/// Two momentum tracks on the projective disk: solid polyline through the
/// per-loop normals of an exact geodesic, dashed polyline for the slow-flow
/// solution.
std::string render_compare_svg(const std::vector<Vec3>& exact_normals,
                               const std::vector<Vec3>& averaged_track,
                               const RenderStyle& style = {});

}  // namespace geocoil
