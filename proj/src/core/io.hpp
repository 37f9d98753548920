#pragma once

#include <string>
#include <vector>

#include "core/atlas.hpp"
#include "core/averaged.hpp"
#include "core/compare.hpp"
#include "core/geodesic.hpp"
#include "core/separatrix.hpp"
#include "core/stationary.hpp"
#include "core/surface.hpp"

namespace geocoil {

/// Shortest exact decimal form of a double (printf %.17g), used by every CSV
/// writer so reruns are byte-identical.
std::string format_g17(double x);

/// CSV with header t,x1,x2,x3,v1,v2,v3,L1,L2,L3 and one row per sample.
std::string trajectory_csv(const Trajectory& traj);

/// CSV with header t,L1,L2,L3 and one row per sample.
std::string momentum_csv(const MomentumPath& path);

/// CSV with header u,v,type and one row per grid node inside the disk.
std::string region_csv(const RegionMap& map);

/// JSON array of stationary points: L0, family, stability, eigen ([re, im] pairs).
std::string stationary_json(const std::vector<StationaryPoint>& points);

/// JSON object with vertices (id, L0, family, stability), edges (from, to,
/// samples) and space ("Sphere" or "ProjectivePlane").
std::string graph_json(const SeparatrixGraph& g);

/// JSON report: horizon, eps_scale, max_angle_error and per-loop records.
std::string comparison_json(const ComparisonReport& report);

/// JSON block of the conservation monitors of a geodesic run.
std::string trajectory_stats_json(const Trajectory& traj);

/// JSON block of the conservation monitors of a slow-flow run.
std::string momentum_stats_json(const MomentumPath& path);

/// Writes content to path, creating parent directories; Io error on failure.
void write_text_file(const std::string& path, const std::string& content);

/// Reads a whole file; Io error when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace geocoil
