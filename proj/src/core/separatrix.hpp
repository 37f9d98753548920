#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "core/atlas.hpp"
#include "core/stationary.hpp"
#include "core/surface.hpp"
#include "core/vec3.hpp"

namespace geocoil {

enum class GraphSpace { Sphere, ProjectivePlane };

const char* graph_space_name(GraphSpace s);

struct GraphVertex {
  Vec3 L;  ///< position at radius L_norm
  Family family = Family::S1a;
  Stability stability = Stability::Focus;
};

/// Oriented separatrix: samples run forward in time from the neighborhood of
/// vertex `from` to the neighborhood of vertex `to`.
struct GraphEdge {
  int from = -1;
  int to = -1;
  std::vector<Vec3> samples;
};

struct SeparatrixGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  GraphSpace space = GraphSpace::Sphere;
  double L_norm = 1.0;
  int unresolved = 0;  ///< traces that hit the time horizon without capture
};

struct TraceOptions {
  double tol = 1e-10;            ///< integrator tolerance
  double seed_offset = 1e-6;     ///< eigendirection offset, relative to L_norm
  double capture_radius = 1e-3;  ///< capture-ball radius, relative to L_norm
  double t_max_factor = 1e6;     ///< time horizon = factor / rate scale
  std::size_t max_edge_samples = 1024;
};

/// A momentum flow that conserves |L| and an energy; enough structure for
/// separatrix tracing.  rate_scale sets the slow timescale (the time horizon
/// is t_max_factor / rate_scale).
struct FlowField {
  std::function<Vec3(const Vec3&)> rhs;
  std::function<Mat3(const Vec3&)> jacobian;
  std::function<double(const Vec3&)> energy;
  double rate_scale = 1.0;
};

/// Traces every saddle's stable and unstable manifolds of the slow flow on
/// the momentum sphere |L| = L_norm and assembles the oriented graph.
/// Propagates enumeration errors (DegenerateEpsilon, Marginal); traces that
/// never reach a capture ball are counted in `unresolved`, not fatal.
SeparatrixGraph trace_separatrices(const EpsTriple& eps, double L_norm,
                                   const TraceOptions& opts = {});

/// Same construction for the slow momentum flow of a triaxial ellipsoid
/// (the rigid-body field L' = L x (B L), B = diag(1/a_i^2)): vertices are the
/// coordinate axes, the middle axis being the only saddle.
SeparatrixGraph trace_separatrices_ellipsoid(const std::array<double, 3>& axes, double L_norm,
                                             const TraceOptions& opts = {});

/// Generic driver used by both constructors above; exposed for testing.
SeparatrixGraph trace_flow(const FlowField& flow, const std::vector<GraphVertex>& representatives,
                           double L_norm, const TraceOptions& opts);

/// Identifies antipodal vertex/edge twins (L -> -L with time reversal) and
/// returns the quotient graph; representatives keep a nonnegative third
/// component (ties: second, then first).  AsymmetricInput when the graph is
/// not antipodally closed.
SeparatrixGraph quotient_antipodal(const SeparatrixGraph& g);

/// Maps the quotient graph's (focus, saddle) counts to a net type and checks
/// it against the closed-form classification: (7,6) I, (5,4) II, (3,2) III,
/// (2,1) IV.  UnknownCounts for any other pair; Consistency on mismatch.
TopType verify_type(const SeparatrixGraph& g, const EpsTriple& eps);

}  // namespace geocoil
