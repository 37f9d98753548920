#include "core/separatrix.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "core/averaged.hpp"
#include "core/error.hpp"
#include "core/ode.hpp"

namespace geocoil {

namespace {

/// Orthonormal tangent basis at a point of the momentum sphere, chosen
/// deterministically (pivot on the smallest component).
std::pair<Vec3, Vec3> tangent_basis(const Vec3& unit) {
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::fabs(unit[i]) < std::fabs(unit[axis])) axis = i;
  }
  Vec3 e_axis{0.0, 0.0, 0.0};
  e_axis[axis] = 1.0;
  const Vec3 t1 = normalized(cross(unit, e_axis));
  return {t1, cross(unit, t1)};
}

/// Eigendirections of the flow restricted to the tangent plane at a saddle:
/// unit tangent vectors for the positive and negative eigenvalue.
struct SaddleDirections {
  Vec3 unstable;
  Vec3 stable;
};

SaddleDirections saddle_directions(const FlowField& flow, const Vec3& position) {
  const Vec3 unit = normalized(position);
  const auto [t1, t2] = tangent_basis(unit);
  const Mat3 j3 = flow.jacobian(position);
  const Vec3 jt1 = j3.apply(t1), jt2 = j3.apply(t2);
  const double a = dot(t1, jt1), b = dot(t1, jt2);
  const double c = dot(t2, jt1), d = dot(t2, jt2);
  const double half_tr = 0.5 * (a + d);
  const double disc = half_tr * half_tr - (a * d - b * c);
  if (!(disc > 0.0)) fail(Errc::Consistency, "saddle vertex has no real eigenvalue pair");
  const double root = std::sqrt(disc);

  auto eigvec = [&](double lambda) {
    // Rows of (J - lambda I) are (a-l, b) and (c, d-l); the eigenvector is
    // orthogonal to the better-conditioned row.
    double x, y;
    if (std::fabs(a - lambda) + std::fabs(b) >= std::fabs(c) + std::fabs(d - lambda)) {
      x = -b;
      y = a - lambda;
    } else {
      x = -(d - lambda);
      y = c;
    }
    const double n = std::hypot(x, y);
    if (n < 1e-300) fail(Errc::Consistency, "degenerate saddle eigenvector");
    return normalized((x / n) * t1 + (y / n) * t2);
  };
  return SaddleDirections{eigvec(half_tr + root), eigvec(half_tr - root)};
}

std::vector<Vec3> decimate(const std::vector<Vec3>& samples, std::size_t max_samples) {
  if (samples.size() <= max_samples || max_samples < 2) return samples;
  std::vector<Vec3> out;
  out.reserve(max_samples);
  const std::size_t n = samples.size();
  const std::size_t stride = (n - 2 + (max_samples - 2)) / (max_samples - 1);
  for (std::size_t i = 0; i + 1 < n; i += stride) out.push_back(samples[i]);
  out.push_back(samples.back());
  return out;
}

/// Point at a fractional arclength along a polyline (chord-length measure).
Vec3 point_at_fraction(const std::vector<Vec3>& samples, double frac) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) total += norm(samples[i + 1] - samples[i]);
  if (total <= 0.0) return samples.front();
  double target = frac * total, acc = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double seg = norm(samples[i + 1] - samples[i]);
    if (acc + seg >= target) {
      const double w = seg > 0.0 ? (target - acc) / seg : 0.0;
      return samples[i] + w * (samples[i + 1] - samples[i]);
    }
    acc += seg;
  }
  return samples.back();
}

constexpr double kProbeFractions[3] = {0.25, 0.5, 0.75};

bool same_polyline(const std::vector<Vec3>& a, const std::vector<Vec3>& b, double tol,
                   bool negate_reverse_b) {
  for (double f : kProbeFractions) {
    const Vec3 pa = point_at_fraction(a, f);
    Vec3 pb = point_at_fraction(b, negate_reverse_b ? 1.0 - f : f);
    if (negate_reverse_b) pb = -pb;
    if (norm(pa - pb) > tol) return false;
  }
  return true;
}

/// One manifold trace.  Returns the captured edge, or nullopt when the time
/// horizon is exceeded (counted by the caller as unresolved).
std::optional<GraphEdge> trace_one(const FlowField& flow,
                                   const std::vector<GraphVertex>& vertices, int source,
                                   const Vec3& direction, bool backward, double L_norm,
                                   const TraceOptions& opts) {
  const double capture = opts.capture_radius * L_norm;
  const double escape = 10.0 * capture;
  const double t_max = opts.t_max_factor / flow.rate_scale;

  Vec3 seed = vertices[source].L + (opts.seed_offset * L_norm) * direction;
  seed = (L_norm / norm(seed)) * seed;

  std::vector<Vec3> samples{seed};
  bool escaped = false;
  int captured = -1;

  std::array<double, 3> y = {seed[0], seed[1], seed[2]};
  auto rhs = [&](double /*t*/, const std::array<double, 3>& st, std::array<double, 3>& dy) {
    Vec3 d = flow.rhs(Vec3{st[0], st[1], st[2]});
    if (backward) d = -d;
    dy = {d[0], d[1], d[2]};
  };
  auto on_accept = [&](double /*t*/, std::array<double, 3>& st) -> bool {
    Vec3 L{st[0], st[1], st[2]};
    L = (L_norm / norm(L)) * L;
    st = {L[0], L[1], L[2]};
    samples.push_back(L);
    if (!escaped) {
      if (norm(L - vertices[source].L) > escape) escaped = true;
    }
    for (int w = 0; w < static_cast<int>(vertices.size()); ++w) {
      if (w == source && !escaped) continue;
      if (norm(L - vertices[w].L) < capture) {
        captured = w;
        return false;
      }
    }
    return true;
  };

  OdeOptions oo;
  oo.tol = opts.tol;
  integrate_adaptive<3>(rhs, y, 0.0, t_max, oo, on_accept);
  if (captured < 0) return std::nullopt;

  GraphEdge e;
  if (backward) {
    std::reverse(samples.begin(), samples.end());
    e.from = captured;
    e.to = source;
  } else {
    e.from = source;
    e.to = captured;
  }
  e.samples = decimate(samples, opts.max_edge_samples);
  return e;
}

}  // namespace

const char* graph_space_name(GraphSpace s) {
  return s == GraphSpace::Sphere ? "Sphere" : "ProjectivePlane";
}

SeparatrixGraph trace_flow(const FlowField& flow, const std::vector<GraphVertex>& representatives,
                           double L_norm, const TraceOptions& opts) {
  if (!(L_norm > 0.0)) fail(Errc::InvalidArgument, "momentum norm must be positive");

  SeparatrixGraph g;
  g.space = GraphSpace::Sphere;
  g.L_norm = L_norm;
  for (const GraphVertex& r : representatives) {
    GraphVertex plus = r, minus = r;
    plus.L = L_norm * normalized(r.L);
    minus.L = -plus.L;
    g.vertices.push_back(plus);
    g.vertices.push_back(minus);
  }

  std::vector<GraphEdge> raw;
  for (int pass = 0; pass < 2; ++pass) {
    const bool backward = pass == 1;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
      if (g.vertices[v].stability != Stability::Saddle) continue;
      const SaddleDirections dirs = saddle_directions(flow, g.vertices[v].L);
      const Vec3 base = backward ? dirs.stable : dirs.unstable;
      for (double sign : {1.0, -1.0}) {
        auto edge = trace_one(flow, g.vertices, v, sign * base, backward, L_norm, opts);
        if (edge) {
          raw.push_back(std::move(*edge));
        } else {
          ++g.unresolved;
        }
      }
    }
  }

  // The backward traces retrace the forward heteroclinics; merge geometric
  // duplicates (same endpoints and same curve at three arclength probes).
  const double merge_tol = 0.05 * L_norm;
  for (const GraphEdge& e : raw) {
    bool duplicate = false;
    for (const GraphEdge& kept : g.edges) {
      if (kept.from == e.from && kept.to == e.to &&
          same_polyline(kept.samples, e.samples, merge_tol, false)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) g.edges.push_back(e);
  }
  return g;
}

SeparatrixGraph trace_separatrices(const EpsTriple& eps, double L_norm, const TraceOptions& opts) {
  const auto points = enumerate_stationary(eps);
  std::vector<GraphVertex> reps;
  reps.reserve(points.size());
  for (const auto& p : points) reps.push_back(GraphVertex{p.L0, p.family, p.stability});

  FlowField flow;
  flow.rhs = [eps](const Vec3& L) { return averaged_rhs(MomentumPoint{L, eps}); };
  flow.jacobian = [eps](const Vec3& L) { return averaged_jacobian(MomentumPoint{L, eps}); };
  flow.energy = [eps](const Vec3& L) { return hamiltonian(MomentumPoint{L, eps}); };
  flow.rate_scale = std::max({std::fabs(eps[0]), std::fabs(eps[1]), std::fabs(eps[2])});
  return trace_flow(flow, reps, L_norm, opts);
}

SeparatrixGraph trace_separatrices_ellipsoid(const std::array<double, 3>& axes, double L_norm,
                                             const TraceOptions& opts) {
  for (double a : axes) {
    if (!(a > 0.0)) fail(Errc::InvalidArgument, "semi-axes must be positive");
  }
  const Vec3 beta{1.0 / (axes[0] * axes[0]), 1.0 / (axes[1] * axes[1]),
                  1.0 / (axes[2] * axes[2])};
  const double spread = std::max({std::fabs(beta[0] - beta[1]), std::fabs(beta[1] - beta[2]),
                                  std::fabs(beta[2] - beta[0])});
  const double least = std::min({std::fabs(beta[0] - beta[1]), std::fabs(beta[1] - beta[2]),
                                 std::fabs(beta[2] - beta[0])});
  if (least <= 1e-12) {
    fail(Errc::Marginal, "equal semi-axes give a degenerate momentum flow");
  }

  // The middle inertia coefficient marks the unstable axis.
  int middle = 0;
  for (int i = 0; i < 3; ++i) {
    int below = 0, above = 0;
    for (int j = 0; j < 3; ++j) {
      if (beta[j] < beta[i]) ++below;
      if (beta[j] > beta[i]) ++above;
    }
    if (below == 1 && above == 1) middle = i;
  }

  const Family axis_family[3] = {Family::S1c, Family::S1b, Family::S1a};  // x, y, z axes
  std::vector<GraphVertex> reps;
  for (int i = 0; i < 3; ++i) {
    Vec3 L0{0.0, 0.0, 0.0};
    L0[i] = 1.0;
    reps.push_back(GraphVertex{L0, axis_family[i],
                               i == middle ? Stability::Saddle : Stability::Focus});
  }

  FlowField flow;
  flow.rhs = [beta](const Vec3& L) {
    return cross(L, Vec3{beta[0] * L[0], beta[1] * L[1], beta[2] * L[2]});
  };
  flow.jacobian = [beta](const Vec3& L) {
    Mat3 j;
    j.rows[0] = Vec3{0.0, (beta[2] - beta[1]) * L[2], (beta[2] - beta[1]) * L[1]};
    j.rows[1] = Vec3{(beta[0] - beta[2]) * L[2], 0.0, (beta[0] - beta[2]) * L[0]};
    j.rows[2] = Vec3{(beta[1] - beta[0]) * L[1], (beta[1] - beta[0]) * L[0], 0.0};
    return j;
  };
  flow.energy = [beta](const Vec3& L) {
    return 0.5 * (beta[0] * L[0] * L[0] + beta[1] * L[1] * L[1] + beta[2] * L[2] * L[2]);
  };
  flow.rate_scale = spread;
  return trace_flow(flow, reps, L_norm, opts);
}

namespace {

/// True when v is the canonical representative of the antipodal pair {v, -v}.
bool is_representative(const Vec3& v) {
  if (v[2] != 0.0) return v[2] > 0.0;
  if (v[1] != 0.0) return v[1] > 0.0;
  return v[0] >= 0.0;
}

}  // namespace

SeparatrixGraph quotient_antipodal(const SeparatrixGraph& g) {
  if (g.space != GraphSpace::Sphere) {
    fail(Errc::InvalidArgument, "quotient requires a sphere graph");
  }
  const double pair_tol = 1e-9 * g.L_norm;
  const int n = static_cast<int>(g.vertices.size());

  std::vector<int> partner(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i && norm(g.vertices[i].L + g.vertices[j].L) <= pair_tol) {
        if (partner[i] >= 0) fail(Errc::AsymmetricInput, "vertex has multiple antipodes");
        partner[i] = j;
      }
    }
    if (partner[i] < 0) fail(Errc::AsymmetricInput, "vertex lacks an antipodal twin");
  }

  SeparatrixGraph q;
  q.space = GraphSpace::ProjectivePlane;
  q.L_norm = g.L_norm;
  q.unresolved = g.unresolved;

  std::vector<int> proj_id(n, -1);
  for (int i = 0; i < n; ++i) {
    if (proj_id[i] >= 0) continue;
    const int rep = is_representative(g.vertices[i].L) ? i : partner[i];
    const int id = static_cast<int>(q.vertices.size());
    q.vertices.push_back(g.vertices[rep]);
    proj_id[i] = proj_id[partner[i]] = id;
  }

  // Pair each edge with its twin: the antipodal, time-reversed curve.
  const double twin_tol = 0.05 * g.L_norm;
  const int m = static_cast<int>(g.edges.size());
  std::vector<bool> used(m, false);
  for (int i = 0; i < m; ++i) {
    if (used[i]) continue;
    used[i] = true;
    int twin = -1;
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      const GraphEdge& a = g.edges[i];
      const GraphEdge& b = g.edges[j];
      if (b.from == partner[a.to] && b.to == partner[a.from] &&
          same_polyline(a.samples, b.samples, twin_tol, true)) {
        twin = j;
        break;
      }
    }
    if (twin < 0) fail(Errc::AsymmetricInput, "edge lacks an antipodal twin");
    used[twin] = true;
    GraphEdge e = g.edges[i];
    e.from = proj_id[e.from];
    e.to = proj_id[e.to];
    q.edges.push_back(std::move(e));
  }
  if (2 * static_cast<int>(q.vertices.size()) != n ||
      2 * static_cast<int>(q.edges.size()) != m) {
    fail(Errc::AsymmetricInput, "quotient did not halve the graph");
  }
  return q;
}

TopType verify_type(const SeparatrixGraph& g, const EpsTriple& eps) {
  if (g.space != GraphSpace::ProjectivePlane) {
    fail(Errc::InvalidArgument, "type verification requires the quotient graph");
  }
  int foci = 0, saddles = 0;
  for (const auto& v : g.vertices) {
    (v.stability == Stability::Focus ? foci : saddles) += 1;
  }
  TopType t;
  if (foci == 7 && saddles == 6) {
    t = TopType::I;
  } else if (foci == 5 && saddles == 4) {
    t = TopType::II;
  } else if (foci == 3 && saddles == 2) {
    t = TopType::III;
  } else if (foci == 2 && saddles == 1) {
    t = TopType::IV;
  } else {
    fail(Errc::UnknownCounts, "vertex counts match no known net type");
  }
  if (classify_type(eps) != t) {
    fail(Errc::Consistency, "net counts disagree with the closed-form classification");
  }
  return t;
}

}  // namespace geocoil
