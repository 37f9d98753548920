#include "geocoil/geocoil.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "core/atlas.hpp"
#include "core/averaged.hpp"
#include "core/compare.hpp"
#include "core/error.hpp"
#include "core/geodesic.hpp"
#include "core/io.hpp"
#include "core/render.hpp"
#include "core/separatrix.hpp"
#include "core/stationary.hpp"
#include "core/surface.hpp"

using namespace geocoil;

/* Opaque handle definitions. */
struct geocoil_surface {
  Surface s;
};
struct geocoil_trajectory {
  Trajectory t;
};
struct geocoil_path {
  MomentumPath p;
};
struct geocoil_stationary_set {
  std::vector<StationaryPoint> pts;
};
struct geocoil_graph {
  SeparatrixGraph g;
};
struct geocoil_region_map {
  RegionMap m;
};
struct geocoil_comparison {
  ComparisonReport r;
};

namespace {

thread_local std::string g_last_error;

geocoil_status map_errc(Errc c) {
  switch (c) {
    case Errc::InvalidArgument: return GEOCOIL_ERR_INVALID_ARGUMENT;
    case Errc::NonConvergence: return GEOCOIL_ERR_NON_CONVERGENCE;
    case Errc::DegenerateGradient: return GEOCOIL_ERR_DEGENERATE_GRADIENT;
    case Errc::FramePole: return GEOCOIL_ERR_FRAME_POLE;
    case Errc::StepFailure: return GEOCOIL_ERR_STEP_FAILURE;
    case Errc::TooShort: return GEOCOIL_ERR_TOO_SHORT;
    case Errc::DegenerateEpsilon: return GEOCOIL_ERR_DEGENERATE_EPSILON;
    case Errc::Marginal: return GEOCOIL_ERR_MARGINAL;
    case Errc::NotStationary: return GEOCOIL_ERR_NOT_STATIONARY;
    case Errc::UnresolvedEdge: return GEOCOIL_ERR_UNRESOLVED_EDGE;
    case Errc::AsymmetricInput: return GEOCOIL_ERR_ASYMMETRIC_INPUT;
    case Errc::UnknownCounts: return GEOCOIL_ERR_UNKNOWN_COUNTS;
    case Errc::Consistency: return GEOCOIL_ERR_CONSISTENCY;
    case Errc::VariantMismatch: return GEOCOIL_ERR_VARIANT_MISMATCH;
    case Errc::AllZero: return GEOCOIL_ERR_ALL_ZERO;
    case Errc::Io: return GEOCOIL_ERR_IO;
  }
  return GEOCOIL_ERR_INTERNAL;
}

/* Runs fn, translating exceptions into status codes. */
template <class Fn>
geocoil_status wrap(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GEOCOIL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GEOCOIL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return GEOCOIL_ERR_INTERNAL;
  }
}

geocoil_status out_string(const std::string& s, char** out) {
  if (out == nullptr) {
    g_last_error = "null out-parameter";
    return GEOCOIL_ERR_INVALID_ARGUMENT;
  }
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (buf == nullptr) {
    g_last_error = "allocation failed";
    return GEOCOIL_ERR_INTERNAL;
  }
  std::memcpy(buf, s.data(), s.size());
  buf[s.size()] = '\0';
  *out = buf;
  return GEOCOIL_OK;
}

Vec3 to_vec(const double a[3]) { return Vec3{a[0], a[1], a[2]}; }

EpsTriple to_eps(const double a[3]) { return EpsTriple{a[0], a[1], a[2]}; }

geocoil_status require(bool ok, const char* msg) {
  if (ok) return GEOCOIL_OK;
  g_last_error = msg;
  return GEOCOIL_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* geocoil_status_name(geocoil_status s) {
  switch (s) {
    case GEOCOIL_OK: return "ok";
    case GEOCOIL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case GEOCOIL_ERR_NON_CONVERGENCE: return "non_convergence";
    case GEOCOIL_ERR_DEGENERATE_GRADIENT: return "degenerate_gradient";
    case GEOCOIL_ERR_FRAME_POLE: return "frame_pole";
    case GEOCOIL_ERR_STEP_FAILURE: return "step_failure";
    case GEOCOIL_ERR_TOO_SHORT: return "too_short";
    case GEOCOIL_ERR_DEGENERATE_EPSILON: return "degenerate_epsilon";
    case GEOCOIL_ERR_MARGINAL: return "marginal";
    case GEOCOIL_ERR_NOT_STATIONARY: return "not_stationary";
    case GEOCOIL_ERR_UNRESOLVED_EDGE: return "unresolved_edge";
    case GEOCOIL_ERR_ASYMMETRIC_INPUT: return "asymmetric_input";
    case GEOCOIL_ERR_UNKNOWN_COUNTS: return "unknown_counts";
    case GEOCOIL_ERR_CONSISTENCY: return "consistency";
    case GEOCOIL_ERR_VARIANT_MISMATCH: return "variant_mismatch";
    case GEOCOIL_ERR_ALL_ZERO: return "all_zero";
    case GEOCOIL_ERR_IO: return "io";
    case GEOCOIL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* geocoil_last_error_message(void) { return g_last_error.c_str(); }

void geocoil_string_free(char* s) { std::free(s); }

/* ---- surfaces ---- */

geocoil_status geocoil_surface_create_quartic(const double eps[3],
                                              geocoil_surface** out) {
  if (auto st = require(eps && out, "null argument")) return st;
  return wrap([&] { *out = new geocoil_surface{Surface::quartic(to_eps(eps))}; });
}

geocoil_status geocoil_surface_create_ellipsoid(const double axes[3],
                                                geocoil_surface** out) {
  if (auto st = require(axes && out, "null argument")) return st;
  return wrap([&] {
    *out = new geocoil_surface{
        Surface::ellipsoid(std::array<double, 3>{axes[0], axes[1], axes[2]})};
  });
}

void geocoil_surface_free(geocoil_surface* s) { delete s; }

/* ---- geodesic flow ---- */

geocoil_status geocoil_geodesic_run(const geocoil_surface* s, const double x0[3],
                                    const double v0[3], double t_end, double tol,
                                    geocoil_trajectory** out) {
  if (auto st = require(s && x0 && v0 && out, "null argument")) return st;
  return wrap([&] {
    const Vec3 x = s->s.project_to_surface(to_vec(x0));
    const Vec3 v = s->s.project_velocity(x, to_vec(v0));
    const PhaseState init = make_phase_state(s->s, x, v);
    *out = new geocoil_trajectory{integrate_geodesic(s->s, init, t_end, tol)};
  });
}

void geocoil_trajectory_free(geocoil_trajectory* t) { delete t; }

size_t geocoil_trajectory_size(const geocoil_trajectory* t) {
  return t ? t->t.samples.size() : 0;
}

geocoil_status geocoil_trajectory_csv(const geocoil_trajectory* t, char** out) {
  if (auto st = require(t != nullptr, "null trajectory")) return st;
  std::string s;
  if (auto st = wrap([&] { s = trajectory_csv(t->t); })) return st;
  return out_string(s, out);
}

geocoil_status geocoil_trajectory_stats_json(const geocoil_trajectory* t,
                                             char** out) {
  if (auto st = require(t != nullptr, "null trajectory")) return st;
  std::string s;
  if (auto st = wrap([&] { s = trajectory_stats_json(t->t); })) return st;
  return out_string(s, out);
}

/* ---- slow flow ---- */

geocoil_status geocoil_averaged_run(const double eps[3], const double L0[3],
                                    double t_end, double tol, geocoil_path** out) {
  if (auto st = require(eps && L0 && out, "null argument")) return st;
  return wrap([&] {
    *out = new geocoil_path{
        integrate_averaged(MomentumPoint{to_vec(L0), to_eps(eps)}, t_end, tol)};
  });
}

void geocoil_path_free(geocoil_path* p) { delete p; }

size_t geocoil_path_size(const geocoil_path* p) { return p ? p->p.t.size() : 0; }

geocoil_status geocoil_path_csv(const geocoil_path* p, char** out) {
  if (auto st = require(p != nullptr, "null path")) return st;
  std::string s;
  if (auto st = wrap([&] { s = momentum_csv(p->p); })) return st;
  return out_string(s, out);
}

geocoil_status geocoil_path_stats_json(const geocoil_path* p, char** out) {
  if (auto st = require(p != nullptr, "null path")) return st;
  std::string s;
  if (auto st = wrap([&] { s = momentum_stats_json(p->p); })) return st;
  return out_string(s, out);
}

/* ---- stationary analysis ---- */

geocoil_status geocoil_stationary_enumerate(const double eps[3],
                                            geocoil_stationary_set** out) {
  if (auto st = require(eps && out, "null argument")) return st;
  return wrap([&] {
    *out = new geocoil_stationary_set{enumerate_stationary(to_eps(eps))};
  });
}

void geocoil_stationary_set_free(geocoil_stationary_set* s) { delete s; }

size_t geocoil_stationary_count(const geocoil_stationary_set* s) {
  return s ? s->pts.size() : 0;
}

geocoil_status geocoil_stationary_json(const geocoil_stationary_set* s,
                                       char** out) {
  if (auto st = require(s != nullptr, "null set")) return st;
  std::string j;
  if (auto st = wrap([&] { j = stationary_json(s->pts); })) return st;
  return out_string(j, out);
}

/* ---- separatrix net ---- */

geocoil_status geocoil_net_trace(const geocoil_surface* s, double L_norm,
                                 double tol, geocoil_graph** out) {
  if (auto st = require(s && out, "null argument")) return st;
  return wrap([&] {
    TraceOptions opts;
    opts.tol = tol;
    if (s->s.is_quartic())
      *out = new geocoil_graph{trace_separatrices(s->s.eps(), L_norm, opts)};
    else
      *out = new geocoil_graph{
          trace_separatrices_ellipsoid(s->s.axes(), L_norm, opts)};
  });
}

geocoil_status geocoil_graph_quotient(const geocoil_graph* g, geocoil_graph** out) {
  if (auto st = require(g && out, "null argument")) return st;
  return wrap([&] { *out = new geocoil_graph{quotient_antipodal(g->g)}; });
}

void geocoil_graph_free(geocoil_graph* g) { delete g; }

geocoil_status geocoil_graph_counts(const geocoil_graph* g, int* foci,
                                    int* saddles, int* edges, int* unresolved) {
  if (auto st = require(g != nullptr, "null graph")) return st;
  int nf = 0, ns = 0;
  for (const GraphVertex& v : g->g.vertices)
    (v.stability == Stability::Focus ? nf : ns) += 1;
  if (foci) *foci = nf;
  if (saddles) *saddles = ns;
  if (edges) *edges = static_cast<int>(g->g.edges.size());
  if (unresolved) *unresolved = g->g.unresolved;
  return GEOCOIL_OK;
}

geocoil_status geocoil_net_verify(const geocoil_graph* g, const double eps[3],
                                  char** out) {
  if (auto st = require(g && eps, "null argument")) return st;
  std::string name;
  if (auto st = wrap([&] { name = top_type_name(verify_type(g->g, to_eps(eps))); }))
    return st;
  return out_string(name, out);
}

geocoil_status geocoil_graph_json(const geocoil_graph* g, char** out) {
  if (auto st = require(g != nullptr, "null graph")) return st;
  std::string s;
  if (auto st = wrap([&] { s = graph_json(g->g); })) return st;
  return out_string(s, out);
}

geocoil_status geocoil_graph_svg(const geocoil_graph* g, char** out) {
  if (auto st = require(g != nullptr, "null graph")) return st;
  std::string s;
  if (auto st = wrap([&] { s = render_net_svg(g->g); })) return st;
  return out_string(s, out);
}

/* ---- classification and region map ---- */

geocoil_status geocoil_classify_type(const double eps[3], char** out) {
  if (auto st = require(eps != nullptr, "null argument")) return st;
  std::string name;
  if (auto st = wrap([&] { name = top_type_name(classify_type(to_eps(eps))); }))
    return st;
  return out_string(name, out);
}

geocoil_status geocoil_region_map_run(int resolution, geocoil_region_map** out) {
  if (auto st = require(out != nullptr, "null argument")) return st;
  return wrap([&] { *out = new geocoil_region_map{sample_region_map(resolution)}; });
}

void geocoil_region_map_free(geocoil_region_map* m) { delete m; }

geocoil_status geocoil_region_map_csv(const geocoil_region_map* m, char** out) {
  if (auto st = require(m != nullptr, "null map")) return st;
  std::string s;
  if (auto st = wrap([&] { s = region_csv(m->m); })) return st;
  return out_string(s, out);
}

geocoil_status geocoil_region_map_svg(const geocoil_region_map* m, char** out) {
  if (auto st = require(m != nullptr, "null map")) return st;
  std::string s;
  if (auto st = wrap([&] { s = render_region_map_svg(m->m); })) return st;
  return out_string(s, out);
}

/* ---- comparison ---- */

geocoil_status geocoil_compare_run(const double eps[3], const double x0[3],
                                   const double v0[3], double t_end, double tol,
                                   geocoil_comparison** out) {
  if (auto st = require(eps && x0 && v0 && out, "null argument")) return st;
  return wrap([&] {
    const Surface s = Surface::quartic(to_eps(eps));
    *out = new geocoil_comparison{
        run_comparison(s, to_vec(x0), to_vec(v0), t_end, tol)};
  });
}

void geocoil_comparison_free(geocoil_comparison* c) { delete c; }

geocoil_status geocoil_comparison_max_angle(const geocoil_comparison* c,
                                            double* out) {
  if (auto st = require(c && out, "null argument")) return st;
  *out = c->r.max_angle_error;
  return GEOCOIL_OK;
}

geocoil_status geocoil_comparison_json(const geocoil_comparison* c, char** out) {
  if (auto st = require(c != nullptr, "null comparison")) return st;
  std::string s;
  if (auto st = wrap([&] { s = comparison_json(c->r); })) return st;
  return out_string(s, out);
}

geocoil_status geocoil_comparison_svg(const geocoil_comparison* c, char** out) {
  if (auto st = require(c != nullptr, "null comparison")) return st;
  std::string s;
  if (auto st = wrap([&] {
        std::vector<Vec3> exact;
        exact.reserve(c->r.records.size());
        for (const ComparisonRecord& r : c->r.records)
          exact.push_back(r.exact_normal);
        std::vector<Vec3> track;
        track.reserve(c->r.path.L.size());
        for (const Vec3& L : c->r.path.L) track.push_back(normalized(L));
        s = render_compare_svg(exact, track);
      }))
    return st;
  return out_string(s, out);
}

} /* extern "C" */
