/* geocoil — geodesics on gently deformed spheres and their slow momentum flow.
 *
 * C interface of the shared library.  All functions return a geocoil_status;
 * results are passed back through out-parameters.  Objects are opaque handles
 * created/destroyed by matching _free functions; strings returned through
 * "char** out" are heap-allocated and must be released with
 * geocoil_string_free.  On any non-OK status the out-parameters are untouched
 * and geocoil_last_error_message() describes the failure (thread-local).
 */
#ifndef GEOCOIL_H
#define GEOCOIL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum geocoil_status {
  GEOCOIL_OK = 0,
  GEOCOIL_ERR_INVALID_ARGUMENT = 1,  /* bad parameter or malformed input */
  GEOCOIL_ERR_NON_CONVERGENCE = 2,   /* iterative solve failed */
  GEOCOIL_ERR_DEGENERATE_GRADIENT = 3,
  GEOCOIL_ERR_FRAME_POLE = 4,        /* orbit frame undefined at this momentum */
  GEOCOIL_ERR_STEP_FAILURE = 5,      /* adaptive integrator underflowed/step cap */
  GEOCOIL_ERR_TOO_SHORT = 6,         /* trajectory has too few loops/samples */
  GEOCOIL_ERR_DEGENERATE_EPSILON = 7,
  GEOCOIL_ERR_MARGINAL = 8,          /* coefficients on a classification boundary */
  GEOCOIL_ERR_NOT_STATIONARY = 9,
  GEOCOIL_ERR_UNRESOLVED_EDGE = 10,
  GEOCOIL_ERR_ASYMMETRIC_INPUT = 11, /* graph not closed under the antipodal map */
  GEOCOIL_ERR_UNKNOWN_COUNTS = 12,   /* vertex counts match no known net type */
  GEOCOIL_ERR_CONSISTENCY = 13,      /* internal cross-check failed */
  GEOCOIL_ERR_VARIANT_MISMATCH = 14, /* wrong surface kind for this query */
  GEOCOIL_ERR_ALL_ZERO = 15,         /* all deformation coefficients vanish */
  GEOCOIL_ERR_IO = 16,
  GEOCOIL_ERR_INTERNAL = 17
} geocoil_status;

/* Stable name of a status code, e.g. "invalid_argument". */
const char* geocoil_status_name(geocoil_status s);

/* Message of the most recent failure on this thread ("" if none). */
const char* geocoil_last_error_message(void);

/* Releases a string returned through a char** out-parameter. */
void geocoil_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Surfaces                                                            */
/* ------------------------------------------------------------------ */

typedef struct geocoil_surface geocoil_surface;

/* Unit sphere with quartic deformation coefficients eps (|eps_i| <= 0.5). */
geocoil_status geocoil_surface_create_quartic(const double eps[3],
                                              geocoil_surface** out);

/* Triaxial ellipsoid with semi-axes a (a_i > 0). */
geocoil_status geocoil_surface_create_ellipsoid(const double axes[3],
                                                geocoil_surface** out);

void geocoil_surface_free(geocoil_surface* s);

/* ------------------------------------------------------------------ */
/* Exact geodesic flow                                                 */
/* ------------------------------------------------------------------ */

typedef struct geocoil_trajectory geocoil_trajectory;

/* Projects (x0, v0) onto the surface/tangent plane and integrates the
 * geodesic for t in [0, t_end] with adaptive tolerance tol. */
geocoil_status geocoil_geodesic_run(const geocoil_surface* s, const double x0[3],
                                    const double v0[3], double t_end, double tol,
                                    geocoil_trajectory** out);

void geocoil_trajectory_free(geocoil_trajectory* t);

size_t geocoil_trajectory_size(const geocoil_trajectory* t);

/* CSV: t,x1,x2,x3,v1,v2,v3,L1,L2,L3 (L = x cross v). */
geocoil_status geocoil_trajectory_csv(const geocoil_trajectory* t, char** out);

/* JSON block with the conservation monitors of the run. */
geocoil_status geocoil_trajectory_stats_json(const geocoil_trajectory* t,
                                             char** out);

/* ------------------------------------------------------------------ */
/* Slow (loop-averaged) momentum flow                                  */
/* ------------------------------------------------------------------ */

typedef struct geocoil_path geocoil_path;

/* Integrates the slow momentum flow from L0 for t in [0, t_end]. */
geocoil_status geocoil_averaged_run(const double eps[3], const double L0[3],
                                    double t_end, double tol, geocoil_path** out);

void geocoil_path_free(geocoil_path* p);

size_t geocoil_path_size(const geocoil_path* p);

/* CSV: t,L1,L2,L3. */
geocoil_status geocoil_path_csv(const geocoil_path* p, char** out);

geocoil_status geocoil_path_stats_json(const geocoil_path* p, char** out);

/* ------------------------------------------------------------------ */
/* Stationary momenta of the slow flow                                 */
/* ------------------------------------------------------------------ */

typedef struct geocoil_stationary_set geocoil_stationary_set;

geocoil_status geocoil_stationary_enumerate(const double eps[3],
                                            geocoil_stationary_set** out);

void geocoil_stationary_set_free(geocoil_stationary_set* s);

size_t geocoil_stationary_count(const geocoil_stationary_set* s);

/* JSON array: L0, family, stability, eigen. */
geocoil_status geocoil_stationary_json(const geocoil_stationary_set* s,
                                       char** out);

/* ------------------------------------------------------------------ */
/* Separatrix net                                                      */
/* ------------------------------------------------------------------ */

typedef struct geocoil_graph geocoil_graph;

/* Traces the separatrix net of the slow flow of surface s on the momentum
 * sphere |L| = L_norm.  Works for both surface kinds. */
geocoil_status geocoil_net_trace(const geocoil_surface* s, double L_norm,
                                 double tol, geocoil_graph** out);

/* Folds a sphere graph by the antipodal symmetry (projective-plane graph). */
geocoil_status geocoil_graph_quotient(const geocoil_graph* g, geocoil_graph** out);

void geocoil_graph_free(geocoil_graph* g);

geocoil_status geocoil_graph_counts(const geocoil_graph* g, int* foci,
                                    int* saddles, int* edges, int* unresolved);

/* Checks a projective-quotient graph's focus/saddle counts against the
 * closed-form classification of eps and returns the net type name. */
geocoil_status geocoil_net_verify(const geocoil_graph* g, const double eps[3],
                                  char** out);

/* JSON object: vertices, edges, space. */
geocoil_status geocoil_graph_json(const geocoil_graph* g, char** out);

/* SVG figure of a projective-plane graph on the unit disk. */
geocoil_status geocoil_graph_svg(const geocoil_graph* g, char** out);

/* ------------------------------------------------------------------ */
/* Coefficient classification and region map                           */
/* ------------------------------------------------------------------ */

/* Net type of coefficients eps: "I", "II", "III", "IV" or "Marginal". */
geocoil_status geocoil_classify_type(const double eps[3], char** out);

typedef struct geocoil_region_map geocoil_region_map;

/* Classifies every node of a (resolution+1)^2 grid on the unit coefficient
 * disk (resolution >= 16). */
geocoil_status geocoil_region_map_run(int resolution, geocoil_region_map** out);

void geocoil_region_map_free(geocoil_region_map* m);

/* CSV: u,v,type. */
geocoil_status geocoil_region_map_csv(const geocoil_region_map* m, char** out);

geocoil_status geocoil_region_map_svg(const geocoil_region_map* m, char** out);

/* ------------------------------------------------------------------ */
/* Exact-vs-slow comparison                                            */
/* ------------------------------------------------------------------ */

typedef struct geocoil_comparison geocoil_comparison;

/* Runs the exact geodesic and the slow flow from matching initial data on the
 * quartic surface with coefficients eps (max |eps_i| <= 0.1) and compares the
 * per-loop momentum directions. */
geocoil_status geocoil_compare_run(const double eps[3], const double x0[3],
                                   const double v0[3], double t_end, double tol,
                                   geocoil_comparison** out);

void geocoil_comparison_free(geocoil_comparison* c);

geocoil_status geocoil_comparison_max_angle(const geocoil_comparison* c,
                                            double* out);

geocoil_status geocoil_comparison_json(const geocoil_comparison* c, char** out);

geocoil_status geocoil_comparison_svg(const geocoil_comparison* c, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GEOCOIL_H */
