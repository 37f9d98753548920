#include "core/surface.hpp"

#include <cmath>

namespace geocoil {

namespace {
constexpr double kSurfaceTol = 1e-12;
constexpr int kMaxNewtonIter = 50;
}  // namespace

void validate_epsilon(const EpsTriple& eps) {
  for (double e : eps) {
    if (!std::isfinite(e) || std::fabs(e) > 0.5) {
      fail(Errc::InvalidArgument, "deformation coefficients must satisfy |eps_i| <= 0.5");
    }
  }
}

Surface Surface::quartic(const EpsTriple& eps) {
  validate_epsilon(eps);
  return Surface(QuarticSphere{eps});
}

Surface Surface::ellipsoid(const std::array<double, 3>& axes) {
  for (double a : axes) {
    if (!std::isfinite(a) || a <= 0.0) {
      fail(Errc::InvalidArgument, "ellipsoid semi-axes must be positive");
    }
  }
  return Surface(Ellipsoid{axes});
}

const EpsTriple& Surface::eps() const {
  const auto* q = std::get_if<QuarticSphere>(&shape_);
  if (!q) fail(Errc::VariantMismatch, "surface is not a quartic sphere");
  return q->eps;
}

const std::array<double, 3>& Surface::axes() const {
  const auto* e = std::get_if<Ellipsoid>(&shape_);
  if (!e) fail(Errc::VariantMismatch, "surface is not an ellipsoid");
  return e->axes;
}

double Surface::phi(const Vec3& x) const {
  if (const auto* q = std::get_if<QuarticSphere>(&shape_)) {
    double s = -1.0;
    for (int i = 0; i < 3; ++i) {
      const double x2 = x[i] * x[i];
      s += x2 + q->eps[i] * x2 * x2;
    }
    return s;
  }
  const auto& a = std::get<Ellipsoid>(shape_).axes;
  double s = -1.0;
  for (int i = 0; i < 3; ++i) s += x[i] * x[i] / (a[i] * a[i]);
  return s;
}

Vec3 Surface::grad_phi(const Vec3& x) const {
  Vec3 g;
  if (const auto* q = std::get_if<QuarticSphere>(&shape_)) {
    for (int i = 0; i < 3; ++i) g[i] = 2.0 * x[i] + 4.0 * q->eps[i] * x[i] * x[i] * x[i];
    return g;
  }
  const auto& a = std::get<Ellipsoid>(shape_).axes;
  for (int i = 0; i < 3; ++i) g[i] = 2.0 * x[i] / (a[i] * a[i]);
  return g;
}

SymMat3 Surface::hess_phi(const Vec3& x) const {
  SymMat3 h;
  if (const auto* q = std::get_if<QuarticSphere>(&shape_)) {
    h.xx = 2.0 + 12.0 * q->eps[0] * x[0] * x[0];
    h.yy = 2.0 + 12.0 * q->eps[1] * x[1] * x[1];
    h.zz = 2.0 + 12.0 * q->eps[2] * x[2] * x[2];
    return h;
  }
  const auto& a = std::get<Ellipsoid>(shape_).axes;
  h.xx = 2.0 / (a[0] * a[0]);
  h.yy = 2.0 / (a[1] * a[1]);
  h.zz = 2.0 / (a[2] * a[2]);
  return h;
}

Vec3 Surface::project_to_surface(const Vec3& x) const {
  // One-dimensional Newton along the (fixed) gradient direction at x.
  const Vec3 dir = grad_phi(x);
  if (norm2(dir) < 1e-24) {
    fail(Errc::NonConvergence, "projection seed has a vanishing gradient direction");
  }
  double t = 0.0;
  Vec3 p = x;
  for (int it = 0; it < kMaxNewtonIter; ++it) {
    const double f = phi(p);
    if (std::fabs(f) <= kSurfaceTol) return p;
    const double df = dot(grad_phi(p), dir);
    if (df == 0.0 || !std::isfinite(df)) break;
    t -= f / df;
    p = x + t * dir;
  }
  fail(Errc::NonConvergence, "surface projection did not reach |phi| <= 1e-12 in 50 iterations");
}

Vec3 Surface::project_velocity(const Vec3& x, const Vec3& v) const {
  const Vec3 g = grad_phi(x);
  const double gn = norm(g);
  if (gn < 1e-12) fail(Errc::DegenerateGradient, "surface gradient magnitude below 1e-12");
  const Vec3 n = g / gn;
  return v - dot(v, n) * n;
}

}  // namespace geocoil
