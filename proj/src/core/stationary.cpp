#include "core/stationary.hpp"

#include <algorithm>
#include <cmath>

#include "core/averaged.hpp"
#include "core/error.hpp"

namespace geocoil {

namespace {

constexpr double kZeroEps = 1e-12;      // coefficient treated as exactly zero
constexpr double kDecisionTol = 1e-12;  // margin on the deciding quadratics
constexpr double kStationaryTol = 1e-10;

bool is_zero_coeff(double e) { return std::fabs(e) <= kZeroEps; }

/// Axis index fixed by the family (S1a = z and so on); -1 for non-axis families.
int axis_of(Family f) {
  switch (f) {
    case Family::S1a: return 2;
    case Family::S1b: return 1;
    case Family::S1c: return 0;
    default: return -1;
  }
}

/// Solves the two independent bracket equations plus the normalization
/// sum u_i = 1 for u_i = L_i^2 by Gaussian elimination with partial pivoting.
std::array<double, 3> solve_offplane_squares(const EpsTriple& e) {
  double m[3][4] = {
      {e[2] - e[1], e[2], -e[1], 0.0},
      {-e[2], e[0] - e[2], e[0], 0.0},
      {1.0, 1.0, 1.0, 1.0},
  };
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    }
    if (std::fabs(m[piv][col]) < 1e-30) {
      fail(Errc::NonConvergence, "off-plane stationary system is singular");
    }
    std::swap(m[col], m[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::S1a: return "S1a";
    case Family::S1b: return "S1b";
    case Family::S1c: return "S1c";
    case Family::S2a: return "S2a";
    case Family::S2b: return "S2b";
    case Family::S2c: return "S2c";
    case Family::S3: return "S3";
  }
  return "?";
}

const char* stability_name(Stability s) {
  return s == Stability::Focus ? "Focus" : "Saddle";
}

Vec3 quadratic_forms(const EpsTriple& e) {
  return Vec3{e[0] * e[1] - e[1] * e[2] + e[2] * e[0],
              e[0] * e[1] + e[1] * e[2] - e[2] * e[0],
              -e[0] * e[1] + e[1] * e[2] + e[2] * e[0]};
}

Mat2 jacobian_restricted(const Vec3& L0, const EpsTriple& eps) {
  const MomentumPoint p{L0, eps};
  if (norm(averaged_rhs(p)) > kStationaryTol) {
    fail(Errc::NotStationary, "momentum is not a stationary point of the slow flow");
  }
  const Vec3 lhat = normalized(L0);
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::fabs(lhat[i]) < std::fabs(lhat[axis])) axis = i;
  }
  Vec3 e_axis{0.0, 0.0, 0.0};
  e_axis[axis] = 1.0;
  const Vec3 t1 = normalized(cross(lhat, e_axis));
  const Vec3 t2 = cross(lhat, t1);

  const Mat3 j = averaged_jacobian(p);
  const Vec3 jt1 = j.apply(t1), jt2 = j.apply(t2);
  return Mat2{dot(t1, jt1), dot(t1, jt2), dot(t2, jt1), dot(t2, jt2)};
}

std::array<std::complex<double>, 2> restricted_eigenvalues(const Mat2& m) {
  const double half_tr = 0.5 * m.trace();
  const double disc = half_tr * half_tr - m.det();
  if (disc < 0.0) {
    const double im = std::sqrt(-disc);
    return {std::complex<double>(half_tr, im), std::complex<double>(half_tr, -im)};
  }
  const double re = std::sqrt(disc);
  return {std::complex<double>(half_tr + re, 0.0), std::complex<double>(half_tr - re, 0.0)};
}

Stability classify_stability(const StationaryPoint& point, const EpsTriple& eps,
                             ClassifyMethod method) {
  if (method == ClassifyMethod::Spectrum) {
    const Mat2 j = jacobian_restricted(point.L0, eps);
    const double det = j.det();
    if (std::fabs(det) <= kDecisionTol) {
      fail(Errc::Marginal, "linearization spectrum does not decide stability");
    }
    // Traceless 2x2: det > 0 gives a purely imaginary pair, det < 0 a real pair.
    return det > 0.0 ? Stability::Focus : Stability::Saddle;
  }

  const Vec3 q = quadratic_forms(eps);
  double deciding = 0.0;
  bool focus_when_positive = true;
  switch (point.family) {
    case Family::S1a: deciding = eps[0] * eps[1]; break;
    case Family::S1b: deciding = eps[2] * eps[0]; break;
    case Family::S1c: deciding = eps[1] * eps[2]; break;
    case Family::S2a: deciding = q[0]; focus_when_positive = false; break;
    case Family::S2b: deciding = q[1]; focus_when_positive = false; break;
    case Family::S2c: deciding = q[2]; focus_when_positive = false; break;
    case Family::S3: return Stability::Focus;
  }
  if (std::fabs(deciding) <= kDecisionTol) {
    fail(Errc::Marginal, "stability test lies on a boundary surface");
  }
  return (deciding > 0.0) == focus_when_positive ? Stability::Focus : Stability::Saddle;
}

Stability classify_resolved(const Vec3& L0, Family family, const EpsTriple& eps) {
  const Mat2 j = jacobian_restricted(L0, eps);
  const double det = j.det();
  if (det > kDecisionTol) return Stability::Focus;
  if (det < -kDecisionTol) return Stability::Saddle;

  const int k = axis_of(family);
  if (k < 0) fail(Errc::Marginal, "stability undecided on a boundary surface");

  // Axis with nilpotent linearization: one of the two transverse coefficients
  // vanishes.  The level sets of the conserved energy still decide the local
  // picture: with eps_b ~ 0, the energy deviation along the tangent plane is
  // -2 eps_a l_a^2 + (eps_b + eps_k) l_b^4 + higher terms, so the point is a
  // center exactly when those two coefficients have opposite signs.
  const int i = (k + 1) % 3, jdx = (k + 2) % 3;
  int a, b;
  if (is_zero_coeff(eps[i]) && !is_zero_coeff(eps[jdx])) {
    b = i;
    a = jdx;
  } else if (is_zero_coeff(eps[jdx]) && !is_zero_coeff(eps[i])) {
    b = jdx;
    a = i;
  } else {
    fail(Errc::Marginal, "stability undecided on a boundary surface");
  }
  const double s = eps[a] * (eps[b] + eps[k]);
  if (s < -kDecisionTol) return Stability::Focus;
  if (s > kDecisionTol) return Stability::Saddle;
  fail(Errc::Marginal, "stability undecided on a boundary surface");
}

std::vector<StationaryPoint> enumerate_stationary(const EpsTriple& eps) {
  validate_epsilon(eps);
  int zeros = 0;
  for (double e : eps) {
    if (is_zero_coeff(e)) ++zeros;
  }
  if (zeros == 3) fail(Errc::DegenerateEpsilon, "all coefficients vanish: every momentum is stationary");
  if (zeros == 2) {
    fail(Errc::Marginal, "two vanishing coefficients: the stationary set contains a circle");
  }

  std::vector<StationaryPoint> pts;

  auto push = [&](const Vec3& L0, Family fam) {
    StationaryPoint p;
    p.L0 = L0;
    p.family = fam;
    p.stability = classify_resolved(L0, fam, eps);
    p.eigen = restricted_eigenvalues(jacobian_restricted(L0, eps));
    pts.push_back(p);
  };

  push(Vec3{0.0, 0.0, 1.0}, Family::S1a);
  push(Vec3{0.0, 1.0, 0.0}, Family::S1b);
  push(Vec3{1.0, 0.0, 0.0}, Family::S1c);

  // In-plane points: one coordinate zero, ratio of the other two squared
  // components fixed by the matching coefficients.
  struct PlaneCase {
    Family fam;
    int zero, lo, hi;  // component indices: L[zero] = 0, L[lo] > 0, L[hi] = +/-
  };
  const PlaneCase plane_cases[] = {
      {Family::S2a, 0, 1, 2},
      {Family::S2b, 1, 0, 2},
      {Family::S2c, 2, 0, 1},
  };
  for (const auto& pc : plane_cases) {
    const double ea = eps[pc.lo], eb = eps[pc.hi];
    if (is_zero_coeff(ea) || is_zero_coeff(eb) || ea * eb <= 0.0) continue;
    const double ua = ea / (ea + eb), ub = eb / (ea + eb);
    for (double sign : {1.0, -1.0}) {
      Vec3 L0{0.0, 0.0, 0.0};
      L0[pc.lo] = std::sqrt(ua);
      L0[pc.hi] = sign * std::sqrt(ub);
      push(L0, pc.fam);
    }
  }

  // Off-plane points: all three bracket equations vanish.
  const Vec3 q = quadratic_forms(eps);
  if (q[0] > 0.0 && q[1] > 0.0 && q[2] > 0.0) {
    const auto u = solve_offplane_squares(eps);
    for (double ui : u) {
      if (!(ui > 0.0)) fail(Errc::Consistency, "off-plane squares must be positive");
    }
    for (double s2 : {1.0, -1.0}) {
      for (double s3 : {1.0, -1.0}) {
        push(Vec3{std::sqrt(u[0]), s2 * std::sqrt(u[1]), s3 * std::sqrt(u[2])}, Family::S3);
      }
    }
  }

  for (const auto& p : pts) {
    if (norm(averaged_rhs(MomentumPoint{p.L0, eps})) > 1e-12) {
      fail(Errc::Consistency, "enumerated point fails the stationarity residual");
    }
  }
  return pts;
}

}  // namespace geocoil
