#include "core/averaged.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "core/error.hpp"
#include "core/ode.hpp"

namespace geocoil {

namespace {

constexpr double kPoleTol = 1e-20;  // threshold on L2^2 + L3^2

/// Coefficient rows of the slow brackets: bracket_i = sum_m kBracket[i][m] * L_m^2
/// so that rhs_i = (3/4) (L_j L_k / L^2) * bracket_i with (i,j,k) cyclic.
std::array<Vec3, 3> bracket_rows(const EpsTriple& e) {
  return {Vec3{e[2] - e[1], e[2], -e[1]},
          Vec3{-e[2], e[0] - e[2], e[0]},
          Vec3{e[1], -e[0], e[1] - e[0]}};
}

}  // namespace

Frame frame_vectors(const Vec3& L) {
  const double l = norm(L);
  if (!(l > 0.0)) fail(Errc::InvalidArgument, "momentum must be nonzero");
  const double p = L[1] * L[1] + L[2] * L[2];
  if (p <= kPoleTol) {
    fail(Errc::FramePole, "frame formulas degenerate when L2^2 + L3^2 vanishes");
  }
  const double sp = std::sqrt(p);
  return Frame{Vec3{0.0, L[2] / sp, -L[1] / sp},
               Vec3{-p / (l * sp), L[0] * L[1] / (l * sp), L[0] * L[2] / (l * sp)},
               L / l};
}

Vec3 great_circle_point(const Frame& f, double phase_angle) {
  return std::cos(phase_angle) * f.e1 + std::sin(phase_angle) * f.e2;
}

Vec3 averaged_rhs(const MomentumPoint& p) {
  const Vec3& L = p.L;
  const double l2 = norm2(L);
  if (!(l2 > 0.0)) fail(Errc::InvalidArgument, "momentum must be nonzero");
  const auto rows = bracket_rows(p.eps);
  const Vec3 sq{L[0] * L[0], L[1] * L[1], L[2] * L[2]};
  const double c = 0.75 / l2;
  return Vec3{c * L[1] * L[2] * dot(rows[0], sq),
              c * L[2] * L[0] * dot(rows[1], sq),
              c * L[0] * L[1] * dot(rows[2], sq)};
}

Mat3 averaged_jacobian(const MomentumPoint& p) {
  const Vec3& L = p.L;
  const double l2 = norm2(L);
  if (!(l2 > 0.0)) fail(Errc::InvalidArgument, "momentum must be nonzero");
  const auto rows = bracket_rows(p.eps);
  const Vec3 sq{L[0] * L[0], L[1] * L[1], L[2] * L[2]};

  Mat3 jac;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double bracket = dot(rows[i], sq);
    for (int m = 0; m < 3; ++m) {
      double d = 0.0;
      if (m == j) d += L[k] * bracket / l2;
      if (m == k) d += L[j] * bracket / l2;
      d -= 2.0 * L[m] * L[j] * L[k] * bracket / (l2 * l2);
      d += L[j] * L[k] * 2.0 * rows[i][m] * L[m] / l2;
      jac.rows[i][m] = 0.75 * d;
    }
  }
  return jac;
}

double hamiltonian(const MomentumPoint& p) {
  const double l2 = norm2(p.L);
  if (!(l2 > 0.0)) fail(Errc::InvalidArgument, "momentum must be nonzero");
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double d = p.L[i] * p.L[i] - l2;
    sum += p.eps[i] * d * d;
  }
  return (3.0 / 16.0) * sum / l2;
}

Vec3 grad_hamiltonian(const MomentumPoint& p) {
  const Vec3& L = p.L;
  const double l2 = norm2(L);
  if (!(l2 > 0.0)) fail(Errc::InvalidArgument, "momentum must be nonzero");
  Vec3 g{0.0, 0.0, 0.0};
  for (int m = 0; m < 3; ++m) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double d = L[i] * L[i] - l2;
      const double dd = (i == m ? 2.0 * L[m] : 0.0) - 2.0 * L[m];
      acc += p.eps[i] * (2.0 * d * dd * l2 - d * d * 2.0 * L[m]) / (l2 * l2);
    }
    g[m] = (3.0 / 16.0) * acc;
  }
  return g;
}

MomentumPath integrate_averaged(const MomentumPoint& p0, double t_end, double tol) {
  const double l0 = norm(p0.L);
  if (!(l0 > 0.0)) fail(Errc::InvalidArgument, "momentum must be nonzero");
  if (!(t_end > 0.0)) fail(Errc::InvalidArgument, "t_end must be positive");

  MomentumPath path;
  path.eps = p0.eps;
  path.t.push_back(0.0);
  path.L.push_back(p0.L);

  const double h0 = hamiltonian(p0);
  const double h_scale = std::max(std::fabs(h0), 1e-30);

  std::array<double, 3> y = {p0.L[0], p0.L[1], p0.L[2]};

  auto rhs = [&](double /*t*/, const std::array<double, 3>& st, std::array<double, 3>& dy) {
    const Vec3 d = averaged_rhs(MomentumPoint{Vec3{st[0], st[1], st[2]}, p0.eps});
    dy = {d[0], d[1], d[2]};
  };

  auto on_accept = [&](double t, std::array<double, 3>& st) -> bool {
    Vec3 L{st[0], st[1], st[2]};
    const double ln = norm(L);
    path.stats.max_casimir_step_drift =
        std::max(path.stats.max_casimir_step_drift, std::fabs(ln - l0) / l0);
    L = (l0 / ln) * L;
    path.stats.max_hamiltonian_drift =
        std::max(path.stats.max_hamiltonian_drift,
                 std::fabs(hamiltonian(MomentumPoint{L, p0.eps}) - h0) / h_scale);
    st = {L[0], L[1], L[2]};
    path.t.push_back(t);
    path.L.push_back(L);
    return true;
  };

  OdeOptions opt;
  opt.tol = tol;
  integrate_adaptive<3>(rhs, y, 0.0, t_end, opt, on_accept);
  return path;
}

Vec3 oscillatory_rhs(const Vec3& L, const EpsTriple& eps, double phase_angle) {
  const double l = norm(L);
  if (!(l > 0.0)) fail(Errc::InvalidArgument, "momentum must be nonzero");
  const double p = L[1] * L[1] + L[2] * L[2];
  if (p <= kPoleTol) {
    fail(Errc::FramePole, "frame formulas degenerate when L2^2 + L3^2 vanishes");
  }
  const double c = std::cos(phase_angle), s = std::sin(phase_angle);
  const double a = c * L[2] + s * L[0] * L[1] / l;
  const double b = c * (-L[1]) + s * L[0] * L[2] / l;
  const double q = s * (-p) / l;
  const double pref = 2.0 * l * l / (p * p);
  return Vec3{pref * (eps[1] * a * a * a * b - eps[2] * b * b * b * a),
              pref * (eps[2] * b * b * b * q - eps[0] * q * q * q * b),
              pref * (eps[0] * q * q * q * a - eps[1] * a * a * a * q)};
}

Vec3 average_over_phase(const Vec3& L, const EpsTriple& eps) {
  constexpr int kNodes = 512;
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  Vec3 acc{0.0, 0.0, 0.0};
  for (int k = 0; k < kNodes; ++k) {
    acc = acc + oscillatory_rhs(L, eps, kTwoPi * k / kNodes);
  }
  return acc / static_cast<double>(kNodes);
}

Vec3 average_over_phase_any(const Vec3& L, const EpsTriple& eps) {
  // Cyclic relabeling (1,2,3) -> (2,3,1) applied s times commutes with the
  // dynamics, so compute where the frame is regular and shift the result back.
  for (int s = 0; s < 3; ++s) {
    const int i0 = s % 3, i1 = (s + 1) % 3, i2 = (s + 2) % 3;
    const Vec3 ls{L[i0], L[i1], L[i2]};
    if (ls[1] * ls[1] + ls[2] * ls[2] <= kPoleTol) continue;
    const EpsTriple es{eps[i0], eps[i1], eps[i2]};
    const Vec3 r = average_over_phase(ls, es);
    Vec3 out;
    out[i0] = r[0];
    out[i1] = r[1];
    out[i2] = r[2];
    return out;
  }
  fail(Errc::FramePole, "momentum too small to place a regular frame");
}

}  // namespace geocoil
