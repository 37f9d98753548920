#include "core/geodesic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "core/error.hpp"
#include "core/ode.hpp"

namespace geocoil {

namespace {

constexpr double kStateSurfaceTol = 1e-9;
constexpr double kStateTangencyTol = 1e-9;

}  // namespace

PhaseState make_phase_state(const Surface& s, const Vec3& x, const Vec3& v, double t) {
  const double c = std::fabs(s.phi(x));
  if (!(c <= kStateSurfaceTol)) {
    fail(Errc::InvalidArgument, "position is not on the surface (|phi| > 1e-9)");
  }
  const Vec3 g = s.grad_phi(x);
  const double vn = norm(v), gn = norm(g);
  if (!(vn > 0.0)) fail(Errc::InvalidArgument, "velocity must be nonzero");
  if (!(std::fabs(dot(v, g)) <= kStateTangencyTol * vn * gn)) {
    fail(Errc::InvalidArgument, "velocity is not tangent to the surface");
  }
  return PhaseState{x, v, t};
}

std::pair<Vec3, Vec3> geodesic_rhs(const Surface& s, const PhaseState& state) {
  const Vec3 g = s.grad_phi(state.x);
  const double g2 = norm2(g);
  if (g2 < 1e-24) fail(Errc::DegenerateGradient, "constraint gradient vanishes");
  const SymMat3 h = s.hess_phi(state.x);
  const double lambda = h.quad(state.v) / g2;
  return {state.v, (-lambda) * g};
}

Vec3 angular_momentum(const PhaseState& state) { return cross(state.x, state.v); }

Vec3 momentum_rhs_exact(const Surface& s, const PhaseState& state) {
  const EpsTriple& e = s.eps();  // quartic family only
  const Vec3& x = state.x;
  const Vec3& v = state.v;
  double num = 0.0, den = 0.0;
  for (int j = 0; j < 3; ++j) {
    num += (2.0 + 12.0 * e[j] * x[j] * x[j]) * v[j] * v[j];
    const double gj = 2.0 * x[j] + 4.0 * e[j] * x[j] * x[j] * x[j];
    den += gj * gj;
  }
  const double f = num / den;
  return Vec3{-4.0 * f * x[1] * x[2] * (e[2] * x[2] * x[2] - e[1] * x[1] * x[1]),
              -4.0 * f * x[2] * x[0] * (e[0] * x[0] * x[0] - e[2] * x[2] * x[2]),
              -4.0 * f * x[0] * x[1] * (e[1] * x[1] * x[1] - e[0] * x[0] * x[0])};
}

Trajectory integrate_geodesic(const Surface& s, const PhaseState& init, double t_end, double tol) {
  (void)make_phase_state(s, init.x, init.v, init.t);  // re-validate invariants
  if (!(t_end > 0.0)) fail(Errc::InvalidArgument, "t_end must be positive");
  if (!(tol >= 1e-14 && tol <= 1e-4)) fail(Errc::InvalidArgument, "tol must lie in [1e-14, 1e-4]");

  Trajectory traj;
  traj.surface = s;
  traj.samples.push_back(init);

  const double speed0 = norm(init.v);
  const double speed0_sq = speed0 * speed0;

  std::array<double, 6> y = {init.x[0], init.x[1], init.x[2], init.v[0], init.v[1], init.v[2]};

  auto rhs = [&](double /*t*/, const std::array<double, 6>& st, std::array<double, 6>& dy) {
    const PhaseState p{Vec3{st[0], st[1], st[2]}, Vec3{st[3], st[4], st[5]}};
    const auto [dx, dv] = geodesic_rhs(s, p);
    dy = {dx[0], dx[1], dx[2], dv[0], dv[1], dv[2]};
  };

  auto on_accept = [&](double t, std::array<double, 6>& st) -> bool {
    Vec3 x{st[0], st[1], st[2]};
    Vec3 v{st[3], st[4], st[5]};

    // Monitor the raw step quality before repairing.
    traj.stats.max_step_constraint = std::max(traj.stats.max_step_constraint, std::fabs(s.phi(x)));
    traj.stats.max_step_energy = std::max(traj.stats.max_step_energy,
                                          std::fabs((norm2(v) - speed0_sq) / speed0_sq));

    x = s.project_to_surface(x);
    v = s.project_velocity(x, v);
    const double vn = norm(v);
    if (vn < 1e-300) fail(Errc::StepFailure, "velocity collapsed during constraint repair");
    v = (speed0 / vn) * v;

    st = {x[0], x[1], x[2], v[0], v[1], v[2]};
    traj.samples.push_back(PhaseState{x, v, init.t + t});
    return true;
  };

  OdeOptions opt;
  opt.tol = tol;
  integrate_adaptive<6>(rhs, y, 0.0, t_end, opt, on_accept);

  for (const PhaseState& p : traj.samples) {
    traj.stats.max_constraint_drift =
        std::max(traj.stats.max_constraint_drift, std::fabs(s.phi(p.x)));
    traj.stats.max_energy_drift = std::max(
        traj.stats.max_energy_drift, std::fabs((norm2(p.v) - speed0_sq) / speed0_sq));
  }
  return traj;
}

std::vector<LoopNormal> loop_normals(const Trajectory& traj) {
  const auto& ss = traj.samples;
  if (ss.size() < 3) fail(Errc::TooShort, "trajectory has too few samples to delimit loops");

  const Vec3 l0 = angular_momentum(ss.front());
  if (norm(l0) <= 0.0) fail(Errc::TooShort, "initial angular momentum vanishes");
  const Vec3 l0_hat = normalized(l0);

  // Section plane containing l0 and the initial position: the trajectory
  // starts on it and, while quasi-circular, crosses it once per revolution.
  Vec3 ea = ss.front().x - dot(ss.front().x, l0_hat) * l0_hat;
  if (norm(ea) < 1e-12) fail(Errc::TooShort, "initial position is parallel to angular momentum");
  ea = normalized(ea);
  const Vec3 n_sec = cross(l0_hat, ea);

  // Crossing indices: the start counts, then each signed return on the ea>0 side.
  std::vector<std::size_t> crossings;
  crossings.push_back(0);
  for (std::size_t i = 1; i + 1 < ss.size(); ++i) {
    const double s_prev = dot(ss[i].x, n_sec);
    const double s_next = dot(ss[i + 1].x, n_sec);
    if (s_prev < 0.0 && s_next >= 0.0 && dot(ss[i + 1].x, ea) > 0.0) {
      crossings.push_back(i + 1);
    }
  }
  if (crossings.size() < 2) fail(Errc::TooShort, "trajectory spans fewer than two section crossings");

  std::vector<LoopNormal> out;
  out.reserve(crossings.size() - 1);
  for (std::size_t k = 0; k + 1 < crossings.size(); ++k) {
    const std::size_t a = crossings[k], b = crossings[k + 1];
    // Time-weighted trapezoid mean of angular momentum over the loop.
    Vec3 acc{0.0, 0.0, 0.0};
    for (std::size_t i = a; i < b; ++i) {
      const double dt = ss[i + 1].t - ss[i].t;
      acc = acc + (0.5 * dt) * (angular_momentum(ss[i]) + angular_momentum(ss[i + 1]));
    }
    const double span = ss[b].t - ss[a].t;
    if (span <= 0.0) continue;
    acc = (1.0 / span) * acc;
    const double an = norm(acc);
    if (an < 1e-300) continue;
    out.push_back(LoopNormal{0.5 * (ss[a].t + ss[b].t), (1.0 / an) * acc});
  }
  if (out.empty()) fail(Errc::TooShort, "no complete loop could be extracted");
  return out;
}

}  // namespace geocoil
