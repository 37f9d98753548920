#pragma once

#include <vector>

#include "core/surface.hpp"
#include "core/vec3.hpp"

namespace geocoil {

/// Angular-momentum point of the slow flow, paired with the deformation
/// coefficients that drive it.
struct MomentumPoint {
  Vec3 L;
  EpsTriple eps{};
};

/// Orthonormal right-handed triple adapted to a momentum direction
/// (e3 = L/|L|; e1, e2 span the orbit plane).
struct Frame {
  Vec3 e1, e2, e3;
};

/// Unperturbed circular motion: angular velocity and phase offset.
/// To first order the angular velocity equals |L|.
struct Phase {
  double omega = 1.0;
  double theta = 0.0;
};

/// Conservation monitors for the slow flow.
struct MomentumPathStats {
  double max_casimir_step_drift = 0.0;  ///< max relative |L| drift per raw step
  double max_hamiltonian_drift = 0.0;   ///< max relative energy drift over samples
};

struct MomentumPath {
  std::vector<double> t;
  std::vector<Vec3> L;
  EpsTriple eps{};
  MomentumPathStats stats;
};

/// Orbit-plane frame for momentum L.  FramePole when L2^2 + L3^2 <= 1e-20,
/// where the component formulas lose meaning; callers that must work
/// everywhere should use average_over_phase_any or rotate labels themselves.
Frame frame_vectors(const Vec3& L);

/// Point of the unit great circle in the given frame at the given phase angle.
Vec3 great_circle_point(const Frame& f, double phase_angle);

/// Slow (secular) right side for the angular momentum.
Vec3 averaged_rhs(const MomentumPoint& p);

/// Derivative of averaged_rhs with respect to L.
Mat3 averaged_jacobian(const MomentumPoint& p);

/// Conserved energy of the slow flow: (3/16) L^2 sum_i eps_i ((L_i/L)^2 - 1)^2.
double hamiltonian(const MomentumPoint& p);

/// Gradient of the energy with respect to L.
Vec3 grad_hamiltonian(const MomentumPoint& p);

/// Adaptive integration of the slow flow.  Every accepted sample is
/// renormalized back to |L| = |L0|; the raw per-step drift is monitored in
/// stats before that repair.
MomentumPath integrate_averaged(const MomentumPoint& p0, double t_end, double tol);

/// Fast right side before averaging: the momentum derivative along the
/// unperturbed circular motion, with the oscillation phase made explicit.
/// FramePole propagates from the frame construction.
Vec3 oscillatory_rhs(const Vec3& L, const EpsTriple& eps, double phase_angle);

/// Mean of oscillatory_rhs over one phase period (composite rectangle rule,
/// 512 nodes -- exact for this trigonometric-polynomial integrand).
/// FramePole propagates.
Vec3 average_over_phase(const Vec3& L, const EpsTriple& eps);

/// Same mean, valid everywhere: cyclically permutes coordinate labels to move
/// the frame pole away from L when necessary, then permutes back.
Vec3 average_over_phase_any(const Vec3& L, const EpsTriple& eps);

}  // namespace geocoil
