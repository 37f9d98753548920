#pragma once

#include <array>
#include <complex>
#include <vector>

#include "core/surface.hpp"
#include "core/vec3.hpp"

namespace geocoil {

/// Families of stationary momenta of the slow flow:
///   S1a/S1b/S1c: the z/y/x coordinate axes (always present);
///   S2a/S2b/S2c: points in the L1=0 / L2=0 / L3=0 planes (exist when the
///                corresponding coefficient product is positive);
///   S3:          fully off-plane points (exist under three quadratic-form
///                positivity conditions).
enum class Family { S1a, S1b, S1c, S2a, S2b, S2c, S3 };

/// Focus: center-type point, purely imaginary linearization spectrum.
/// Saddle: real +/- eigenvalue pair.
enum class Stability { Focus, Saddle };

enum class ClassifyMethod { Inequality, Spectrum };

const char* family_name(Family f);
const char* stability_name(Stability s);

/// 2x2 matrix in an orthonormal tangent basis of the momentum sphere.
struct Mat2 {
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
};

struct StationaryPoint {
  Vec3 L0;  ///< unit norm, one representative per antipodal pair
  Family family = Family::S1a;
  Stability stability = Stability::Focus;
  std::array<std::complex<double>, 2> eigen{};  ///< restricted linearization spectrum
};

/// Quadratic forms whose signs separate the net types:
///   q1 = e1 e2 - e2 e3 + e3 e1,  q2 = e1 e2 + e2 e3 - e3 e1,
///   q3 = -e1 e2 + e2 e3 + e3 e1.
Vec3 quadratic_forms(const EpsTriple& eps);

/// All stationary points of the slow flow, one representative per antipodal
/// pair (first nonzero component positive), in the deterministic order
/// S1a,S1b,S1c, S2a(+,-), S2b(+,-), S2c(+,-), S3(++,+-,-+,--).
/// DegenerateEpsilon when all coefficients vanish; Marginal when the stability
/// of some point is not decided by strict inequalities (boundary coefficients).
std::vector<StationaryPoint> enumerate_stationary(const EpsTriple& eps);

/// Jacobian of the slow flow at a stationary momentum, projected onto the
/// tangent plane of the momentum sphere in an orthonormal basis.
/// NotStationary when |rhs(L0)| > 1e-10.
Mat2 jacobian_restricted(const Vec3& L0, const EpsTriple& eps);

std::array<std::complex<double>, 2> restricted_eigenvalues(const Mat2& m);

/// Classifies a stationary point either by the closed-form sign tests
/// (Inequality) or by the linearization spectrum (Spectrum).  Throws Marginal
/// when the deciding quantity is within 1e-12 of zero.
Stability classify_stability(const StationaryPoint& point, const EpsTriple& eps,
                             ClassifyMethod method);

/// Spectrum classification with a fallback for the degenerate axis case
/// (one coefficient exactly zero, nilpotent linearization): decides by the
/// definiteness of the conserved energy restricted to the sphere.  Still
/// throws Marginal on genuine boundary coefficients.  Used by enumeration
/// and net tracing, where every vertex needs a label.
Stability classify_resolved(const Vec3& L0, Family family, const EpsTriple& eps);

}  // namespace geocoil
