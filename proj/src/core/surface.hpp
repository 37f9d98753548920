#pragma once

#include <array>
#include <variant>

#include "core/error.hpp"
#include "core/vec3.hpp"

namespace geocoil {

/// Deformation coefficients (eps1, eps2, eps3) of the quartic sphere
/// phi(x) = sum_i (x_i^2 + eps_i x_i^4) - 1.
using EpsTriple = std::array<double, 3>;

/// Guards the small-deformation regime: |eps_i| <= 0.5 (which also keeps
/// 1 + eps_i positive, so the surface stays a convex-ball boundary).
void validate_epsilon(const EpsTriple& eps);

/// Symmetric 3x3 matrix.  Both supported surfaces happen to have
/// axis-aligned second derivatives, so the off-diagonal entries are zero in
/// practice, but the type keeps the general symmetric layout.
struct SymMat3 {
  double xx = 0, yy = 0, zz = 0, xy = 0, xz = 0, yz = 0;

  Vec3 apply(const Vec3& v) const {
    return {xx * v[0] + xy * v[1] + xz * v[2],
            xy * v[0] + yy * v[1] + yz * v[2],
            xz * v[0] + yz * v[1] + zz * v[2]};
  }
  /// Quadratic form v . M . v.
  double quad(const Vec3& v) const { return dot(v, apply(v)); }
};

struct QuarticSphere {
  EpsTriple eps{};
};

struct Ellipsoid {
  std::array<double, 3> axes{};
};

/// Implicit closed surface phi(x) = 0 with outward gradient.  Two variants:
///   quartic sphere: phi = sum_i (x_i^2 + eps_i x_i^4) - 1
///   ellipsoid:      phi = sum_i x_i^2 / a_i^2 - 1
class Surface {
 public:
  static Surface quartic(const EpsTriple& eps);
  static Surface ellipsoid(const std::array<double, 3>& axes);

  bool is_quartic() const { return std::holds_alternative<QuarticSphere>(shape_); }
  /// Deformation coefficients; VariantMismatch unless quartic.
  const EpsTriple& eps() const;
  /// Semi-axes; VariantMismatch unless ellipsoid.
  const std::array<double, 3>& axes() const;

  double phi(const Vec3& x) const;
  Vec3 grad_phi(const Vec3& x) const;
  SymMat3 hess_phi(const Vec3& x) const;

  /// Newton iteration on t -> phi(x + t * grad_phi(x)); stops once
  /// |phi| <= 1e-12, NonConvergence after 50 iterations.
  Vec3 project_to_surface(const Vec3& x) const;

  /// Removes the component of v along the surface normal at x.
  /// DegenerateGradient when |grad_phi| < 1e-12.
  Vec3 project_velocity(const Vec3& x, const Vec3& v) const;

 private:
  explicit Surface(QuarticSphere q) : shape_(q) {}
  explicit Surface(Ellipsoid e) : shape_(e) {}

  std::variant<QuarticSphere, Ellipsoid> shape_;
};

}  // namespace geocoil
