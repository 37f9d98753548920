#pragma once

#include <array>
#include <cmath>

namespace geocoil {

/// Cartesian 3-vector with value semantics.
struct Vec3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : c{x, y, z} {}

  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
};

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a[0] / s, a[1] / s, a[2] / s}; }
constexpr Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
constexpr double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

/// Row-major 3x3 matrix, just enough linear algebra for Jacobians.
struct Mat3 {
  std::array<Vec3, 3> rows{};

  Vec3 apply(const Vec3& v) const {
    return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)};
  }
  double trace() const { return rows[0][0] + rows[1][1] + rows[2][2]; }
};

/// Angle between two nonzero vectors, in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
  double c = dot(a, b) / (norm(a) * norm(b));
  c = std::fmax(-1.0, std::fmin(1.0, c));
  return std::acos(c);
}

/// Angle between the lines spanned by two nonzero vectors, in [0, pi/2].
inline double line_angle_between(const Vec3& a, const Vec3& b) {
  double c = std::fabs(dot(a, b)) / (norm(a) * norm(b));
  c = std::fmin(1.0, c);
  return std::acos(c);
}

}  // namespace geocoil
