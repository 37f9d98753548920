#include <doctest.h>

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/surface.hpp"

using namespace geocoil;

namespace {

// Independent scalar evaluation used as the finite-difference base.
double phi_at(const Surface& s, double x, double y, double z) {
  return s.phi(Vec3{x, y, z});
}

Vec3 fd_gradient(const Surface& s, const Vec3& p, double h) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 a = p, b = p;
    a[i] += h;
    b[i] -= h;
    g[i] = (s.phi(a) - s.phi(b)) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("quartic phi matches the explicit coordinate sum") {
  const Surface s = Surface::quartic(EpsTriple{0.02, 0.03, 0.04});
  const Vec3 p{0.3, -0.5, 0.7};
  const double expect = (0.09 + 0.02 * 0.0081) + (0.25 + 0.03 * 0.0625) +
                        (0.49 + 0.04 * 0.2401) - 1.0;
  CHECK(std::abs(phi_at(s, 0.3, -0.5, 0.7) - expect) < 1e-15);
  CHECK(std::abs(s.phi(p) - expect) < 1e-15);
}

TEST_CASE("gradients agree with central differences") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const Surface quartic = Surface::quartic(EpsTriple{0.02, 0.03, 0.04});
  const Surface ellipsoid = Surface::ellipsoid({1.01, 1.02, 1.03});
  for (int k = 0; k < 50; ++k) {
    const Vec3 p{coord(rng), coord(rng), coord(rng)};
    for (const Surface* s : {&quartic, &ellipsoid}) {
      const Vec3 g = s->grad_phi(p);
      const Vec3 fd = fd_gradient(*s, p, 1e-6);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(g[i] - fd[i]) < 1e-6);
    }
  }
}

TEST_CASE("hessians agree with differenced gradients") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const Surface quartic = Surface::quartic(EpsTriple{-0.05, 0.1, 0.2});
  const Surface ellipsoid = Surface::ellipsoid({0.8, 1.2, 2.0});
  const double h = 1e-5;
  for (int k = 0; k < 30; ++k) {
    const Vec3 p{coord(rng), coord(rng), coord(rng)};
    for (const Surface* s : {&quartic, &ellipsoid}) {
      const SymMat3 m = s->hess_phi(p);
      for (int i = 0; i < 3; ++i) {
        Vec3 a = p, b = p;
        a[i] += h;
        b[i] -= h;
        const Vec3 col = (s->grad_phi(a) - s->grad_phi(b)) / (2.0 * h);
        const Vec3 unit{i == 0 ? 1.0 : 0.0, i == 1 ? 1.0 : 0.0, i == 2 ? 1.0 : 0.0};
        const Vec3 mcol = m.apply(unit);
        for (int j = 0; j < 3; ++j) CHECK(std::abs(mcol[j] - col[j]) < 1e-5);
      }
    }
  }
}

TEST_CASE("projection lands on the surface and is idempotent") {
  std::mt19937 rng(44);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const Surface s = Surface::quartic(EpsTriple{0.05, -0.1, 0.2});
  for (int k = 0; k < 50; ++k) {
    Vec3 p{coord(rng), coord(rng), coord(rng)};
    if (norm(p) < 0.3) p = p + Vec3{0.5, 0.5, 0.5};
    const Vec3 q = s.project_to_surface(p);
    CHECK(std::abs(s.phi(q)) <= 1e-12);
    const Vec3 q2 = s.project_to_surface(q);
    CHECK(norm(q2 - q) <= 1e-12);
  }
}

TEST_CASE("axis projection agrees with a bisection solve of the quartic") {
  // On the z-axis the projection solves z^2 + eps3 z^4 = 1 exactly.
  const double eps3 = 0.04;
  const Surface s = Surface::quartic(EpsTriple{0.02, 0.03, eps3});
  double lo = 0.9, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = mid * mid + eps3 * mid * mid * mid * mid - 1.0;
    (f > 0.0 ? hi : lo) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const Vec3 q = s.project_to_surface(Vec3{0.0, 0.0, 1.2});
  CHECK(std::abs(q[0]) < 1e-15);
  CHECK(std::abs(q[1]) < 1e-15);
  CHECK(std::abs(q[2] - root) < 1e-10);
  CHECK(std::abs(root - 0.9812808) < 1e-6);  // frozen scalar fixture
}

TEST_CASE("velocity projection removes the normal component") {
  const Surface s = Surface::quartic(EpsTriple{0.02, 0.03, 0.04});
  const Vec3 x = s.project_to_surface(Vec3{0.5, 0.5, 0.7});
  const Vec3 v{1.0, -2.0, 0.5};
  const Vec3 u = s.project_velocity(x, v);
  CHECK(std::abs(dot(u, s.grad_phi(x))) <= 1e-14 * norm(u) * norm(s.grad_phi(x)));
  const Vec3 u2 = s.project_velocity(x, u);
  CHECK(norm(u2 - u) <= 1e-14);
}

TEST_CASE("coefficient validation rejects large deformations") {
  CHECK_THROWS_AS(Surface::quartic(EpsTriple{0.6, 0.0, 0.0}), Error);
  try {
    Surface::quartic(EpsTriple{0.0, -0.51, 0.0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
}

TEST_CASE("variant accessors reject the wrong surface kind") {
  const Surface e = Surface::ellipsoid({1.0, 2.0, 3.0});
  try {
    (void)e.eps();
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == Errc::VariantMismatch);
  }
  const Surface q = Surface::quartic(EpsTriple{0.0, 0.0, 0.0});
  CHECK_THROWS_AS((void)q.axes(), Error);
}

TEST_CASE("ellipsoid phi and gradient have the familiar closed form") {
  const Surface s = Surface::ellipsoid({1.01, 1.02, 1.03});
  const Vec3 p{0.5, -0.25, 0.75};
  double expect = -1.0;
  const double a[3] = {1.01, 1.02, 1.03};
  for (int i = 0; i < 3; ++i) expect += p[i] * p[i] / (a[i] * a[i]);
  CHECK(std::abs(s.phi(p) - expect) < 1e-15);
  const Vec3 g = s.grad_phi(p);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(g[i] - 2.0 * p[i] / (a[i] * a[i])) < 1e-15);
}
