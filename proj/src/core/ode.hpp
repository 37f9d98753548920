#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "core/error.hpp"

namespace geocoil {

/// Controls for the embedded adaptive Runge-Kutta 5(4) stepper.
struct OdeOptions {
  double tol = 1e-10;          ///< absolute and relative tolerance per step
  double h_init = 0.0;         ///< 0: choose automatically
  double h_max = 0.0;          ///< 0: no cap
  double h_min_abort = 1e-12;  ///< StepFailure below this step size
  std::size_t max_steps = 50'000'000;
};

/// Integrates y' = rhs(t, y) from t0 to t1 with the Dormand-Prince 5(4)
/// embedded pair.  After every accepted step on_accept(t, y) runs and may
/// repair y in place (e.g. re-project onto an invariant manifold); returning
/// false stops the integration early.  Throws StepFailure when the step size
/// underflows h_min_abort or the step budget is exhausted.
template <std::size_t N, class Rhs, class OnAccept>
void integrate_adaptive(Rhs&& rhs, std::array<double, N>& y, double t0, double t1,
                        const OdeOptions& opt, OnAccept&& on_accept) {
  using State = std::array<double, N>;

  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  // Fifth-order weights (also the last stage of the pair).
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                          b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  // Embedded fourth-order weights.
  static constexpr double e1 = 5179.0 / 57600.0, e3 = 7571.0 / 16695.0, e4 = 393.0 / 640.0,
                          e5 = -92097.0 / 339200.0, e6 = 187.0 / 2100.0, e7 = 1.0 / 40.0;

  if (!(t1 > t0)) fail(Errc::InvalidArgument, "integration span must be positive");

  const double span = t1 - t0;
  double t = t0;
  State k1, k2, k3, k4, k5, k6, k7, ytmp, y5;

  rhs(t, y, k1);

  // Starting step size: balance the solution scale against the slope scale.
  double h = opt.h_init;
  if (h <= 0.0) {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.tol + opt.tol * std::fabs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    h = (d0 < 1e-8 || d1 < 1e-8) ? 1e-6 * span : 0.01 * d0 / d1;
  }
  if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
  h = std::min(h, span);

  for (std::size_t step = 0; step < opt.max_steps; ++step) {
    if (t >= t1 - 1e-14 * span) return;
    h = std::min(h, t1 - t);
    if (h < opt.h_min_abort) {
      fail(Errc::StepFailure, "adaptive step size underflowed below 1e-12");
    }

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, y5, k7);

    // Scaled RMS difference between the embedded orders.
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double y4i =
          y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.tol + opt.tol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
      const double d = (y5[i] - y4i) / sc;
      err += d * d;
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      t += h;
      y = y5;
      if (!on_accept(t, y)) return;
      rhs(t, y, k1);  // repair may have moved y, so refresh the first stage
      double fac = (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
    if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
  }
  fail(Errc::StepFailure, "adaptive integration exhausted its step budget");
}

}  // namespace geocoil
