#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>

#include <Eigen/Core>

#include "attoclock/errors.hpp"
#include "attoclock/field.hpp"

namespace attoclock {

struct OdeOptions {
  real rel_tol = 1e-10;
  real abs_tol = 1e-12;
  real initial_step = 0.0;  // 0 = pick from span
  std::size_t max_steps = 2000000;
};

/// Adaptive Dormand-Prince 5(4) over a real parameter with an Eigen state of
/// real or complex scalar. `rhs(s, y)` returns dy/ds; `observer`, when given,
/// is called with (s, y) after every accepted step (and once at s0) and may
/// throw to abort the integration.
template <class State, class Rhs, class Observer>
State integrate_adaptive(Rhs&& rhs, real s0, real s1, State y, const OdeOptions& opt,
                         Observer&& observer) {
  static constexpr real c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr real a21 = 1.0 / 5;
  static constexpr real a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr real a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr real a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
  static constexpr real a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr real b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr real e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const real span = s1 - s0;
  if (span == 0) return y;
  const real dir = span > 0 ? 1.0 : -1.0;
  real h = opt.initial_step != 0 ? opt.initial_step * dir : span / 64.0;
  const real h_min = std::abs(span) * 1e-15;

  real s = s0;
  observer(s, y);
  State k1 = rhs(s, y);
  std::size_t steps = 0;
  while (dir * (s1 - s) > 0) {
    if (++steps > opt.max_steps) throw StepFailureError("ode: step budget exhausted");
    if (dir * (s + h) > dir * s1) h = s1 - s;

    const State k2 = rhs(s + c2 * h, (y + h * (a21 * k1)).eval());
    const State k3 = rhs(s + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
    const State k4 = rhs(s + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    const State k5 = rhs(s + c5 * h, (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    const State k6 = rhs(s + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
    const State y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const State k7 = rhs(s + h, y5);
    const State errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    real err = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const real scale =
          opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(errv[i]) / scale);
    }

    if (err <= 1.0) {
      s += h;
      y = y5;
      k1 = k7;  // FSAL
      observer(s, y);
    }
    const real fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
    if (std::abs(h) < h_min && dir * (s1 - s) > 0)
      throw StepFailureError("ode: step size underflow");
  }
  return y;
}

template <class State, class Rhs>
State integrate_adaptive(Rhs&& rhs, real s0, real s1, State y0, const OdeOptions& opt = {}) {
  return integrate_adaptive(std::forward<Rhs>(rhs), s0, s1, std::move(y0), opt,
                            [](real, const State&) {});
}

}  // namespace attoclock
