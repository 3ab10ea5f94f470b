#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "attoclock/errors.hpp"
#include "attoclock/field.hpp"

namespace attoclock {

struct NewtonOptions {
  int max_iter = 100;
  real tol = 1e-12;
  real fd_step = 1e-7;   // multivariate only: forward-difference scale
  int max_halvings = 25;
};

/// Damped complex-scalar Newton iteration for f(z) = 0. The step is halved
/// while the residual does not decrease.
template <class F, class DF>
cplx newton_complex(F&& f, DF&& df, cplx z, const NewtonOptions& opt = {}) {
  cplx fz = f(z);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (std::abs(fz) < opt.tol) return z;
    const cplx d = df(z);
    if (d == cplx(0)) throw NonConvergenceError("newton: zero derivative");
    const cplx step = -fz / d;
    real lambda = 1.0;
    cplx z_next = z + step, f_next = f(z_next);
    for (int k = 0; k < opt.max_halvings && std::abs(f_next) >= std::abs(fz); ++k) {
      lambda *= 0.5;
      z_next = z + lambda * step;
      f_next = f(z_next);
    }
    z = z_next;
    fz = f_next;
  }
  if (std::abs(fz) < opt.tol) return z;
  throw NonConvergenceError("newton: no convergence after max iterations");
}

/// Damped multivariate Newton with a forward-difference Jacobian.
/// Residual target is on the infinity norm of F.
inline Eigen::VectorXd newton_fd(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fun,
                                 Eigen::VectorXd x, const NewtonOptions& opt = {}) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd fx = fun(x);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (fx.lpNorm<Eigen::Infinity>() < opt.tol) return x;
    Eigen::MatrixXd jac(fx.size(), n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const real h = opt.fd_step * std::max(1.0, std::abs(x[j]));
      Eigen::VectorXd xj = x;
      xj[j] += h;
      jac.col(j) = (fun(xj) - fx) / h;
    }
    const Eigen::VectorXd step = jac.fullPivLu().solve(-fx);
    real lambda = 1.0;
    Eigen::VectorXd x_next = x + step, f_next = fun(x_next);
    for (int k = 0; k < opt.max_halvings && f_next.norm() >= fx.norm(); ++k) {
      lambda *= 0.5;
      x_next = x + lambda * step;
      f_next = fun(x_next);
    }
    x = x_next;
    fx = f_next;
  }
  if (fx.lpNorm<Eigen::Infinity>() < opt.tol) return x;
  throw NonConvergenceError("newton_fd: no convergence after max iterations");
}

/// Golden-section minimization of a unimodal function on [lo, hi].
template <class F>
real golden_minimize(F&& f, real lo, real hi, real x_tol) {
  static const real inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  real a = lo, b = hi;
  real c = b - inv_phi * (b - a);
  real d = a + inv_phi * (b - a);
  real fc = f(c), fd = f(d);
  while (std::abs(b - a) > x_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Bisection for a bracketed scalar root.
template <class F>
real bisect(F&& f, real lo, real hi, real x_tol, int max_iter = 200) {
  real flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (flo * fhi > 0) throw DomainError("bisect: root not bracketed");
  for (int i = 0; i < max_iter && (hi - lo) > x_tol; ++i) {
    const real mid = 0.5 * (lo + hi);
    const real fm = f(mid);
    if (fm == 0) return mid;
    if (flo * fm < 0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

/// Principal square root reflected into the half-plane Re >= 0.
inline cplx sqrt_re_nonneg(cplx z) {
  cplx s = std::sqrt(z);
  if (s.real() < 0) s = -s;
  return s;
}

}  // namespace attoclock
