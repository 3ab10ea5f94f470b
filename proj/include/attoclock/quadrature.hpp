#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "attoclock/errors.hpp"
#include "attoclock/field.hpp"

namespace attoclock {

struct QuadratureOptions {
  real rel_tol = 1e-10;
  real abs_tol = 1e-14;
  int max_depth = 52;
  std::size_t max_intervals = 200000;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr real kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};

inline constexpr real kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};

inline constexpr real kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

template <class F>
void gauss_kronrod(F&& f, cplx a, cplx b, cplx& k15, real& err) {
  const cplx mid = 0.5 * (a + b);
  const cplx half = 0.5 * (b - a);
  cplx g7 = 0, sum = 0;
  for (int i = 0; i < 15; ++i) {
    const cplx fi = f(mid + half * kKronrodNodes[i]);
    sum += kKronrodWeights[i] * fi;
    if (i % 2 == 1) g7 += kGaussWeights[i / 2] * fi;
  }
  k15 = half * sum;
  err = std::abs(half) * std::abs(sum - g7);
}

template <class F>
cplx adaptive(F&& f, cplx a, cplx b, real tol_scale, const QuadratureOptions& opt,
              int depth, std::size_t& budget) {
  cplx val;
  real err;
  gauss_kronrod(f, a, b, val, err);
  const real tol = std::max(opt.abs_tol, opt.rel_tol * std::max(tol_scale, std::abs(val)));
  if (err <= tol) return val;
  if (depth >= opt.max_depth || budget == 0)
    throw QuadratureError("adaptive quadrature: tolerance unreachable");
  --budget;
  const cplx mid = 0.5 * (a + b);
  return adaptive(f, a, mid, tol_scale, opt, depth + 1, budget) +
         adaptive(f, mid, b, tol_scale, opt, depth + 1, budget);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of a complex-valued function along the
/// straight segment from a to b in the complex plane.
template <class F>
cplx integrate_segment(F&& f, cplx a, cplx b, const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  std::size_t budget = opt.max_intervals;
  cplx coarse;
  real err;
  detail::gauss_kronrod(f, a, b, coarse, err);
  return detail::adaptive(f, a, b, std::abs(coarse), opt, 0, budget);
}

/// Integral along a polyline of complex nodes.
template <class F>
cplx integrate_path(F&& f, const std::vector<cplx>& nodes, const QuadratureOptions& opt = {}) {
  cplx total = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    total += integrate_segment(f, nodes[i], nodes[i + 1], opt);
  return total;
}

}  // namespace attoclock
