#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "attoclock/field.hpp"
#include "attoclock/quadrature.hpp"

namespace attoclock {

/// One stationary point of the ionization amplitude for asymptotic momentum p,
/// together with the contour action accumulated from t_s to the exit time.
struct SaddleSolution {
  cplx t_s;     ///< complex saddle time, Im(t_s) > 0
  real t_e;     ///< exit time on the real axis
  Vec2r p;      ///< asymptotic (drift) momentum
  cplx action;  ///< S = int_{t_s}^{t_e} (p + A)^2/2 dt - Ip * t_s

  real im_action() const { return action.imag(); }
};

struct SaddleOptions {
  int max_iter = 100;
  real tol = 1e-12;
  std::optional<cplx> seed;  ///< override the built-in seeding
};

/// Saddle time from the third-order Keldysh-parameter expansion
/// (exit-time convention t_e = 0, p_perp_e = transverse momentum at the exit):
///   -i w t_s = g q - g^2 eps (p/2k) q + (g^3/24) q [-4 + 3 eps^2 + 4(-1+3 eps^2) p^2/k^2],
/// with q = sqrt(1 + p^2/k^2). Purely imaginary by construction.
cplx saddle_expansion(real p_perp_e, const DerivedParams& d);

/// Numeric saddle time solving (p + A(t_s))^2/2 = -kappa^2/2 by damped complex
/// Newton iteration. Seeded from the expansion near its validity range and
/// from a bisection along the imaginary time direction otherwise. The accepted
/// root has Im(t_s) > 0 and residual below opts.tol.
cplx saddle_numeric(const Vec2r& p, const LaserSpec& laser, const AtomSpec& atom,
                    const SaddleOptions& opts = {});

/// Contour action S = int E(t,p) dt - Ip*t_s along the L-shaped path
/// t_s -> Re(t_s) -> t_e by adaptive quadrature.
cplx action(cplx t_s, real t_e, const Vec2r& p, const LaserSpec& laser, const AtomSpec& atom,
            const QuadratureOptions& qopt = {});

/// Same action but along explicit contour nodes from t_s to t_e (the value is
/// path independent; used to exercise that property).
cplx action_on_path(const std::vector<cplx>& nodes, const Vec2r& p, const LaserSpec& laser,
                    const AtomSpec& atom, const QuadratureOptions& qopt = {});

/// Saddle + action bundle with the residual invariant checked.
SaddleSolution solve_saddle(const Vec2r& p, const LaserSpec& laser, const AtomSpec& atom,
                            const SaddleOptions& opts = {});

/// Rate exponent R with Gamma ~ exp(-R): R = -2 Im S. Positive for every
/// ionization saddle (pinned by the quasi-static limit 2 kappa^3 / 3 E0).
real rate_exponent(const SaddleSolution& sol);

/// Saddle-equation residual (p + A(t))^2/2 + kappa^2/2 at a trial time.
cplx saddle_residual(cplx t, const Vec2r& p, const LaserSpec& laser, const AtomSpec& atom);

struct OracleWindow {
  int half_cycles = 1;   ///< window = [-(1/2 + n) T/2 ... ] endpoints at cos(wt) = 0
  real leg_height = 0.0; ///< 0 = default 3.5/omega
};

/// Direct integration of the ionization amplitude over a finite real-time
/// window (constant matrix element). The window endpoints sit at zeros of
/// cos(wt) and the contour is closed by vertical legs into the upper
/// half-plane, where the integrand decays; this removes the hard-window
/// turn-on artifacts that would otherwise swamp the exponentially small
/// amplitude. Valid for epsilon < 1.
cplx sfa_oracle(const Vec2r& p, const LaserSpec& laser, const AtomSpec& atom,
                const OracleWindow& window = {});

}  // namespace attoclock
