#include "attoclock/sfa.hpp"

#include <cmath>

#include "attoclock/errors.hpp"
#include "attoclock/rootfind.hpp"

namespace attoclock {

namespace {

cplx laser_energy(cplx t, const Vec2r& p, const LaserSpec& laser) {
  const Vec2c a = apot(t, laser);
  const cplx vx = p.x() + a.x();
  const cplx vy = p.y() + a.y();
  return 0.5 * (vx * vx + vy * vy);
}

// Bisection along t = t0 + i*tau for the real part of the saddle residual.
// Works for epsilon < 1 where the residual real part diverges to -inf with tau
// once the window phase t0 is near a field extremum.
std::optional<cplx> imaginary_axis_seed(const Vec2r& p, const LaserSpec& laser,
                                        const AtomSpec& atom) {
  const real w = laser.omega;
  const real a0 = laser.e0 / w;
  real t0 = 0.0;
  if (std::abs(p.x()) > 1e-14) {
    const real s = std::clamp(-p.x() / a0, -1.0, 1.0);
    t0 = std::asin(s) / w;
  }
  auto fre = [&](real tau) {
    return (2.0 * laser_energy(cplx(t0, tau), p, laser)).real() + 2.0 * atom.ip;
  };
  real hi = 0.5 / w;
  const real tau_max = 60.0 / w;
  while (fre(hi) > 0) {
    hi *= 1.5;
    if (hi > tau_max) return std::nullopt;
  }
  const real tau = bisect(fre, 0.0, hi, 1e-12 / w);
  return cplx(t0, tau);
}

}  // namespace

cplx saddle_residual(cplx t, const Vec2r& p, const LaserSpec& laser, const AtomSpec& atom) {
  return laser_energy(t, p, laser) + 0.5 * atom.kappa() * atom.kappa();
}

cplx saddle_expansion(real p_perp_e, const DerivedParams& d) {
  const real kappa = d.atom.kappa();
  const real g = d.gamma;
  const real eps = d.laser.epsilon;
  const real u2 = p_perp_e * p_perp_e / (kappa * kappa);
  const real q = std::sqrt(1.0 + u2);
  const real x = g * q - g * g * eps * (p_perp_e / (2 * kappa)) * q +
                 (g * g * g / 24.0) * q * (-4.0 + 3.0 * eps * eps + 4.0 * (-1.0 + 3.0 * eps * eps) * u2);
  return cplx(0.0, x / d.laser.omega);
}

cplx saddle_numeric(const Vec2r& p, const LaserSpec& laser, const AtomSpec& atom,
                    const SaddleOptions& opts) {
  laser.validate();
  atom.validate();

  cplx seed;
  if (opts.seed) {
    seed = *opts.seed;
  } else {
    const DerivedParams d = derive(laser, atom);
    const real p_perp_e = p.y() + apot(0.0, laser).y();
    seed = saddle_expansion(p_perp_e, d);
    const bool expansion_ok = seed.imag() > 0 && d.gamma < 1.0 && std::abs(p.x()) < 1e-12;
    if (!expansion_ok) {
      const auto s = imaginary_axis_seed(p, laser, atom);
      if (!s) throw NonConvergenceError("saddle_numeric: no seed bracket found");
      seed = *s;
    }
  }

  auto f = [&](cplx t) { return saddle_residual(t, p, laser, atom); };
  auto df = [&](cplx t) {
    const Vec2c a = apot(t, laser);
    const Vec2c e = efield(t, laser);
    return -((p.x() + a.x()) * e.x() + (p.y() + a.y()) * e.y());
  };
  NewtonOptions nopt;
  nopt.max_iter = opts.max_iter;
  nopt.tol = opts.tol;
  const cplx t_s = newton_complex(f, df, seed, nopt);
  if (!(t_s.imag() > 0))
    throw NonConvergenceError("saddle_numeric: converged to a root with Im(t_s) <= 0");
  return t_s;
}

cplx action_on_path(const std::vector<cplx>& nodes, const Vec2r& p, const LaserSpec& laser,
                    const AtomSpec& atom, const QuadratureOptions& qopt) {
  if (nodes.size() < 2) throw DomainError("action_on_path: need at least two nodes");
  const cplx integral =
      integrate_path([&](cplx t) { return laser_energy(t, p, laser); }, nodes, qopt);
  return integral - cplx(atom.ip) * nodes.front();
}

cplx action(cplx t_s, real t_e, const Vec2r& p, const LaserSpec& laser, const AtomSpec& atom,
            const QuadratureOptions& qopt) {
  return action_on_path({t_s, cplx(t_s.real(), 0.0), cplx(t_e, 0.0)}, p, laser, atom, qopt);
}

SaddleSolution solve_saddle(const Vec2r& p, const LaserSpec& laser, const AtomSpec& atom,
                            const SaddleOptions& opts) {
  SaddleSolution sol;
  sol.t_s = saddle_numeric(p, laser, atom, opts);
  sol.t_e = 0.0;
  sol.p = p;
  if (std::abs(saddle_residual(sol.t_s, p, laser, atom)) > 1e-10)
    throw NonConvergenceError("solve_saddle: residual invariant violated");
  sol.action = action(sol.t_s, sol.t_e, p, laser, atom);
  return sol;
}

real rate_exponent(const SaddleSolution& sol) {
  const real r = -2.0 * sol.action.imag();
  if (!(r > 0)) throw DomainError("rate_exponent: nonpositive exponent");
  return r;
}

cplx sfa_oracle(const Vec2r& p, const LaserSpec& laser, const AtomSpec& atom,
                const OracleWindow& window) {
  laser.validate();
  atom.validate();
  if (laser.epsilon >= 1.0)
    throw DomainError("sfa_oracle: vertical legs require epsilon < 1");
  const real w = laser.omega;
  const real a0 = laser.e0 / w;
  const real eps = laser.epsilon;

  // Closed-form antiderivative of the laser-frame energy, W(0) = 0. Keeps the
  // oracle's action evaluation independent of the adaptive-quadrature route
  // used by action().
  auto W = [&](cplx t) {
    const cplx wt = w * t;
    const real p2 = p.squaredNorm();
    const real dc = a0 * a0 * (1.0 - eps * eps) / 4.0 + a0 * a0 * eps * eps / 2.0;
    return (0.5 * p2 + dc) * t + a0 * p.x() * (1.0 - std::cos(wt)) / w -
           a0 * eps * p.y() * std::sin(wt) / w -
           a0 * a0 * (1.0 - eps * eps) * std::sin(2.0 * wt) / (8.0 * w);
  };
  auto integrand = [&](cplx t) {
    return std::exp(cplx(0, 1) * (W(t) + cplx(atom.ip) * t));
  };

  const int k = std::max(1, window.half_cycles);
  const real t1 = (M_PI / 2 + k * M_PI) / w;
  const real t0 = -t1;
  const real h = window.leg_height > 0 ? window.leg_height : 3.5 / w;

  QuadratureOptions qopt;
  qopt.rel_tol = 1e-9;
  qopt.abs_tol = 1e-16;
  return integrate_path(integrand, {cplx(t0, h), cplx(t0, 0), cplx(t1, 0), cplx(t1, h)},
                        qopt);
}

}  // namespace attoclock
