#include "attoclock/barrier.hpp"

#include <algorithm>
#include <cmath>

#include "attoclock/errors.hpp"
#include "attoclock/rootfind.hpp"

namespace attoclock {

namespace {

cplx vx_under_barrier(cplx t, const Vec2r& p, const LaserSpec& laser) {
  return p.x() + apot(t, laser).x();
}

// Im y(t_e) for the zero-range trajectory as a function of the transverse exit
// momentum; its zero is the rate-maximizing p_perp (d Im S / d p_y = Im y).
real im_y_exit(real p_perp, const LaserSpec& laser, const AtomSpec& atom) {
  const real a0 = laser.e0 / laser.omega;
  const real p_y = p_perp + laser.epsilon * a0;
  const cplx t_s = saddle_numeric(Vec2r(0.0, p_y), laser, atom);
  const cplx y_exit = -p_y * t_s + laser.epsilon * (laser.e0 / (laser.omega * laser.omega)) *
                                       std::sin(laser.omega * t_s);
  return y_exit.imag();
}

}  // namespace

BarrierTrajectory under_barrier_traj(const SaddleSolution& sol, const LaserSpec& laser,
                                     const AtomSpec& atom, int samples_per_leg) {
  laser.validate();
  if (samples_per_leg < 2) throw DomainError("under_barrier_traj: need >= 2 samples per leg");

  BarrierTrajectory traj;
  auto integrand = [&](cplx t) { return vx_under_barrier(t, sol.p, laser); };

  std::vector<cplx> nodes{sol.t_s, cplx(sol.t_s.real(), 0.0), cplx(sol.t_e, 0.0)};
  cplx x = 0.0;
  traj.samples.push_back({sol.t_s, x});
  for (std::size_t leg = 0; leg + 1 < nodes.size(); ++leg) {
    const cplx a = nodes[leg], b = nodes[leg + 1];
    if (a == b) continue;
    for (int i = 1; i <= samples_per_leg; ++i) {
      const cplx t0 = a + (b - a) * (real(i - 1) / samples_per_leg);
      const cplx t1 = a + (b - a) * (real(i) / samples_per_leg);
      x += integrate_segment(integrand, t0, t1);
      traj.samples.push_back({t1, x});
    }
  }
  traj.x_exit = x.real();
  traj.im_x_exit = x.imag();

  if (laser.epsilon == 0.0 && traj.x_exit > 0) {
    const DerivedParams d = derive(laser, atom);
    const int m = 64;
    for (int i = 0; i <= m; ++i) {
      const real xi = traj.x_exit * real(i) / m;
      traj.energy_level_samples.push_back({xi, energy_level(xi, d)});
    }
  }
  return traj;
}

real energy_level(real x, const DerivedParams& d) {
  if (x < 0) throw DomainError("energy_level: x must be >= 0");
  if (d.laser.epsilon != 0.0)
    throw DomainError("energy_level: analytic level requires linear polarization");
  const real kappa = d.atom.kappa();
  const real g = d.gamma;
  const real bracket = std::sqrt(g * g + 1.0) - g * kappa * x / (2.0 * d.n_photon);
  return kappa * kappa * (1.0 - bracket * bracket) / (2.0 * g * g) - x * d.laser.e0;
}

ExitConditions exit_shift(const DerivedParams& d) {
  const real eps = d.laser.epsilon;
  const real g = d.gamma;
  ExitConditions out;
  out.delta_x = (1.0 - 4.0 * eps * eps / 9.0) * (g * g / 4.0) * d.x_exit_qs;
  out.x_exit = d.x_exit_qs - out.delta_x;
  out.p_perp_exit = eps * g * d.atom.kappa() / 6.0;
  out.t_exit = 0.0;
  out.valid = g <= 1.0;
  return out;
}

ExitConditions exit_numeric(const LaserSpec& laser, const AtomSpec& atom,
                            const ExitNumericOptions& opts) {
  const DerivedParams d = derive(laser, atom);
  const real kappa = atom.kappa();
  const real a0 = laser.e0 / laser.omega;
  const real eps = laser.epsilon;

  auto rate_at = [&](real p_perp) {
    const Vec2r p(0.0, p_perp + eps * a0);
    return rate_exponent(solve_saddle(p, laser, atom));
  };

  real p_perp = 0.0;
  if (eps > 0) {
    const real hi =
        opts.p_hi > 0 ? opts.p_hi : kappa * std::min(0.9, 0.12 + 0.25 * eps * d.gamma);
    const int n = std::max(4, opts.grid_points);
    int best = 0;
    real best_r = rate_at(0.0);
    for (int i = 1; i <= n; ++i) {
      const real r = rate_at(hi * real(i) / n);
      if (r < best_r) {
        best_r = r;
        best = i;
      }
    }
    const real lo_b = hi * real(std::max(0, best - 1)) / n;
    const real hi_b = hi * real(std::min(n, best + 1)) / n;
    p_perp = golden_minimize(rate_at, lo_b, hi_b, opts.golden_tol_kappa * kappa);

    // The golden-section argmin is polished on Im y(t_e) = 0, the stationarity
    // condition of Im S with respect to the transverse momentum.
    real x0 = p_perp, f0 = im_y_exit(x0, laser, atom);
    real x1 = p_perp + 1e-4 * kappa, f1 = im_y_exit(x1, laser, atom);
    for (int it = 0; it < 60 && std::abs(f1) > 1e-13 && f1 != f0; ++it) {
      const real x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
      x0 = x1;
      f0 = f1;
      x1 = x2;
      f1 = im_y_exit(x1, laser, atom);
    }
    if (std::abs(f1) <= 1e-10) p_perp = x1;
  }

  const Vec2r p(0.0, p_perp + eps * a0);
  const SaddleSolution sol = solve_saddle(p, laser, atom);
  const BarrierTrajectory traj = under_barrier_traj(sol, laser, atom);

  ExitConditions out;
  out.x_exit = traj.x_exit;
  out.p_perp_exit = p_perp;
  out.t_exit = 0.0;
  out.delta_x = d.x_exit_qs - traj.x_exit;
  out.valid = true;
  return out;
}

real wkb_barrier_integral(const DerivedParams& d) {
  if (d.laser.epsilon != 0.0)
    throw DomainError("wkb_barrier_integral: requires linear polarization");
  const real g = d.gamma;
  const real e0 = d.laser.e0;
  const real w = d.laser.omega;
  const real x_e = (e0 / (w * w)) * (std::sqrt(1.0 + g * g) - 1.0);

  // Substitution x = x_e (1 - (1-s)^2) flattens the sqrt turning point at x_e.
  auto integrand = [&](cplx sc) {
    const real s = sc.real();
    const real x = x_e * (1.0 - (1.0 - s) * (1.0 - s));
    const real under = 2.0 * (-x * e0 - energy_level(x, d));
    const real px = std::sqrt(std::max(0.0, under));
    return cplx(px * 2.0 * x_e * (1.0 - s));
  };
  QuadratureOptions qopt;
  qopt.rel_tol = 1e-11;
  return integrate_segment(integrand, cplx(0.0), cplx(1.0), qopt).real();
}

real rate_modified(const DerivedParams& d) {
  const real g = d.gamma;
  return 2.0 * (1.0 + g * g / 5.0) * wkb_barrier_integral(d);
}

FactorizedRate rate_factorized(const DerivedParams& d) {
  const ExitConditions exit = exit_shift(d);
  const real delta_e = (d.x_exit_qs - exit.x_exit) * d.laser.e0;
  FactorizedRate out;
  out.n_star = delta_e / d.laser.omega;
  const real level = -d.atom.ip + out.n_star * d.laser.omega;
  if (level >= 0)
    throw DomainError("rate_factorized: raised level reaches the continuum (n* w >= Ip)");

  const real e0 = d.laser.e0;
  const real x_e = exit.x_exit;
  auto integrand = [&](cplx sc) {
    const real s = sc.real();
    const real x = x_e * (1.0 - (1.0 - s) * (1.0 - s));
    const real under = 2.0 * (-x * e0 - level);
    const real p_qs = std::sqrt(std::max(0.0, under));
    return cplx(p_qs * 2.0 * x_e * (1.0 - s));
  };
  QuadratureOptions qopt;
  qopt.rel_tol = 1e-11;
  out.exponent = 2.0 * integrate_segment(integrand, cplx(0.0), cplx(1.0), qopt).real();
  return out;
}

}  // namespace attoclock
