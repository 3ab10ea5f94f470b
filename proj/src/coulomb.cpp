#include "attoclock/coulomb.hpp"

#include <cmath>

#include "attoclock/errors.hpp"
#include "attoclock/ode.hpp"
#include "attoclock/rootfind.hpp"
#include "attoclock/sfa.hpp"

namespace attoclock {

namespace {

// Scalar field strength along the tunneling direction, E(t) = E0 cos(wt).
// This is -E_x(t) of the vector field convention.
cplx scalar_field(cplx t, const LaserSpec& laser) {
  return laser.e0 * std::cos(laser.omega * t);
}

std::vector<cplx> contour_nodes(cplx t_s, real t_e, real im_offset) {
  if (im_offset <= 0) return {t_s, cplx(t_s.real(), 0.0), cplx(t_e, 0.0)};
  return {t_s, cplx(t_s.real(), im_offset), cplx(t_e, im_offset), cplx(t_e, 0.0)};
}

using State = Eigen::Vector4cd;  // x, y, vx, vy

State rhs(cplx t, const State& s, const LaserSpec& laser, real z) {
  const Vec2c e = efield(t, laser);
  const cplx x = s[0], y = s[1];
  State d;
  d[0] = s[2];
  d[1] = s[3];
  if (z != 0.0) {
    const cplx r = sqrt_re_nonneg(x * x + y * y);
    const cplx r3 = r * r * r;
    d[2] = -e.x() - z * x / r3;
    d[3] = -e.y() - z * y / r3;
  } else {
    d[2] = -e.x();
    d[3] = -e.y();
  }
  return d;
}

}  // namespace

CoulombSaddle coulomb_start(cplx t_s, const LaserSpec& laser, const AtomSpec& atom) {
  laser.validate();
  atom.validate();
  const cplx e_scalar = scalar_field(t_s, laser);
  if (std::abs(e_scalar) < 1e-12)
    throw DegenerateFieldError("coulomb_start: field vanishes at t_s");
  const real kappa = atom.kappa();
  const real z = atom.z;

  CoulombSaddle out;
  out.t_s = t_s;
  const cplx cube = z * z / (2.0 * kappa * kappa * e_scalar);
  out.x_s = std::exp(cplx(0, -M_PI / 3.0)) * std::pow(cube, 1.0 / 3.0);
  const cplx rho = sqrt_re_nonneg(out.x_s * out.x_s);
  out.v_s = cplx(0, 1) * (kappa * kappa * rho - z) / (kappa * out.x_s);
  return out;
}

UnderBarrierResult integrate_under_barrier(const CoulombSaddle& start, real t_e,
                                           cplx p_perp_trial, const LaserSpec& laser,
                                           const AtomSpec& atom,
                                           const UnderBarrierOptions& opts) {
  const real im_offset = opts.im_offset < 0 ? 1e-3 / laser.omega : opts.im_offset;

  UnderBarrierResult out;
  out.contour = contour_nodes(start.t_s, t_e, im_offset);

  State s;
  s << start.x_s, cplx(0.0), start.v_s, p_perp_trial;

  OdeOptions oopt;
  oopt.rel_tol = opts.rel_tol;
  oopt.abs_tol = opts.abs_tol;

  for (std::size_t leg = 0; leg + 1 < out.contour.size(); ++leg) {
    const cplx a = out.contour[leg], b = out.contour[leg + 1];
    if (a == b) continue;
    auto leg_rhs = [&](real sigma, const State& y) -> State {
      return (b - a) * rhs(a + (b - a) * sigma, y, laser, atom.z);
    };
    auto observer = [&](real sigma, const State& y) {
      if (std::abs(std::sqrt(y[0] * y[0] + y[1] * y[1])) < opts.r_min)
        throw CoreCollisionError("integrate_under_barrier: trajectory inside core guard");
      if (opts.record_path) out.path.push_back({a + (b - a) * sigma, y});
    };
    s = integrate_adaptive(leg_rhs, 0.0, 1.0, s, oopt, observer);
  }
  out.position = Vec2c(s[0], s[1]);
  out.velocity = Vec2c(s[2], s[3]);
  return out;
}

CoulombExit solve_exit(const LaserSpec& laser, const AtomSpec& atom, const ExitConditions& seed,
                       const SolveExitOptions& opts) {
  laser.validate();
  atom.validate();
  const real a0 = laser.e0 / laser.omega;

  // Zero-range saddle at the seed transverse momentum starts the iteration.
  cplx t_s = saddle_numeric(Vec2r(0.0, seed.p_perp_exit + laser.epsilon * a0), laser, atom);
  real t_e = seed.t_exit;
  cplx p_perp = seed.p_perp_exit;

  auto shoot = [&](cplx ts, real te, cplx pp) {
    return integrate_under_barrier(coulomb_start(ts, laser, atom), te, pp, laser, atom,
                                   opts.barrier);
  };

  NewtonOptions nopt;
  nopt.max_iter = opts.max_newton;
  nopt.tol = 0.2 * opts.tol;
  nopt.fd_step = 1e-7;

  for (int outer = 0; outer < opts.max_outer; ++outer) {
    // Longitudinal: {Re t_s, Im t_s, t_e} vs {Im x, Re vx, Im vx} at t_e.
    {
      auto fun = [&](const Eigen::VectorXd& v) {
        const UnderBarrierResult r = shoot(cplx(v[0], v[1]), v[2], p_perp);
        Eigen::VectorXd f(3);
        f << r.position.x().imag(), r.velocity.x().real(), r.velocity.x().imag();
        return f;
      };
      Eigen::VectorXd v(3);
      v << t_s.real(), t_s.imag(), t_e;
      v = newton_fd(fun, v, nopt);
      t_s = cplx(v[0], v[1]);
      t_e = v[2];
    }
    // Transverse: {Re p_perp, Im p_perp} vs {Im y, Im vy} at t_e.
    {
      auto fun = [&](const Eigen::VectorXd& v) {
        const UnderBarrierResult r = shoot(t_s, t_e, cplx(v[0], v[1]));
        Eigen::VectorXd f(2);
        f << r.position.y().imag(), r.velocity.y().imag();
        return f;
      };
      Eigen::VectorXd v(2);
      v << p_perp.real(), p_perp.imag();
      v = newton_fd(fun, v, nopt);
      p_perp = cplx(v[0], v[1]);
    }

    const UnderBarrierResult r = shoot(t_s, t_e, p_perp);
    const real joint =
        std::max({std::abs(r.position.x().imag()), std::abs(r.velocity.x().real()),
                  std::abs(r.velocity.x().imag()), std::abs(r.position.y().imag()),
                  std::abs(r.velocity.y().imag())});
    if (joint < opts.tol) {
      CoulombExit out;
      out.x_exit = r.position.x().real();
      out.p_perp_exit = r.velocity.y().real();
      out.t_exit = t_e;
      out.y_exit = r.position.y().real();
      out.t_s = t_s;
      out.p_perp_trial = p_perp;
      out.contour = r.contour;
      if (!(out.x_exit > 0))
        throw NonConvergenceError("solve_exit: converged to a nonphysical exit (x <= 0)");
      return out;
    }
  }
  throw NonConvergenceError("solve_exit: joint residual did not converge");
}

std::vector<CoulombScanPoint> exit_scan(const std::vector<real>& gammas, real omega,
                                        real epsilon, const AtomSpec& atom,
                                        const SolveExitOptions& opts) {
  std::vector<CoulombScanPoint> out;
  out.reserve(gammas.size());
  std::optional<CoulombExit> prev;

  for (const real g : gammas) {
    CoulombScanPoint point;
    point.gamma = g;
    point.laser = laser_for_gamma(g, omega, epsilon, atom);
    try {
      ExitConditions seed = exit_numeric(point.laser, atom);
      if (prev) {
        // Warm start: keep the neighboring transverse momentum and exit delay,
        // they vary slowly along the curve.
        seed.p_perp_exit = 0.5 * (seed.p_perp_exit + prev->p_perp_exit);
        seed.t_exit = prev->t_exit;
      }
      point.exit = solve_exit(point.laser, atom, seed, opts);
      prev = point.exit;
    } catch (const std::exception& e) {
      point.error = e.what();
      prev.reset();
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace attoclock
