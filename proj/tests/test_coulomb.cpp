#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "attoclock/coulomb.hpp"
#include "attoclock/ode.hpp"
#include "attoclock/quadrature.hpp"
#include "attoclock/sfa.hpp"

using namespace attoclock;

namespace {

const AtomSpec kHe{0.9036, 1.0};
const real kOmega735 = LaserSpec::omega_from_wavelength_nm(735.0);

// Scalar field strength along the tunneling direction (paper convention),
// E(t) = E0 cos(wt) = -E_x(t).
cplx scalar_field(cplx t, const LaserSpec& laser) {
  return laser.e0 * std::cos(laser.omega * t);
}

ExitConditions zero_range_seed(const LaserSpec& laser, const AtomSpec& atom) {
  return exit_numeric(laser, atom);
}

}  // namespace

TEST_CASE("coulomb starting point") {
  const LaserSpec laser{0.1, kOmega735, 0.87};

  // defining relation -x_s E(t_s) - Z^2/(2 kappa^2 x_s^2) = 0
  for (cplx ts : {cplx(0.0, 0.0), cplx(0.0, 12.0), cplx(-2.0, 12.5), cplx(1.0, 8.0)}) {
    const CoulombSaddle s = coulomb_start(ts, laser, kHe);
    const cplx resid = -s.x_s * scalar_field(ts, laser) -
                       1.0 / (2.0 * kHe.kappa() * kHe.kappa() * s.x_s * s.x_s);
    CHECK(std::abs(resid) < 1e-12);
  }

  // arithmetic of the closed form at real t_s = 0
  {
    const CoulombSaddle s = coulomb_start(cplx(0.0, 0.0), laser, kHe);
    CHECK(std::abs(s.x_s) ==
          doctest::Approx(std::cbrt(1.0 / (2.0 * 2.0 * kHe.ip * 0.1))).epsilon(1e-12));
    CHECK(std::arg(s.x_s) == doctest::Approx(-M_PI / 3.0).epsilon(1e-12));
  }

  // Z -> 0: start collapses to the core with velocity i kappa
  {
    const AtomSpec tiny{kHe.ip, 1e-9};
    const CoulombSaddle s = coulomb_start(cplx(0.0, 12.0), laser, tiny);
    CHECK(std::abs(s.x_s) < 1e-5);
    CHECK(std::abs(s.v_s - cplx(0.0, tiny.kappa())) < 5e-3);
  }

  // degenerate field at the quarter-period zero crossing
  CHECK_THROWS_AS(
      coulomb_start(cplx(M_PI / (2.0 * kOmega735), 0.0), LaserSpec{0.1, kOmega735, 0.0}, kHe),
      DegenerateFieldError);
}

TEST_CASE("under-barrier integration reduces to the laser-only closed form at Z = 0") {
  const LaserSpec laser = laser_for_gamma(0.9, kOmega735, 0.87, kHe);
  const AtomSpec atom0{kHe.ip, 0.0};
  const cplx ts = saddle_numeric(Vec2r(0.0, 0.87 * laser.e0 / laser.omega), laser, kHe);

  CoulombSaddle start;
  start.t_s = ts;
  start.x_s = 0.0;
  start.v_s = apot(ts, laser).x();  // zero-range most probable trajectory

  UnderBarrierOptions opts;
  opts.record_path = true;
  const UnderBarrierResult r = integrate_under_barrier(start, 0.0, cplx(0.0), laser, atom0, opts);

  const real w = laser.omega;
  auto x_closed = [&](cplx t) {
    // x(t) = int_ts^t A_x dt' = -(E0/w^2)(cos wt - cos wts)
    return -(laser.e0 / (w * w)) * (std::cos(w * t) - std::cos(w * ts));
  };
  real max_dev = 0;
  for (const auto& [t, state] : r.path)
    max_dev = std::max(max_dev, std::abs(state[0] - x_closed(t)));
  CHECK(max_dev < 1e-8);
  CHECK(std::abs(r.position.x() - x_closed(0.0)) < 1e-9);
}

TEST_CASE("under-barrier energy balance and reversibility") {
  const LaserSpec laser{0.1, kOmega735, 0.87};
  const real g = kHe.kappa() * kOmega735 / 0.1;
  const ExitConditions seed = zero_range_seed(laser, kHe);
  const cplx ts0 = saddle_numeric(
      Vec2r(0.0, seed.p_perp_exit + 0.87 * laser.e0 / laser.omega), laser, kHe);
  (void)g;

  const CoulombSaddle start = coulomb_start(ts0, laser, kHe);
  const cplx pp(seed.p_perp_exit, 0.0);

  // Augmented integration: W(t) = int r . dE/dt dt along the contour must
  // equal the change of H = v^2/2 - Z/r + r*E(t) (test-side oracle of the
  // same Newton dynamics).
  using State6 = Eigen::Matrix<cplx, 6, 1>;
  auto hval = [&](const State6& s, cplx t) {
    const cplx r = sqrt_re_nonneg(s[0] * s[0] + s[1] * s[1]);
    const Vec2c e = efield(t, laser);
    return 0.5 * (s[2] * s[2] + s[3] * s[3]) - kHe.z / r + s[0] * e.x() + s[1] * e.y();
  };
  auto rhs6 = [&](cplx t, const State6& s) {
    const cplx r = sqrt_re_nonneg(s[0] * s[0] + s[1] * s[1]);
    const cplx r3 = r * r * r;
    const Vec2c e = efield(t, laser);
    const Vec2c edot = efield_dot(t, laser);
    State6 d;
    d[0] = s[2];
    d[1] = s[3];
    d[2] = -e.x() - kHe.z * s[0] / r3;
    d[3] = -e.y() - kHe.z * s[1] / r3;
    d[4] = s[0] * edot.x() + s[1] * edot.y();  // dW/dt
    d[5] = 0;
    return d;
  };

  State6 s;
  s << start.x_s, cplx(0.0), start.v_s, pp, cplx(0.0), cplx(0.0);
  const State6 s_init = s;
  const real delta = 1e-3 / laser.omega;
  const std::vector<cplx> nodes{ts0, cplx(ts0.real(), delta), cplx(0.3, delta), cplx(0.3, 0.0)};
  OdeOptions oopt;
  oopt.rel_tol = 1e-11;
  oopt.abs_tol = 1e-13;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const cplx a = nodes[i], b = nodes[i + 1];
    auto leg = [&](real sig, const State6& y) -> State6 { return (b - a) * rhs6(a + (b - a) * sig, y); };
    s = integrate_adaptive(leg, 0.0, 1.0, s, oopt);
  }
  const cplx dH = hval(s, nodes.back()) - hval(s_init, nodes.front());
  CHECK(std::abs(dH - s[4]) < 1e-8 * std::max(1.0, std::abs(dH)));

  // the library path matches the oracle endpoint
  UnderBarrierOptions opts;
  opts.im_offset = delta;
  const UnderBarrierResult lib = integrate_under_barrier(start, 0.3, pp, laser, kHe, opts);
  CHECK(std::abs(lib.position.x() - s[0]) < 1e-9);
  CHECK(std::abs(lib.velocity.y() - s[3]) < 1e-9);

  // reversing the contour reproduces the start state
  State6 back = s;
  for (std::size_t i = nodes.size(); i-- > 1;) {
    const cplx a = nodes[i], b = nodes[i - 1];
    auto leg = [&](real sig, const State6& y) -> State6 { return (b - a) * rhs6(a + (b - a) * sig, y); };
    back = integrate_adaptive(leg, 0.0, 1.0, back, oopt);
  }
  CHECK(std::abs(back[0] - s_init[0]) < 1e-7);
  CHECK(std::abs(back[2] - s_init[2]) < 1e-7);
}

TEST_CASE("exit solve at the anchor field strength") {
  // He, 735 nm, eps = 0.87, E0 = 0.1 (frozen regression values)
  const LaserSpec laser{0.1, kOmega735, 0.87};
  const CoulombExit exit = solve_exit(laser, kHe, zero_range_seed(laser, kHe));

  CHECK(exit.x_exit > 0);
  CHECK(exit.x_exit == doctest::Approx(6.116).epsilon(2e-3));
  CHECK(exit.p_perp_exit == doctest::Approx(0.13319).epsilon(2e-3));
  CHECK(exit.t_exit == doctest::Approx(0.54598).epsilon(2e-3));
  CHECK(exit.t_s.real() == doctest::Approx(-2.0026).epsilon(2e-3));
  CHECK(exit.t_s.imag() == doctest::Approx(12.4601).epsilon(2e-3));

  // exit-condition residuals
  const UnderBarrierResult r = integrate_under_barrier(
      coulomb_start(exit.t_s, laser, kHe), exit.t_exit, exit.p_perp_trial, laser, kHe);
  CHECK(std::abs(r.position.x().imag()) < 1e-8);
  CHECK(std::abs(r.velocity.x()) < 1e-8);
  CHECK(std::abs(r.position.y().imag()) < 1e-8);
  CHECK(std::abs(r.velocity.y().imag()) < 1e-8);
}

TEST_CASE("degeneration to the zero-range exit at linear polarization") {
  const LaserSpec laser = laser_for_gamma(0.8, kOmega735, 0.0, kHe);
  const AtomSpec tiny{kHe.ip, 1e-6};
  const ExitConditions zr = exit_numeric(laser, kHe);
  const CoulombExit exit = solve_exit(laser, tiny, zr);

  CHECK(std::abs(exit.x_exit - zr.x_exit) / zr.x_exit < 1e-5);
  CHECK(std::abs(exit.p_perp_exit) < 1e-8);
  CHECK(std::abs(exit.t_exit) < 1e-6);
  CHECK(std::abs(exit.t_s.imag() - std::asinh(0.8) / laser.omega) /
            (std::asinh(0.8) / laser.omega) <
        1e-4);
}

TEST_CASE("solution is stable under seed perturbation") {
  const LaserSpec laser{0.1, kOmega735, 0.87};
  ExitConditions seed = zero_range_seed(laser, kHe);
  const CoulombExit base = solve_exit(laser, kHe, seed);
  for (real factor : {0.99, 1.01, 1.05, 0.95, 1.02}) {
    ExitConditions s2 = seed;
    s2.p_perp_exit *= factor;
    s2.x_exit *= 2.0 - factor;
    const CoulombExit e2 = solve_exit(laser, kHe, s2);
    CHECK(std::abs(e2.x_exit - base.x_exit) < 1e-6);
    CHECK(std::abs(e2.t_exit - base.t_exit) < 1e-6);
  }
}

TEST_CASE("exit is converged in the integrator tolerance") {
  const LaserSpec laser{0.1, kOmega735, 0.87};
  const ExitConditions seed = zero_range_seed(laser, kHe);
  SolveExitOptions tight;
  tight.barrier.rel_tol = 0.5e-11;
  tight.barrier.abs_tol = 0.5e-13;
  const CoulombExit a = solve_exit(laser, kHe, seed);
  const CoulombExit b = solve_exit(laser, kHe, seed, tight);
  CHECK(std::abs(a.x_exit - b.x_exit) / a.x_exit < 1e-6);
}

TEST_CASE("scan over the Keldysh range") {
  const std::vector<real> gammas{0.9, 1.2, 1.5};
  const auto points = exit_scan(gammas, kOmega735, 0.87, kHe);
  REQUIRE(points.size() == 3);
  for (std::size_t i = 0; i < points.size(); ++i) {
    REQUIRE(points[i].exit.has_value());
    const ExitConditions zr = exit_numeric(points[i].laser, kHe);
    const DerivedParams d = derive(points[i].laser, kHe);
    CHECK(points[i].exit->x_exit < zr.x_exit);       // Coulomb pulls the exit inward
    CHECK(zr.x_exit < d.x_exit_qs);                  // nonadiabatic shift
    CHECK(points[i].exit->p_perp_exit < zr.p_perp_exit);
  }
}
