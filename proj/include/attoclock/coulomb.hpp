#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "attoclock/barrier.hpp"
#include "attoclock/field.hpp"

namespace attoclock {

/// Complex starting point of the Coulomb-corrected under-the-barrier motion.
/// The starting coordinate solves -x E(t_s) - Z^2/(2 kappa^2 x^2) = 0 on the
/// exp(-i pi/3) branch, where E(t) = E0 cos(wt) is the (scalar) field strength
/// along the tunneling direction; the starting velocity follows from the
/// saddle condition on the action gradient.
struct CoulombSaddle {
  cplx t_s;
  cplx x_s;  ///< exp(-i pi/3) [Z^2/(2 kappa^2 E(t_s))]^(1/3), principal cube root
  cplx v_s;  ///< i (kappa^2 sqrt(x_s^2) - Z)/(kappa x_s), Re sqrt >= 0
};

CoulombSaddle coulomb_start(cplx t_s, const LaserSpec& laser, const AtomSpec& atom);

struct UnderBarrierOptions {
  real rel_tol = 1e-11;
  real abs_tol = 1e-13;
  real r_min = 0.1;      ///< core guard radius (a.u.)
  real im_offset = -1;   ///< height of the horizontal contour leg; <0 = 1e-3/omega
  bool record_path = false;
};

struct UnderBarrierResult {
  Vec2c position;  ///< (x, y) at t_e
  Vec2c velocity;  ///< (vx, vy) at t_e
  std::vector<cplx> contour;  ///< time nodes of the integration path
  std::vector<std::pair<cplx, Eigen::Vector4cd>> path;  ///< (t, state) samples if recorded
};

/// Newton's equation r'' = -E(t) - Z r/(x^2+y^2)^(3/2) integrated with complex
/// coordinates along the contour t_s -> Re(t_s)+i d -> t_e+i d -> t_e.
/// Transverse motion is seeded with y(t_s) = 0, y'(t_s) = p_perp_trial.
/// The complex radius uses the branch sqrt(x^2+y^2) with Re >= 0, matching the
/// starting-velocity convention.
UnderBarrierResult integrate_under_barrier(const CoulombSaddle& start, real t_e,
                                           cplx p_perp_trial, const LaserSpec& laser,
                                           const AtomSpec& atom,
                                           const UnderBarrierOptions& opts = {});

struct CoulombExit {
  real x_exit = 0;
  real p_perp_exit = 0;
  real t_exit = 0;   ///< exit delay after the field maximum
  real y_exit = 0;   ///< Re y(t_e), transverse displacement handed to the continuum
  cplx t_s;
  cplx p_perp_trial;  ///< converged transverse shooting parameter
  std::vector<cplx> contour;
};

struct SolveExitOptions {
  real tol = 1e-8;      ///< joint residual target (infinity norm)
  int max_outer = 20;   ///< alternations of the longitudinal/transverse solves
  int max_newton = 30;
  UnderBarrierOptions barrier;
};

/// Two-point boundary shooting: the longitudinal unknowns {Re t_s, Im t_s, t_e}
/// solve {Im x(t_e) = 0, Re x'(t_e) = 0, Im x'(t_e) = 0}; the transverse
/// unknowns {Re p_perp, Im p_perp} solve {Im y(t_e) = 0, Im y'(t_e) = 0}.
/// The two damped Newton solves alternate until the joint residual passes tol.
/// Seeded from zero-range exit conditions.
CoulombExit solve_exit(const LaserSpec& laser, const AtomSpec& atom, const ExitConditions& seed,
                       const SolveExitOptions& opts = {});

struct CoulombScanPoint {
  real gamma = 0;
  LaserSpec laser{0, 0, 0};
  std::optional<CoulombExit> exit;
  std::string error;  ///< empty on success
};

/// Exit solutions over a Keldysh-parameter grid at fixed omega and ellipticity
/// (E0 varied per point), warm-starting each solve from its neighbor.
/// Per-point failures are recorded and the scan continues.
std::vector<CoulombScanPoint> exit_scan(const std::vector<real>& gammas, real omega,
                                        real epsilon, const AtomSpec& atom,
                                        const SolveExitOptions& opts = {});

}  // namespace attoclock
