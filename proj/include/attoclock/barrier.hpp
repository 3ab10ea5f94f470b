#pragma once

#include <utility>
#include <vector>

#include "attoclock/field.hpp"
#include "attoclock/sfa.hpp"

namespace attoclock {

/// Under-the-barrier trajectory of the zero-range model, sampled along the
/// complex-time contour, plus (for linear polarization) the coordinate
/// dependent energy level along the barrier.
struct BarrierTrajectory {
  std::vector<std::pair<cplx, cplx>> samples;  ///< (time, x(time)) along the contour
  real x_exit = 0;                             ///< Re x(t_e)
  real im_x_exit = 0;                          ///< Im x(t_e); ~0 for the most probable trajectory
  std::vector<std::pair<real, real>> energy_level_samples;  ///< (x, E(x)); linear pol only
};

struct ExitConditions {
  real x_exit = 0;
  real p_perp_exit = 0;
  real t_exit = 0;
  real delta_x = 0;   ///< x_exit_qs - x_exit
  bool valid = true;  ///< false when a perturbative formula is used beyond gamma = 1
};

/// x(t) = int_{t_s}^{t} (p_x + A_x) dt' by cumulative quadrature along the
/// L-shaped contour of the saddle solution.
BarrierTrajectory under_barrier_traj(const SaddleSolution& sol, const LaserSpec& laser,
                                     const AtomSpec& atom, int samples_per_leg = 80);

/// Coordinate-dependent energy level during tunneling (linear polarization):
///   E(x) = kappa^2 [1 - (sqrt(gamma^2+1) - gamma kappa x / 2n)^2] / (2 gamma^2) - x E0,
/// with n = Ip/omega. Rises monotonically from -Ip along the barrier.
real energy_level(real x, const DerivedParams& d);

/// Perturbative nonadiabatic exit conditions:
///   delta_x = (1 - 4 eps^2/9) (gamma^2/4) x_qs,  p_perp_e = eps gamma kappa / 6,
/// valid for gamma <~ 1 (flagged otherwise). Exit time stays at the field peak.
ExitConditions exit_shift(const DerivedParams& d);

struct ExitNumericOptions {
  int grid_points = 25;
  real p_hi = 0;               ///< 0 = automatic upper bracket
  real golden_tol_kappa = 1e-4;  ///< golden-section tolerance in units of kappa
};

/// Exit conditions from the rate-maximizing transverse momentum: coarse grid +
/// golden-section refinement of the rate exponent, polished on the equivalent
/// real-exit condition Im y(t_e) = 0 (the stationarity of Im S in p_perp).
/// Valid at any gamma where saddles exist.
ExitConditions exit_numeric(const LaserSpec& laser, const AtomSpec& atom,
                            const ExitNumericOptions& opts = {});

/// WKB coordinate integral K = int_0^{x_e} |p_x(x)| dx of the zero-range
/// barrier (linear polarization), with |p_x| = sqrt(2(-x E0 - E(x))).
real wkb_barrier_integral(const DerivedParams& d);

/// Nonadiabatically corrected tunneling exponent 2 (1 + gamma^2/5) K
/// (linear polarization); reduces to 2 kappa^3/(3 E0) as gamma -> 0.
real rate_modified(const DerivedParams& d);

struct FactorizedRate {
  real n_star;    ///< photons absorbed under the barrier, delta_E / omega
  real exponent;  ///< static-tunneling exponent at the raised energy level
};

/// Factorized rate Gamma ~ I^{n*} exp(-exponent): n* photon absorption
/// followed by static tunneling at energy -Ip + n* omega, with the exit taken
/// from the perturbative shift.
FactorizedRate rate_factorized(const DerivedParams& d);

}  // namespace attoclock
