#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "attoclock/errors.hpp"

namespace attoclock {

using real = double;
using cplx = std::complex<double>;

template <class Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
using Vec2r = Vec2<real>;
using Vec2c = Vec2<cplx>;

inline constexpr real kAttosecondsPerAu = 24.188843265857;
inline constexpr real kSpeedOfLightAu = 137.035999084;
inline constexpr real kNanometerAu = 1.0e-9 / 5.29177210903e-11;

/// Monochromatic elliptically polarized field
///   E(t) = -E0 (cos wt, eps sin wt),  A(t) = (E0/w)(sin wt, -eps cos wt),
/// in atomic units. Both are entire functions of t and may be evaluated at
/// complex time.
struct LaserSpec {
  real e0;       ///< peak field strength (a.u.)
  real omega;    ///< angular frequency (a.u.)
  real epsilon;  ///< ellipticity in [0, 1]

  void validate() const {
    if (!(e0 > 0)) throw DomainError("LaserSpec: e0 must be > 0");
    if (!(omega > 0)) throw DomainError("LaserSpec: omega must be > 0");
    if (!(epsilon >= 0 && epsilon <= 1))
      throw DomainError("LaserSpec: epsilon must be in [0, 1]");
  }

  real period() const { return 2 * M_PI / omega; }

  static real omega_from_wavelength_nm(real lambda_nm) {
    if (!(lambda_nm > 0)) throw DomainError("wavelength must be > 0");
    return 2 * M_PI * kSpeedOfLightAu / (lambda_nm * kNanometerAu);
  }
};

struct AtomSpec {
  real ip;  ///< ionization potential (a.u.)
  real z;   ///< residual-ion charge (a.u.)

  void validate() const {
    if (!(ip > 0)) throw DomainError("AtomSpec: ip must be > 0");
    if (!(z >= 0)) throw DomainError("AtomSpec: z must be >= 0");
  }

  /// kappa = sqrt(2 Ip); derived, never stored.
  real kappa() const { return std::sqrt(2 * ip); }
};

template <class Scalar>
Vec2<Scalar> efield(Scalar t, const LaserSpec& laser) {
  using std::cos;
  using std::sin;
  const Scalar wt = laser.omega * t;
  return Vec2<Scalar>(-laser.e0 * cos(wt), -laser.e0 * laser.epsilon * sin(wt));
}

template <class Scalar>
Vec2<Scalar> apot(Scalar t, const LaserSpec& laser) {
  using std::cos;
  using std::sin;
  const Scalar wt = laser.omega * t;
  const real a0 = laser.e0 / laser.omega;
  return Vec2<Scalar>(a0 * sin(wt), -a0 * laser.epsilon * cos(wt));
}

/// d/dt E(t); used by Newton iterations and the under-the-barrier energy check.
template <class Scalar>
Vec2<Scalar> efield_dot(Scalar t, const LaserSpec& laser) {
  using std::cos;
  using std::sin;
  const Scalar wt = laser.omega * t;
  return Vec2<Scalar>(laser.e0 * laser.omega * sin(wt),
                      -laser.e0 * laser.omega * laser.epsilon * cos(wt));
}

/// Dimensionless/derived parameters of the laser-atom combination.
struct DerivedParams {
  LaserSpec laser;
  AtomSpec atom;
  real gamma;      ///< Keldysh parameter kappa*omega/E0
  real up;         ///< ponderomotive energy E0^2/(2 omega^2)
  real n_photon;   ///< Ip/omega
  real x_exit_qs;  ///< quasi-static exit kappa^2/(2 E0)
  real tau_k;      ///< Keldysh time gamma/omega = kappa/E0
  real e_atomic;   ///< atomic field scale kappa^3
};

inline DerivedParams derive(const LaserSpec& laser, const AtomSpec& atom) {
  laser.validate();
  atom.validate();
  const real kappa = atom.kappa();
  DerivedParams d;
  d.laser = laser;
  d.atom = atom;
  d.gamma = kappa * laser.omega / laser.e0;
  d.up = laser.e0 * laser.e0 / (2 * laser.omega * laser.omega);
  d.n_photon = atom.ip / laser.omega;
  d.x_exit_qs = kappa * kappa / (2 * laser.e0);
  d.tau_k = kappa / laser.e0;
  d.e_atomic = kappa * kappa * kappa;
  return d;
}

/// Laser spec realizing a target Keldysh parameter at fixed omega (E0 = kappa*omega/gamma).
inline LaserSpec laser_for_gamma(real gamma, real omega, real epsilon, const AtomSpec& atom) {
  if (!(gamma > 0)) throw DomainError("gamma must be > 0");
  return LaserSpec{atom.kappa() * omega / gamma, omega, epsilon};
}

}  // namespace attoclock
