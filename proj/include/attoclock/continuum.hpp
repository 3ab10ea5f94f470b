#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "attoclock/coulomb.hpp"
#include "attoclock/field.hpp"

namespace attoclock {

/// Which under-the-barrier model supplies the continuum starting conditions.
/// - qs-zero:    quasi-static exit, zero-range continuum (reference, zero offset)
/// - na-zero:    nonadiabatic zero-range exit, Coulomb continuum
/// - qs-coulomb: quasi-static exit, Coulomb continuum
/// - na-coulomb: Coulomb-corrected nonadiabatic exit (shifted exit, transverse
///               momentum, exit delay), Coulomb continuum
enum class Model { QsZero, NaZero, QsCoulomb, NaCoulomb };

std::string_view model_name(Model m);
std::optional<Model> model_from_name(std::string_view name);
std::vector<Model> all_models();

struct LaunchState {
  Vec2r position{0, 0};
  Vec2r velocity{0, 0};  ///< velocity_x = 0 at launch by the exit definition
  real t_start = 0;
  Model model = Model::QsZero;
};

struct PulseShape {
  real n_cycles = 4;     ///< constant-amplitude cycles after launch
  real ramp_cycles = 2;  ///< cos^2 switch-off ramp applied to the vector potential
};

struct PropagateOptions {
  real rel_tol = 1e-10;
  real abs_tol = 1e-12;
  real r_min = 0.1;  ///< hard-recollision guard
};

struct PropagateResult {
  Vec2r position{0, 0};
  Vec2r velocity{0, 0};
  real t_end = 0;
};

/// Classical propagation r'' = -E_tot(t) - Z r/r^3 from the launch state until
/// the field is off. The switch-off multiplies the vector potential by a cos^2
/// ramp (E_tot = -d/dt [A env]), which keeps the asymptotic drift identity
/// p_inf = v(t0) - A(t0) exact for Z = 0. The qs-zero model propagates with
/// Z = 0; all other models use the atom's residual charge.
PropagateResult propagate(const LaunchState& launch, const LaserSpec& laser,
                          const AtomSpec& atom, const PulseShape& pulse = {},
                          const PropagateOptions& opts = {});

/// Asymptotic momentum of the post-pulse Kepler state from conserved energy,
/// angular momentum and eccentricity vector. Z ~ 0 degenerates to straight-line
/// motion. Throws BoundOrbitError when the energy is non-positive.
Vec2r kepler_asymptote(const Vec2r& position, const Vec2r& velocity, real z);

struct AttoclockPoint {
  Vec2r p_inf{0, 0};
  real angle_deg = 0;
  real offset_deg = 0;
  real gamma = 0;
  Model model = Model::QsZero;
};

/// Emission angle (degrees) and offset against a reference direction, wrapped
/// to (-180, 180]. The default reference is the +y axis: the streaking
/// direction -A(0) of the quasi-static zero-range model at the field maximum.
AttoclockPoint emission_angle(const Vec2r& p_inf, const LaserSpec& laser);
AttoclockPoint emission_angle(const Vec2r& p_inf, const Vec2r& reference_dir);

/// Order-of-magnitude Wigner delay, calibrated so tau_w(E0 = 0.1) = -10 as and
/// scaling like (E_a/E0)^exponent; always negative.
real wigner_estimate(real e0, real exponent = 2.0 / 3.0);

struct NaToggles {
  bool exit = true;   ///< use the nonadiabatic exit coordinate (and Re y(t_e))
  bool pperp = true;  ///< use the transverse exit momentum
  bool delay = true;  ///< use the exit-time delay
};

struct AttoclockOptions {
  PulseShape pulse;
  PropagateOptions prop;
  NaToggles toggles;
  bool wigner = false;  ///< add the Wigner-delay correction to the launch time
};

enum class PointStatus { Ok, NoConvergence, CoreCollision, BoundOrbit };
std::string_view status_name(PointStatus s);

/// Everything a scan row reports for one (gamma, model) pair.
struct ModelPoint {
  real gamma = 0;
  Model model = Model::QsZero;
  LaserSpec laser{0, 0, 0};
  real x_exit = 0;
  real p_perp_exit = 0;
  real t_exit = 0;
  real y_exit = 0;
  cplx t_s;  ///< reported saddle time (qs models: Keldysh-limit i kappa/E0)
  LaunchState launch;
  Vec2r p_inf{0, 0};
  real angle_deg = 0;
  real offset_deg = 0;
};

struct ModelPointResult {
  PointStatus status = PointStatus::Ok;
  std::optional<ModelPoint> point;  ///< engaged when status == Ok
  std::string error;
};

/// Full pipeline for one laser spec and model: upstream exit solve, launch,
/// propagation, asymptote, angles.
ModelPointResult model_point(const LaserSpec& laser, const AtomSpec& atom, Model model,
                             const AttoclockOptions& opts = {},
                             const ExitConditions* coulomb_seed = nullptr);

/// Attoclock observable over a Keldysh-parameter grid (E0 varied at fixed
/// omega). Coulomb chains warm-start from neighboring points; per-point
/// failures are recorded. Rows ordered gamma-major, models in the given order.
std::vector<ModelPointResult> attoclock_curve(const std::vector<real>& gammas, real omega,
                                              real epsilon, const AtomSpec& atom,
                                              const std::vector<Model>& models,
                                              const AttoclockOptions& opts = {},
                                              int threads = 0);

}  // namespace attoclock
