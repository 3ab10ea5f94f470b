#include "attoclock/continuum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <Eigen/Dense>

#include "attoclock/errors.hpp"
#include "attoclock/ode.hpp"
#include "attoclock/sfa.hpp"

namespace attoclock {

std::string_view model_name(Model m) {
  switch (m) {
    case Model::QsZero: return "qs-zero";
    case Model::NaZero: return "na-zero";
    case Model::QsCoulomb: return "qs-coulomb";
    case Model::NaCoulomb: return "na-coulomb";
  }
  return "?";
}

std::optional<Model> model_from_name(std::string_view name) {
  for (Model m : all_models())
    if (name == model_name(m)) return m;
  return std::nullopt;
}

std::vector<Model> all_models() {
  return {Model::QsZero, Model::NaZero, Model::QsCoulomb, Model::NaCoulomb};
}

std::string_view status_name(PointStatus s) {
  switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::NoConvergence: return "no-convergence";
    case PointStatus::CoreCollision: return "core-collision";
    case PointStatus::BoundOrbit: return "bound-orbit";
  }
  return "?";
}

namespace {

struct Envelope {
  real flat_end;
  real ramp_end;

  real value(real t) const {
    if (t <= flat_end) return 1.0;
    if (t >= ramp_end) return 0.0;
    const real u = (t - flat_end) / (ramp_end - flat_end);
    const real c = std::cos(0.5 * M_PI * u);
    return c * c;
  }
  real slope(real t) const {
    if (t <= flat_end || t >= ramp_end) return 0.0;
    const real u = (t - flat_end) / (ramp_end - flat_end);
    return -0.5 * M_PI * std::sin(M_PI * u) / (ramp_end - flat_end);
  }
};

}  // namespace

PropagateResult propagate(const LaunchState& launch, const LaserSpec& laser,
                          const AtomSpec& atom, const PulseShape& pulse,
                          const PropagateOptions& opts) {
  laser.validate();
  atom.validate();
  if (!(pulse.n_cycles > 0) || !(pulse.ramp_cycles > 0))
    throw DomainError("propagate: pulse cycle counts must be > 0");
  const real z = launch.model == Model::QsZero ? 0.0 : atom.z;
  const real T = laser.period();
  const Envelope env{launch.t_start + pulse.n_cycles * T,
                     launch.t_start + (pulse.n_cycles + pulse.ramp_cycles) * T};

  using State = Eigen::Vector4d;
  auto rhs = [&](real t, const State& s) -> State {
    const Vec2r e = efield(t, laser);
    const Vec2r a = apot(t, laser);
    const real ev = env.value(t), es = env.slope(t);
    State d;
    d[0] = s[2];
    d[1] = s[3];
    d[2] = -(e.x() * ev - a.x() * es);
    d[3] = -(e.y() * ev - a.y() * es);
    if (z != 0.0) {
      const real r2 = s[0] * s[0] + s[1] * s[1];
      const real r3 = r2 * std::sqrt(r2);
      d[2] -= z * s[0] / r3;
      d[3] -= z * s[1] / r3;
    }
    return d;
  };
  auto observer = [&](real, const State& s) {
    if (std::hypot(s[0], s[1]) < opts.r_min)
      throw CoreCollisionError("propagate: hard recollision inside core guard");
  };

  State s;
  s << launch.position.x(), launch.position.y(), launch.velocity.x(), launch.velocity.y();
  if (std::hypot(s[0], s[1]) < opts.r_min)
    throw DomainError("propagate: launch position inside core guard");

  OdeOptions oopt;
  oopt.rel_tol = opts.rel_tol;
  oopt.abs_tol = opts.abs_tol;
  s = integrate_adaptive(rhs, launch.t_start, env.ramp_end, s, oopt, observer);

  PropagateResult out;
  out.position = Vec2r(s[0], s[1]);
  out.velocity = Vec2r(s[2], s[3]);
  out.t_end = env.ramp_end;
  return out;
}

Vec2r kepler_asymptote(const Vec2r& position, const Vec2r& velocity, real z) {
  if (z == 0.0) return velocity;
  const real r = position.norm();
  if (!(r > 0)) throw DomainError("kepler_asymptote: position at the origin");
  const real energy = 0.5 * velocity.squaredNorm() - z / r;
  if (!(energy > 0)) throw BoundOrbitError("kepler_asymptote: non-positive Kepler energy");

  const real angmom = position.x() * velocity.y() - position.y() * velocity.x();
  // Eccentricity vector e = (v x L)/z - r_hat; in-plane with L = L_z e_z.
  const Vec2r ecc(velocity.y() * angmom / z - position.x() / r,
                  -velocity.x() * angmom / z - position.y() / r);
  const real e = ecc.norm();
  const real p_mag = std::sqrt(2.0 * energy);
  if (angmom == 0.0 || e == 0.0) return p_mag * position / r;  // radial escape

  const real s = angmom > 0 ? 1.0 : -1.0;
  const Vec2r p_hat = ecc / e;
  const Vec2r q_hat(-s * p_hat.y(), s * p_hat.x());
  const real cos_nu = -1.0 / e;
  const real sin_nu = std::sqrt(std::max(0.0, 1.0 - cos_nu * cos_nu));
  Vec2r dir = -sin_nu * p_hat + (e + cos_nu) * q_hat;
  dir.normalize();
  return p_mag * dir;
}

AttoclockPoint emission_angle(const Vec2r& p_inf, const Vec2r& reference_dir) {
  AttoclockPoint pt;
  pt.p_inf = p_inf;
  pt.angle_deg = std::atan2(p_inf.y(), p_inf.x()) * 180.0 / M_PI;
  const real ref = std::atan2(reference_dir.y(), reference_dir.x()) * 180.0 / M_PI;
  real off = pt.angle_deg - ref;
  while (off <= -180.0) off += 360.0;
  while (off > 180.0) off -= 360.0;
  pt.offset_deg = off;
  return pt;
}

AttoclockPoint emission_angle(const Vec2r& p_inf, const LaserSpec&) {
  return emission_angle(p_inf, Vec2r(0.0, 1.0));
}

real wigner_estimate(real e0, real exponent) {
  if (!(e0 > 0)) throw DomainError("wigner_estimate: e0 must be > 0");
  const real anchor_au = 10.0 / kAttosecondsPerAu;
  return -anchor_au * std::pow(0.1 / e0, exponent);
}

ModelPointResult model_point(const LaserSpec& laser, const AtomSpec& atom, Model model,
                             const AttoclockOptions& opts, const ExitConditions* coulomb_seed) {
  ModelPointResult res;
  try {
    const DerivedParams d = derive(laser, atom);
    ModelPoint pt;
    pt.gamma = d.gamma;
    pt.model = model;
    pt.laser = laser;

    switch (model) {
      case Model::QsZero:
      case Model::QsCoulomb: {
        pt.x_exit = d.x_exit_qs;
        pt.p_perp_exit = 0;
        pt.t_exit = 0;
        pt.y_exit = 0;
        pt.t_s = cplx(0.0, atom.kappa() / laser.e0);  // Keldysh-time limit of Im t_s
        break;
      }
      case Model::NaZero: {
        const ExitConditions exit = exit_numeric(laser, atom);
        pt.x_exit = exit.x_exit;
        pt.p_perp_exit = exit.p_perp_exit;
        pt.t_exit = 0;
        pt.y_exit = 0;
        pt.t_s = saddle_numeric(
            Vec2r(0.0, exit.p_perp_exit + laser.epsilon * laser.e0 / laser.omega), laser, atom);
        break;
      }
      case Model::NaCoulomb: {
        const ExitConditions seed = coulomb_seed ? *coulomb_seed : exit_numeric(laser, atom);
        const CoulombExit exit = solve_exit(laser, atom, seed);
        pt.x_exit = exit.x_exit;
        pt.p_perp_exit = exit.p_perp_exit;
        pt.t_exit = exit.t_exit;
        pt.y_exit = exit.y_exit;
        pt.t_s = exit.t_s;
        break;
      }
    }

    LaunchState launch;
    launch.model = model;
    if (model == Model::NaCoulomb) {
      launch.position = Vec2r(opts.toggles.exit ? pt.x_exit : d.x_exit_qs,
                              opts.toggles.exit ? pt.y_exit : 0.0);
      launch.velocity = Vec2r(0.0, opts.toggles.pperp ? pt.p_perp_exit : 0.0);
      launch.t_start = opts.toggles.delay ? pt.t_exit : 0.0;
      if (opts.wigner) launch.t_start += wigner_estimate(laser.e0);
    } else {
      launch.position = Vec2r(pt.x_exit, 0.0);
      launch.velocity = Vec2r(0.0, pt.p_perp_exit);
      launch.t_start = pt.t_exit;
    }
    pt.launch = launch;

    const PropagateResult end = propagate(launch, laser, atom, opts.pulse, opts.prop);
    const real z = model == Model::QsZero ? 0.0 : atom.z;
    pt.p_inf = kepler_asymptote(end.position, end.velocity, z);
    const AttoclockPoint ang = emission_angle(pt.p_inf, laser);
    pt.angle_deg = ang.angle_deg;
    pt.offset_deg = ang.offset_deg;

    res.point = pt;
    res.status = PointStatus::Ok;
  } catch (const BoundOrbitError& e) {
    res.status = PointStatus::BoundOrbit;
    res.error = e.what();
  } catch (const CoreCollisionError& e) {
    res.status = PointStatus::CoreCollision;
    res.error = e.what();
  } catch (const std::exception& e) {
    res.status = PointStatus::NoConvergence;
    res.error = e.what();
  }
  return res;
}

std::vector<ModelPointResult> attoclock_curve(const std::vector<real>& gammas, real omega,
                                              real epsilon, const AtomSpec& atom,
                                              const std::vector<Model>& models,
                                              const AttoclockOptions& opts, int threads) {
  std::vector<ModelPointResult> out(gammas.size() * models.size());

  // One serial warm-started chain per model; chains run concurrently.
  auto run_chain = [&](std::size_t mi) {
    const Model model = models[mi];
    std::optional<ExitConditions> warm;
    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
      const LaserSpec laser = laser_for_gamma(gammas[gi], omega, epsilon, atom);
      ModelPointResult r;
      if (model == Model::NaCoulomb) {
        ExitConditions seed;
        bool have_seed = false;
        try {
          seed = exit_numeric(laser, atom);
          if (warm) {
            seed.p_perp_exit = 0.5 * (seed.p_perp_exit + warm->p_perp_exit);
            seed.t_exit = warm->t_exit;
          }
          have_seed = true;
        } catch (const std::exception& e) {
          r.status = PointStatus::NoConvergence;
          r.error = e.what();
        }
        if (have_seed) {
          r = model_point(laser, atom, model, opts, &seed);
          if (r.point) {
            warm = ExitConditions{r.point->x_exit, r.point->p_perp_exit, r.point->t_exit,
                                  0.0, true};
          } else {
            warm.reset();
          }
        }
      } else {
        r = model_point(laser, atom, model, opts);
      }
      out[gi * models.size() + mi] = std::move(r);
    }
  };

  unsigned n_threads = threads > 0 ? unsigned(threads) : std::thread::hardware_concurrency();
  n_threads = std::clamp<unsigned>(n_threads, 1, unsigned(models.size()));
  if (n_threads <= 1 || models.size() <= 1) {
    for (std::size_t mi = 0; mi < models.size(); ++mi) run_chain(mi);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n_threads; ++i) {
    pool.emplace_back([&] {
      for (std::size_t mi = next.fetch_add(1); mi < models.size(); mi = next.fetch_add(1))
        run_chain(mi);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace attoclock
