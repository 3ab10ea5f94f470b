#include "attoclock/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "attoclock/barrier.hpp"
#include "attoclock/errors.hpp"
#include "attoclock/sfa.hpp"

namespace attoclock {

namespace {

void validate_common(const ScanConfig& c) {
  if (!(c.atom.ip > 0)) throw ConfigError("atom-ip: must be > 0");
  if (!(c.atom.z >= 0)) throw ConfigError("atom-z: must be >= 0");
  if (!(c.ellipticity >= 0 && c.ellipticity <= 1))
    throw ConfigError("ellipticity: must be in [0, 1]");
  if (c.omega) {
    if (!(*c.omega > 0)) throw ConfigError("omega: must be > 0");
  } else if (!(c.wavelength_nm > 0)) {
    throw ConfigError("wavelength-nm: must be > 0");
  }
  if (!(c.n_cycles > 0)) throw ConfigError("n-cycles: must be > 0");
  if (c.threads < 0) throw ConfigError("threads: must be >= 0");
}

void validate_range(const std::optional<GridRange>& r, const char* flag) {
  if (!r) return;
  if (r->steps < 2) throw ConfigError(std::string(flag) + ": steps must be >= 2");
  if (!(r->lo > 0) || !(r->hi > 0) || !(r->hi >= r->lo))
    throw ConfigError(std::string(flag) + ": need 0 < lo <= hi");
}

std::vector<Model> sorted_models(std::vector<Model> models) {
  if (models.empty()) throw ConfigError("models: at least one model required");
  std::sort(models.begin(), models.end(), [](Model a, Model b) {
    return model_name(a) < model_name(b);
  });
  models.erase(std::unique(models.begin(), models.end()), models.end());
  return models;
}

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  unsigned n_threads = threads > 0 ? unsigned(threads) : std::thread::hardware_concurrency();
  n_threads = std::clamp<unsigned>(n_threads, 1, 64);
  if (n_threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

std::string csv_field(const std::optional<real>& v) {
  return v ? format_full(*v) : std::string();
}

nlohmann::json json_field(const std::optional<real>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("out: cannot open '" + path + "' for writing");
  os << content;
}

}  // namespace

std::string format_full(real v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<real> grid_points(const GridRange& r) {
  std::vector<real> out(r.steps);
  for (int i = 0; i < r.steps; ++i)
    out[i] = r.lo + (r.hi - r.lo) * real(i) / real(r.steps - 1);
  return out;
}

real ScanConfig::omega_au() const {
  return omega ? *omega : LaserSpec::omega_from_wavelength_nm(wavelength_nm);
}

AttoclockOptions ScanConfig::attoclock_options() const {
  AttoclockOptions o;
  o.pulse.n_cycles = n_cycles;
  o.toggles = na;
  o.wigner = toggle_wigner;
  return o;
}

std::vector<ScanRow> run_scan_rows(const ScanConfig& config) {
  validate_common(config);
  validate_range(config.gamma_range, "gamma-range");
  validate_range(config.e0_range, "e0-range");
  if (config.gamma_range && config.e0_range)
    throw ConfigError("gamma-range/e0-range: exactly one range may be given");

  const real w = config.omega_au();
  const real kappa = config.atom.kappa();

  std::vector<real> gammas;
  if (config.e0_range) {
    for (const real e0 : grid_points(*config.e0_range)) gammas.push_back(kappa * w / e0);
  } else {
    const GridRange r = config.gamma_range ? *config.gamma_range : GridRange{0.8, 3.0, 23};
    gammas = grid_points(r);
  }
  std::sort(gammas.begin(), gammas.end());

  const std::vector<Model> models = sorted_models(config.models);
  const std::vector<ModelPointResult> results = attoclock_curve(
      gammas, w, config.ellipticity, config.atom, models, config.attoclock_options(),
      config.threads);

  std::vector<ScanRow> rows;
  rows.reserve(results.size());
  for (std::size_t gi = 0; gi < gammas.size(); ++gi)
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
      ScanRow row;
      row.gamma = gammas[gi];
      row.e0 = kappa * w / gammas[gi];
      row.model = models[mi];
      row.result = results[gi * models.size() + mi];
      rows.push_back(std::move(row));
    }
  return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "gamma,e0_au,model,x_exit_au,p_perp_exit_au,t_exit_as,re_ts_as,im_ts_as,"
        "p_inf_x_au,p_inf_y_au,angle_deg,offset_deg,status\n";
  for (const ScanRow& row : rows) {
    const auto& pt = row.result.point;
    std::optional<real> x_exit, pp, te, re_ts, im_ts, px, py, ang, off;
    if (pt) {
      x_exit = pt->x_exit;
      pp = pt->p_perp_exit;
      te = pt->t_exit * kAttosecondsPerAu;
      re_ts = pt->t_s.real() * kAttosecondsPerAu;
      im_ts = pt->t_s.imag() * kAttosecondsPerAu;
      px = pt->p_inf.x();
      py = pt->p_inf.y();
      ang = pt->angle_deg;
      off = pt->offset_deg;
    }
    os << format_full(row.gamma) << ',' << format_full(row.e0) << ',' << model_name(row.model)
       << ',' << csv_field(x_exit) << ',' << csv_field(pp) << ',' << csv_field(te) << ','
       << csv_field(re_ts) << ',' << csv_field(im_ts) << ',' << csv_field(px) << ','
       << csv_field(py) << ',' << csv_field(ang) << ',' << csv_field(off) << ','
       << status_name(row.result.status) << '\n';
  }
}

void write_scan_json(std::ostream& os, const std::vector<ScanRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ScanRow& row : rows) {
    const auto& pt = row.result.point;
    nlohmann::json o;
    o["gamma"] = row.gamma;
    o["e0_au"] = row.e0;
    o["model"] = model_name(row.model);
    o["x_exit_au"] = json_field(pt ? std::optional<real>(pt->x_exit) : std::nullopt);
    o["p_perp_exit_au"] = json_field(pt ? std::optional<real>(pt->p_perp_exit) : std::nullopt);
    o["t_exit_as"] =
        json_field(pt ? std::optional<real>(pt->t_exit * kAttosecondsPerAu) : std::nullopt);
    o["re_ts_as"] =
        json_field(pt ? std::optional<real>(pt->t_s.real() * kAttosecondsPerAu) : std::nullopt);
    o["im_ts_as"] =
        json_field(pt ? std::optional<real>(pt->t_s.imag() * kAttosecondsPerAu) : std::nullopt);
    o["p_inf_x_au"] = json_field(pt ? std::optional<real>(pt->p_inf.x()) : std::nullopt);
    o["p_inf_y_au"] = json_field(pt ? std::optional<real>(pt->p_inf.y()) : std::nullopt);
    o["angle_deg"] = json_field(pt ? std::optional<real>(pt->angle_deg) : std::nullopt);
    o["offset_deg"] = json_field(pt ? std::optional<real>(pt->offset_deg) : std::nullopt);
    o["status"] = status_name(row.result.status);
    arr.push_back(std::move(o));
  }
  os << arr.dump(2) << '\n';
}

std::string run_scan(const ScanConfig& config) {
  const std::vector<ScanRow> rows = run_scan_rows(config);
  std::ostringstream ss;
  if (config.format == OutputFormat::Csv)
    write_scan_csv(ss, rows);
  else
    write_scan_json(ss, rows);
  const std::string path =
      !config.out.empty()
          ? config.out
          : (config.format == OutputFormat::Csv ? "attoclock_scan.csv" : "attoclock_scan.json");
  write_file(path, ss.str());
  return path;
}

namespace {

real point_gamma(const ScanConfig& c) {
  if (c.gamma_point && c.e0_point)
    throw ConfigError("gamma/e0: exactly one point value may be given");
  if (c.gamma_point) {
    if (!(*c.gamma_point > 0)) throw ConfigError("gamma: must be > 0");
    return *c.gamma_point;
  }
  if (c.e0_point) {
    if (!(*c.e0_point > 0)) throw ConfigError("e0: must be > 0");
    return c.atom.kappa() * c.omega_au() / *c.e0_point;
  }
  throw ConfigError("gamma/e0: one point value is required");
}

void print_quantity(std::ostream& os, const char* name, real au, const char* unit_extra = "") {
  os << "  " << name << " = " << format_full(au) << " a.u." << unit_extra << '\n';
}

void print_time(std::ostream& os, const char* name, real au) {
  os << "  " << name << " = " << format_full(au) << " a.u. = "
     << format_full(au * kAttosecondsPerAu) << " as\n";
}

}  // namespace

std::string run_point_report(const ScanConfig& config) {
  validate_common(config);
  const real g = point_gamma(config);
  const real w = config.omega_au();
  const LaserSpec laser = laser_for_gamma(g, w, config.ellipticity, config.atom);
  const DerivedParams d = derive(laser, config.atom);

  std::ostringstream os;
  os << "point report\n";
  os << "  gamma = " << format_full(g) << ", e0 = " << format_full(laser.e0)
     << " a.u., omega = " << format_full(w) << " a.u., ellipticity = "
     << format_full(config.ellipticity) << '\n';
  os << "  atom: ip = " << format_full(config.atom.ip) << " a.u. (kappa = "
     << format_full(config.atom.kappa()) << "), z = " << format_full(config.atom.z) << '\n';
  print_quantity(os, "U_p", d.up);
  print_quantity(os, "n_photon", d.n_photon);
  print_quantity(os, "x_exit_qs", d.x_exit_qs);
  print_time(os, "tau_k", d.tau_k);
  print_quantity(os, "E_atomic (kappa^3)", d.e_atomic);
  print_time(os, "wigner_estimate", wigner_estimate(laser.e0));

  const std::vector<Model> models = sorted_models(config.models);
  const std::vector<ModelPointResult> results = attoclock_curve(
      {g}, w, config.ellipticity, config.atom, models, config.attoclock_options(),
      config.threads);

  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const ModelPointResult& r = results[mi];
    os << "model " << model_name(models[mi]) << ": status = " << status_name(r.status) << '\n';
    if (!r.point) {
      os << "  error: " << r.error << '\n';
      continue;
    }
    const ModelPoint& pt = *r.point;
    print_quantity(os, "x_exit", pt.x_exit);
    print_quantity(os, "p_perp_exit", pt.p_perp_exit);
    print_time(os, "t_exit", pt.t_exit);
    print_time(os, "Re t_s", pt.t_s.real());
    print_time(os, "Im t_s", pt.t_s.imag());
    os << "  launch: r = (" << format_full(pt.launch.position.x()) << ", "
       << format_full(pt.launch.position.y()) << ") a.u., v = ("
       << format_full(pt.launch.velocity.x()) << ", " << format_full(pt.launch.velocity.y())
       << ") a.u.";
    os << ", t_start = " << format_full(pt.launch.t_start) << " a.u.\n";
    os << "  p_inf = (" << format_full(pt.p_inf.x()) << ", " << format_full(pt.p_inf.y())
       << ") a.u., |p_inf| = " << format_full(pt.p_inf.norm()) << '\n';
    os << "  angle = " << format_full(pt.angle_deg) << " deg, offset = "
       << format_full(pt.offset_deg) << " deg\n";
  }
  return os.str();
}

std::vector<DistributionRow> run_distribution_rows(const ScanConfig& config) {
  validate_common(config);
  const real g = point_gamma(config);
  const real w = config.omega_au();
  const LaserSpec laser = laser_for_gamma(g, w, config.ellipticity, config.atom);
  const AtomSpec atom = config.atom;
  const real kappa = atom.kappa();
  const real a0 = laser.e0 / w;

  GridRange pxr = config.px_range ? *config.px_range
                                  : GridRange{-0.6 * kappa, 0.6 * kappa, 41};
  const real py_span = laser.epsilon * a0 + 0.6 * kappa;
  GridRange pyr = config.py_range ? *config.py_range : GridRange{-py_span, py_span, 41};
  if (pxr.steps < 2) throw ConfigError("px-range: steps must be >= 2");
  if (pyr.steps < 2) throw ConfigError("py-range: steps must be >= 2");

  const std::vector<real> pxs = [&] {
    std::vector<real> v(pxr.steps);
    for (int i = 0; i < pxr.steps; ++i)
      v[i] = pxr.lo + (pxr.hi - pxr.lo) * real(i) / real(pxr.steps - 1);
    return v;
  }();
  const std::vector<real> pys = [&] {
    std::vector<real> v(pyr.steps);
    for (int i = 0; i < pyr.steps; ++i)
      v[i] = pyr.lo + (pyr.hi - pyr.lo) * real(i) / real(pyr.steps - 1);
    return v;
  }();

  std::vector<DistributionRow> rows(pxs.size() * pys.size());
  parallel_for(rows.size(), config.threads, [&](std::size_t idx) {
    const std::size_t i = idx / pys.size(), j = idx % pys.size();
    DistributionRow& row = rows[idx];
    row.px = pxs[i];
    row.py = pys[j];
    try {
      row.r_exponent = rate_exponent(solve_saddle(Vec2r(row.px, row.py), laser, atom));
      row.status = PointStatus::Ok;
    } catch (const std::exception&) {
      row.status = PointStatus::NoConvergence;
    }
  });

  real r_min = std::numeric_limits<real>::infinity();
  for (const auto& row : rows)
    if (row.r_exponent && *row.r_exponent < r_min) r_min = *row.r_exponent;
  for (auto& row : rows) row.ridge = row.r_exponent && *row.r_exponent == r_min;
  return rows;
}

void write_distribution_csv(std::ostream& os, const std::vector<DistributionRow>& rows) {
  os << "px_au,py_au,r_exponent,ridge,status\n";
  for (const DistributionRow& row : rows)
    os << format_full(row.px) << ',' << format_full(row.py) << ','
       << csv_field(row.r_exponent) << ',' << (row.ridge ? '1' : '0') << ','
       << status_name(row.status) << '\n';
}

void write_distribution_json(std::ostream& os, const std::vector<DistributionRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const DistributionRow& row : rows) {
    nlohmann::json o;
    o["px_au"] = row.px;
    o["py_au"] = row.py;
    o["r_exponent"] = json_field(row.r_exponent);
    o["ridge"] = row.ridge;
    o["status"] = status_name(row.status);
    arr.push_back(std::move(o));
  }
  os << arr.dump(2) << '\n';
}

std::string run_distribution(const ScanConfig& config) {
  const std::vector<DistributionRow> rows = run_distribution_rows(config);
  std::ostringstream ss;
  if (config.format == OutputFormat::Csv)
    write_distribution_csv(ss, rows);
  else
    write_distribution_json(ss, rows);
  const std::string path = !config.out.empty()
                               ? config.out
                               : (config.format == OutputFormat::Csv
                                      ? "attoclock_distribution.csv"
                                      : "attoclock_distribution.json");
  write_file(path, ss.str());
  return path;
}

}  // namespace attoclock
