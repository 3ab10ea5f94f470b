// Command-line front end: parameter scans, single-point reports and momentum
// distributions of the nonadiabatic tunneling-ionization model.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "attoclock/errors.hpp"
#include "attoclock/scan.hpp"

namespace {

using attoclock::ConfigError;
using attoclock::GridRange;
using attoclock::Model;
using attoclock::OutputFormat;
using attoclock::ScanConfig;

GridRange parse_range(const std::string& text, const char* flag) {
  GridRange r;
  char extra;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.lo, &r.hi, &r.steps, &extra) != 3)
    throw ConfigError(std::string(flag) + ": expected lo:hi:steps");
  return r;
}

std::vector<Model> parse_models(const std::string& text) {
  std::vector<Model> models;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto m = attoclock::model_from_name(item);
    if (!m) throw ConfigError("models: unknown model '" + item + "'");
    models.push_back(*m);
  }
  if (models.empty()) throw ConfigError("models: at least one model required");
  return models;
}

struct CliState {
  ScanConfig config;
  std::string gamma_range, e0_range, px_range, py_range, models, format = "csv";
  double omega = 0, gamma = 0, e0 = 0;
  bool na_exit = true, na_pperp = true, na_delay = true;
};

void add_common(CLI::App* cmd, CliState& st) {
  cmd->add_option("--atom-ip", st.config.atom.ip, "ionization potential (a.u.)");
  cmd->add_option("--atom-z", st.config.atom.z, "residual-ion charge (a.u.)");
  cmd->add_option("--wavelength-nm", st.config.wavelength_nm, "laser wavelength (nm)");
  cmd->add_option("--omega", st.omega, "angular frequency (a.u.); overrides wavelength");
  cmd->add_option("--ellipticity", st.config.ellipticity, "ellipticity in [0, 1]");
  cmd->add_option("--models", st.models, "comma-separated subset of qs-zero,na-zero,qs-coulomb,na-coulomb");
  cmd->add_option("--n-cycles", st.config.n_cycles, "constant-amplitude cycles before switch-off");
  cmd->add_flag("--toggle-wigner", st.config.toggle_wigner, "add the Wigner-delay launch correction");
  cmd->add_flag("!--no-na-exit", st.na_exit, "disable the nonadiabatic exit shift");
  cmd->add_flag("!--no-na-pperp", st.na_pperp, "disable the transverse exit momentum");
  cmd->add_flag("!--no-na-delay", st.na_delay, "disable the exit-time delay");
  cmd->add_option("--out", st.config.out, "output path");
  cmd->add_option("--format", st.format, "csv or json");
  cmd->add_option("--threads", st.config.threads, "worker threads (0 = hardware)");
}

void finalize(CliState& st) {
  if (st.omega > 0) st.config.omega = st.omega;
  if (!st.models.empty()) st.config.models = parse_models(st.models);
  if (st.format == "csv")
    st.config.format = OutputFormat::Csv;
  else if (st.format == "json")
    st.config.format = OutputFormat::Json;
  else
    throw ConfigError("format: must be csv or json");
  if (!st.gamma_range.empty()) st.config.gamma_range = parse_range(st.gamma_range, "gamma-range");
  if (!st.e0_range.empty()) st.config.e0_range = parse_range(st.e0_range, "e0-range");
  if (!st.px_range.empty()) st.config.px_range = parse_range(st.px_range, "px-range");
  if (!st.py_range.empty()) st.config.py_range = parse_range(st.py_range, "py-range");
  if (st.gamma > 0) st.config.gamma_point = st.gamma;
  if (st.e0 > 0) st.config.e0_point = st.e0;
  st.config.na = {st.na_exit, st.na_pperp, st.na_delay};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonadiabatic tunneling-ionization model: scans, point reports, momentum maps"};
  app.require_subcommand(1);
  app.set_config("--config", "", "plain key=value configuration file; flags win on conflict");

  CliState st;

  CLI::App* scan = app.add_subcommand("scan", "sweep gamma or E0 and emit one row per (gamma, model)");
  add_common(scan, st);
  scan->add_option("--gamma-range", st.gamma_range, "lo:hi:steps (Keldysh parameter)");
  scan->add_option("--e0-range", st.e0_range, "lo:hi:steps (field strength, a.u.)");

  CLI::App* point = app.add_subcommand("point", "report all intermediate quantities at one gamma or E0");
  add_common(point, st);
  point->add_option("--gamma", st.gamma, "Keldysh parameter");
  point->add_option("--e0", st.e0, "field strength (a.u.)");

  CLI::App* dist = app.add_subcommand("distribution",
                                      "rate-exponent map over a momentum window (zero-range model)");
  add_common(dist, st);
  dist->add_option("--gamma", st.gamma, "Keldysh parameter");
  dist->add_option("--e0", st.e0, "field strength (a.u.)");
  dist->add_option("--px-range", st.px_range, "lo:hi:steps (a.u.)");
  dist->add_option("--py-range", st.py_range, "lo:hi:steps (a.u.)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    finalize(st);
    if (scan->parsed()) {
      const std::string path = attoclock::run_scan(st.config);
      std::cout << "wrote " << path << '\n';
    } else if (point->parsed()) {
      std::cout << attoclock::run_point_report(st.config);
    } else if (dist->parsed()) {
      const std::string path = attoclock::run_distribution(st.config);
      std::cout << "wrote " << path << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const attoclock::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
