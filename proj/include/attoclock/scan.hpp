#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "attoclock/continuum.hpp"
#include "attoclock/field.hpp"

namespace attoclock {

struct GridRange {
  real lo = 0;
  real hi = 0;
  int steps = 0;
};

enum class OutputFormat { Csv, Json };

/// Shared configuration of the scan/point/distribution front ends. Defaults
/// mirror the bundled study case: He (Ip = 0.9036, Z = 1) at 735 nm with
/// ellipticity 0.87, gamma from 0.8 to 3.
struct ScanConfig {
  AtomSpec atom{0.9036, 1.0};
  real wavelength_nm = 735.0;
  std::optional<real> omega;  ///< overrides wavelength when set
  real ellipticity = 0.87;

  std::optional<GridRange> gamma_range;
  std::optional<GridRange> e0_range;
  std::optional<real> gamma_point;  ///< point/distribution
  std::optional<real> e0_point;

  std::vector<Model> models = all_models();
  real n_cycles = 4;
  bool toggle_wigner = false;
  NaToggles na;

  std::optional<GridRange> px_range;  ///< distribution momentum window
  std::optional<GridRange> py_range;

  std::string out;
  OutputFormat format = OutputFormat::Csv;
  int threads = 0;  ///< 0 = hardware concurrency

  real omega_au() const;
  AttoclockOptions attoclock_options() const;
};

struct ScanRow {
  real gamma = 0;
  real e0 = 0;
  Model model = Model::QsZero;
  ModelPointResult result;
};

/// Rows of a scan in the stable output order (gamma ascending, model name
/// ascending). Throws ConfigError on invalid configuration.
std::vector<ScanRow> run_scan_rows(const ScanConfig& config);

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);
void write_scan_json(std::ostream& os, const std::vector<ScanRow>& rows);

/// Runs a scan and writes config.out (default "attoclock_scan.csv"/.json).
/// Returns the path written.
std::string run_scan(const ScanConfig& config);

/// Human-readable single-point report with a.u. and attoseconds side by side.
std::string run_point_report(const ScanConfig& config);

struct DistributionRow {
  real px = 0;
  real py = 0;
  std::optional<real> r_exponent;  ///< engaged when status == Ok
  bool ridge = false;
  PointStatus status = PointStatus::Ok;
};

/// Rate-exponent map R(p) of the zero-range model over a momentum window,
/// rows ordered px ascending then py ascending; the global rate maximum
/// (minimal R) is flagged in the ridge column.
std::vector<DistributionRow> run_distribution_rows(const ScanConfig& config);

void write_distribution_csv(std::ostream& os, const std::vector<DistributionRow>& rows);
void write_distribution_json(std::ostream& os, const std::vector<DistributionRow>& rows);

std::string run_distribution(const ScanConfig& config);

/// Full-precision decimal formatting used by every writer (17 significant
/// digits keeps golden files byte-meaningful).
std::string format_full(real v);

std::vector<real> grid_points(const GridRange& r);

}  // namespace attoclock
