#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ajcm/types.hpp"

namespace ajcm {

enum class Measure { entangling_power, concurrence, capacity };

/// Column-name prefix: "Ep", "C", "chi".
const char* measure_tag(Measure m);

struct TauGrid {
  Real start = 0.0;
  Real stop = 25.0;
  int points = 500;

  std::vector<Real> values() const;
};

struct RunConfig {
  std::string name = "series";
  std::vector<Measure> measures;
  Real theta = 0.0;
  std::vector<Real> omega_s_over_lambda{0.0};
  std::vector<Real> n_bar{1.0};
  TauGrid tau;
  Real tail_tol = 1e-12;
  std::filesystem::path output_dir = ".";
  bool emit_plots = false;
  bool validation_report = false;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Flat "key = value" text; '#' starts a comment. Lists are comma separated; theta accepts
/// expressions like "pi/4" or "3*pi/4".
RunConfig parse_config(std::istream& in, const std::string& source = "<config>",
                       const std::string& default_name = "series");
/// Name defaults to the file stem.
RunConfig load_config(const std::filesystem::path& path);

struct SeriesColumn {
  Measure measure = Measure::concurrence;
  Real n_bar = 0.0;
  Real lambda_s = 0.0;
  std::string name;
  std::vector<Real> values;
};

struct CombinationInfo {
  Real n_bar = 0.0;
  Real lambda_s = 0.0;
  int n_max = 0;
  Real tail_deficit = 0.0;
};

/// Worst observed values across every sampled state of a run.
struct InvariantSummary {
  std::size_t states_checked = 0;
  Real max_trace_excess = 0.0;  // |1 - tr| beyond the tail deficit
  Real max_hermiticity_error = 0.0;
  Real min_atomic_eigenvalue = 1.0;
  std::size_t composite_floor_failures = 0;
  std::size_t composite_floor_checked = 0;
  Real max_population_drift = 0.0;
  Real min_concurrence = 1.0, max_concurrence = 0.0;
  Real min_capacity = 2.0, max_capacity = 0.0;
  Real min_entangling_power = 1.0, max_entangling_power = 0.0;

  void merge(const InvariantSummary& other);
  /// Empty when every tolerance holds, else a description of the first violation.
  std::string violation() const;
};

struct MeasureSeries {
  std::string name;
  Real theta = 0.0;
  std::vector<Real> tau;
  std::vector<SeriesColumn> columns;
  std::vector<CombinationInfo> combinations;
  InvariantSummary invariants;
  Real wall_seconds = 0.0;

  MeasureSeries only(Measure m) const;
};

struct RunOptions {
  int threads = 1;
  /// Cholesky certificate of the composite eigenvalue floor on every sampled state (O(dim^3)).
  bool certify_composite_floor = false;
};

/// Every (omega_s, n_bar) combination runs as an independent task; throws InvariantViolation
/// when a sampled state breaks a tolerance.
MeasureSeries run_time_series(const RunConfig& config, const RunOptions& options = {});

/// UTF-8 CSV: '#' metadata lines, header "tau,<columns>", 17 significant digits.
void emit_csv(const MeasureSeries& series, const std::filesystem::path& path);
void write_csv(const MeasureSeries& series, std::ostream& out);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<Real>> rows;
};
CsvTable read_csv(const std::filesystem::path& path);

/// Static SVG, one curve per column; dotted/dashed/solid for ascending n_bar.
void emit_plot(const MeasureSeries& series, const std::filesystem::path& path);

struct FigureOutputs {
  std::vector<std::filesystem::path> files;
  std::vector<MeasureSeries> series;
};

/// Runs every "*.cfg" preset in preset_dir (sorted by name), writing <name>.csv (and plots) to out_dir.
FigureOutputs run_figures(const std::filesystem::path& preset_dir, const std::filesystem::path& out_dir,
                          const RunOptions& options, bool plots, Real tail_tol_override = 0.0);

/// Writes CSV, optional SVGs and optional validation report for one config into config.output_dir.
std::vector<std::filesystem::path> write_series_outputs(const RunConfig& config, const MeasureSeries& series);

}  // namespace ajcm
