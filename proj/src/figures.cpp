#include <algorithm>
#include <fstream>
#include <iostream>

#include "ajcm/analytic_elements.hpp"
#include "ajcm/runner.hpp"

namespace ajcm {

namespace {

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

constexpr int kValidationNMax = 30;

}  // namespace

std::vector<std::filesystem::path> write_series_outputs(const RunConfig& config, const MeasureSeries& series) {
  ensure_dir(config.output_dir);
  std::vector<std::filesystem::path> written;
  const auto csv = config.output_dir / (config.name + ".csv");
  emit_csv(series, csv);
  written.push_back(csv);

  if (config.emit_plots) {
    for (Measure m : config.measures) {
      const auto svg = config.output_dir / (config.name + "_" + measure_tag(m) + ".svg");
      emit_plot(series.only(m), svg);
      written.push_back(svg);
    }
  }

  if (config.validation_report) {
    const HilbertSpec spec(kValidationNMax);
    const std::vector<Real> grid = config.tau.values();
    const std::vector<Real> taus{grid.front(), grid[grid.size() / 2], grid.back()};
    std::vector<ValidationReport> reports;
    for (Real ls : config.omega_s_over_lambda)
      for (Real tau : taus) reports.push_back(validate_analytic_elements(ls, spec, tau));
    const auto path = config.output_dir / (config.name + "_validation.txt");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_validation_report(out, reports);
    if (!out) throw IoError("failed writing " + path.string());
    written.push_back(path);
  }
  return written;
}

FigureOutputs run_figures(const std::filesystem::path& preset_dir, const std::filesystem::path& out_dir,
                          const RunOptions& options, bool plots, Real tail_tol_override) {
  if (!std::filesystem::is_directory(preset_dir)) throw ConfigError("preset directory not found: " + preset_dir.string());
  std::vector<std::filesystem::path> presets;
  for (const auto& entry : std::filesystem::directory_iterator(preset_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") presets.push_back(entry.path());
  std::sort(presets.begin(), presets.end());
  if (presets.empty()) throw ConfigError("no *.cfg presets in " + preset_dir.string());

  FigureOutputs outputs;
  for (const auto& preset : presets) {
    RunConfig config = load_config(preset);
    config.output_dir = out_dir;
    config.emit_plots = config.emit_plots || plots;
    if (tail_tol_override > 0.0) config.tail_tol = tail_tol_override;
    config.validate();
    MeasureSeries series = run_time_series(config, options);
    for (auto& f : write_series_outputs(config, series)) outputs.files.push_back(std::move(f));
    outputs.series.push_back(std::move(series));
  }
  return outputs;
}

}  // namespace ajcm
