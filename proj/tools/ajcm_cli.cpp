#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ajcm/analytic_elements.hpp"
#include "ajcm/runner.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalError = 2, kIoError = 3 };

struct CommonFlags {
  std::string config;
  std::string out = ".";
  bool plots = false;
  double tail_tol = 0.0;
  int threads = 1;
};

void print_summary(const ajcm::MeasureSeries& s) {
  std::cout << s.name << ": " << s.columns.size() << " columns x " << s.tau.size() << " points, "
            << s.invariants.states_checked << " states checked, " << s.wall_seconds << " s\n";
  for (const auto& c : s.combinations)
    std::cout << "  nbar=" << c.n_bar << " ls=" << c.lambda_s << " n_max=" << c.n_max
              << " tail_deficit=" << c.tail_deficit << "\n";
}

int run_series(const CommonFlags& f, bool out_given) {
  if (f.config.empty()) throw ajcm::ConfigError("series: --config is required");
  ajcm::RunConfig config = ajcm::load_config(f.config);
  if (out_given) config.output_dir = f.out;
  config.emit_plots = config.emit_plots || f.plots;
  if (f.tail_tol > 0.0) config.tail_tol = f.tail_tol;
  config.validate();
  const auto series = ajcm::run_time_series(config, {f.threads, false});
  for (const auto& p : ajcm::write_series_outputs(config, series)) std::cout << "wrote " << p.string() << "\n";
  print_summary(series);
  return kOk;
}

int run_validate(const CommonFlags& f) {
  std::vector<double> lambdas{0.0, 5.0, 10.0};
  std::vector<double> taus{0.0, 1.0, 5.0, 25.0};
  if (!f.config.empty()) {
    const ajcm::RunConfig config = ajcm::load_config(f.config);
    lambdas = config.omega_s_over_lambda;
    const auto grid = config.tau.values();
    taus = {grid.front(), grid[grid.size() / 2], grid.back()};
  }
  const ajcm::HilbertSpec spec(30);
  std::vector<ajcm::ValidationReport> reports;
  for (double ls : lambdas)
    for (double tau : taus) reports.push_back(ajcm::validate_analytic_elements(ls, spec, tau));

  std::filesystem::create_directories(f.out);
  const auto path = std::filesystem::path(f.out) / "validation_report.txt";
  std::ofstream out(path);
  if (!out) throw ajcm::IoError("cannot open " + path.string() + " for writing");
  ajcm::write_validation_report(out, reports);
  ajcm::write_validation_report(std::cout, reports);
  if (!out) throw ajcm::IoError("failed writing " + path.string());

  bool ok = true;
  for (const auto& r : reports) ok = ok && r.all_explained();
  return ok ? kOk : kNumericalError;
}

int run_all_figures(const CommonFlags& f, const std::string& presets) {
  const auto outputs = ajcm::run_figures(presets, f.out, {f.threads, false}, f.plots, f.tail_tol);
  for (const auto& p : outputs.files) std::cout << "wrote " << p.string() << "\n";
  for (const auto& s : outputs.series) print_summary(s);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two Ising-coupled atoms in a coherent-state cavity (anti-Jaynes-Cummings coupling):\n"
               "entangling power, concurrence and dense-coding capacity over scaled time."};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string presets = AJCM_PRESET_DIR;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "Run configuration file (key = value)");
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_flag("--plots", flags.plots, "Also write SVG plots");
    sub->add_option("--tail-tol", flags.tail_tol, "Coherent-state tail tolerance (overrides config)")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--threads", flags.threads, "Worker threads for parameter combinations")
        ->check(CLI::PositiveNumber);
  };

  auto* series = app.add_subcommand("series", "Time series for one configuration");
  add_common(series);
  auto* validate = app.add_subcommand("validate", "Closed-form propagator elements vs dense oracle report");
  add_common(validate);
  auto* figures = app.add_subcommand("figures", "Run every figure preset");
  add_common(figures);
  figures->add_option("--presets", presets, "Directory of *.cfg presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*series) return run_series(flags, series->get_option("--out")->count() > 0);
    if (*validate) return run_validate(flags);
    return run_all_figures(flags, presets);
  } catch (const ajcm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ajcm::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const ajcm::InvariantViolation& e) {
    std::cerr << "numerical invariant violated: " << e.what() << "\n";
    return kNumericalError;
  } catch (const ajcm::InvalidState& e) {
    std::cerr << "numerical invariant violated: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}
