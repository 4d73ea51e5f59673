#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ajcm/initial_states.hpp"
#include "ajcm/runner.hpp"

using namespace ajcm;
namespace fs = std::filesystem;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

fs::path scratch_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / ("ajcm_test_runner_" + leaf);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig small_config() {
  RunConfig cfg;
  cfg.name = "small";
  cfg.measures = {Measure::entangling_power, Measure::concurrence, Measure::capacity};
  cfg.theta = std::numbers::pi / 4;
  cfg.omega_s_over_lambda = {0.0, 5.0};
  cfg.n_bar = {0.1, 1.0};
  cfg.tau = {0.0, 4.0, 21};
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse(
      "# comment line\n"
      "name = demo\n"
      "measure = concurrence, capacity   # trailing comment\n"
      "theta = 3*pi/4\n"
      "omega_s_over_lambda = 0, 5, 10\n"
      "n_bar = 0.1, 25\n"
      "tau_start = 0\ntau_stop = 12.5\ntau_points = 101\n"
      "tail_tol = 1e-10\nemit_plots = true\n");
  CHECK(cfg.name == "demo");
  REQUIRE(cfg.measures.size() == 2);
  CHECK(cfg.measures[0] == Measure::concurrence);
  CHECK(cfg.measures[1] == Measure::capacity);
  CHECK(cfg.theta == doctest::Approx(3 * std::numbers::pi / 4));
  CHECK(cfg.omega_s_over_lambda == std::vector<Real>{0, 5, 10});
  CHECK(cfg.n_bar == std::vector<Real>{0.1, 25});
  CHECK(cfg.tau.points == 101);
  CHECK(cfg.tau.values().back() == 12.5);
  CHECK(cfg.tail_tol == 1e-10);
  CHECK(cfg.emit_plots);

  CHECK(parse("measure = all\n").measures.size() == 3);
  CHECK(parse("measure = none\n").measures.empty());
  CHECK(parse("theta = pi\n").theta == std::numbers::pi);
  CHECK(parse("theta = 0.25\n").theta == 0.25);
}

TEST_CASE("config errors name the field") {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("theta = 4\n").find("theta") != std::string::npos);
  CHECK(message("n_bar = -1\n").find("n_bar") != std::string::npos);
  CHECK(message("n_bar = abc\n").find("n_bar") != std::string::npos);
  CHECK(message("measure = purity\n").find("measure") != std::string::npos);
  CHECK(message("tau_points = 1\n").find("tau_points") != std::string::npos);
  CHECK(message("tau_points = 2.5\n").find("tau_points") != std::string::npos);
  CHECK(message("tau_stop = -1\n").find("tau_stop") != std::string::npos);
  CHECK(message("colour = red\n").find("colour") != std::string::npos);
  CHECK(message("just text\n").find("key = value") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/dir/x.cfg"), ConfigError);
}

TEST_CASE("load_config names the series after the file") {
  const auto dir = scratch_dir("load");
  std::ofstream(dir / "panel.cfg") << "measure = concurrence\n";
  CHECK(load_config(dir / "panel.cfg").name == "panel");
}

TEST_CASE("series columns and metadata") {
  const auto series = run_time_series(small_config());
  CHECK(series.columns.size() == 12);
  CHECK(series.tau.size() == 21);
  CHECK(series.combinations.size() == 4);
  CHECK(series.columns.front().name == "Ep[nbar=0.1,ls=0]");
  for (const auto& c : series.columns) CHECK(c.values.size() == 21);
  CHECK(series.invariants.violation().empty());
  CHECK(series.only(Measure::capacity).columns.size() == 4);

  // theta = pi/4, tau = 0 is the Bell state: chi = 2, C = 1, Ep = 0.
  for (const auto& c : series.columns) {
    const Real expected = c.measure == Measure::capacity ? 2.0 : c.measure == Measure::concurrence ? 1.0 : 0.0;
    CHECK(c.values.front() == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("empty measure list yields only the tau column") {
  auto cfg = small_config();
  cfg.measures.clear();
  const auto series = run_time_series(cfg);
  CHECK(series.columns.empty());
  const auto dir = scratch_dir("empty");
  emit_csv(series, dir / "e.csv");
  const auto table = read_csv(dir / "e.csv");
  CHECK(table.header == std::vector<std::string>{"tau"});
  CHECK(table.rows.size() == 21);
}

TEST_CASE("CSV round trip is exact and metadata is honest") {
  const auto series = run_time_series(small_config());
  const auto dir = scratch_dir("roundtrip");
  emit_csv(series, dir / "s.csv");
  const auto table = read_csv(dir / "s.csv");
  REQUIRE(table.header.size() == 13);
  CHECK(table.header[1] == series.columns[0].name);
  REQUIRE(table.rows.size() == series.tau.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    CHECK(table.rows[r][0] == series.tau[r]);
    for (std::size_t c = 0; c < series.columns.size(); ++c) CHECK(table.rows[r][c + 1] == series.columns[c].values[r]);
  }
  const auto text = slurp(dir / "s.csv");
  for (const auto& info : series.combinations) {
    const Real deficit = 1.0 - coherent_field(info.n_bar, HilbertSpec(info.n_max)).entries.trace().real();
    CHECK(std::abs(info.tail_deficit - deficit) < 1e-15);
    CHECK(poisson_tail(info.n_bar, info.n_max) < 1e-12);
  }
  CHECK(text.find("# combination: nbar=1 ls=5 n_max=18") != std::string::npos);
}

TEST_CASE("runs are deterministic and independent of thread count") {
  const auto dir = scratch_dir("determinism");
  const auto a = run_time_series(small_config());
  const auto b = run_time_series(small_config(), RunOptions{4, false});
  emit_csv(a, dir / "a.csv");
  emit_csv(b, dir / "b.csv");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  const auto c = run_time_series(small_config());
  emit_csv(c, dir / "c.csv");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "c.csv"));
}

TEST_CASE("composite floor certificate") {
  const auto series = run_time_series(small_config(), RunOptions{1, true});
  CHECK(series.invariants.composite_floor_checked > 0);
  CHECK(series.invariants.composite_floor_failures == 0);
}

TEST_CASE("single tau point at zero") {
  auto cfg = small_config();
  cfg.measures = {Measure::capacity};
  cfg.omega_s_over_lambda = {0.0};
  cfg.n_bar = {1.0};
  cfg.tau = {0.0, 1.0, 2};
  const auto series = run_time_series(cfg);
  CHECK(series.columns.at(0).values.front() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("SVG plots") {
  const auto dir = scratch_dir("svg");
  auto cfg = small_config();
  cfg.measures = {Measure::concurrence};
  cfg.omega_s_over_lambda = {0.0};
  cfg.n_bar = {1.0};
  emit_plot(run_time_series(cfg), dir / "one.svg");
  const auto one = slurp(dir / "one.svg");
  CHECK(one.find("<svg") != std::string::npos);
  CHECK(one.find("stroke-dasharray") == std::string::npos);
  CHECK(one.find("data-y-max=\"1\"") != std::string::npos);
  CHECK(one.find("data-column=\"C[nbar=1,ls=0]\"") != std::string::npos);

  cfg.measures = {Measure::capacity};
  cfg.n_bar = {0.1, 1.0, 25.0};
  emit_plot(run_time_series(cfg), dir / "three.svg");
  const auto three = slurp(dir / "three.svg");
  CHECK(three.find("data-y-max=\"2\"") != std::string::npos);
  CHECK(three.find("stroke-dasharray=\"8,5\"") != std::string::npos);
  CHECK(three.find("stroke-dasharray=\"2,3\"") != std::string::npos);
}

TEST_CASE("write_series_outputs") {
  const auto dir = scratch_dir("outputs");
  auto cfg = small_config();
  cfg.output_dir = dir;
  cfg.emit_plots = true;
  const auto files = write_series_outputs(cfg, run_time_series(cfg));
  CHECK(fs::exists(dir / "small.csv"));
  CHECK(fs::exists(dir / "small_Ep.svg"));
  CHECK(fs::exists(dir / "small_C.svg"));
  CHECK(fs::exists(dir / "small_chi.svg"));
  CHECK(files.size() == 4);
}
