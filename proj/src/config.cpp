#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ajcm/runner.hpp"

namespace ajcm {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Real parse_real(const std::string& text, const std::string& field) {
  Real value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw ConfigError("field '" + field + "': cannot parse '" + text + "' as a number");
  return value;
}

/// "<number>", "pi", "pi/4", "3*pi/4", "0.25*pi".
Real parse_angle(const std::string& text, const std::string& field) {
  std::string s;
  std::copy_if(text.begin(), text.end(), std::back_inserter(s), [](unsigned char c) { return !std::isspace(c); });
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_real(s, field);
  Real factor = 1.0;
  if (pos > 0) {
    if (s[pos - 1] != '*') throw ConfigError("field '" + field + "': malformed angle '" + text + "'");
    factor = parse_real(s.substr(0, pos - 1), field);
  }
  Real divisor = 1.0;
  const std::string rest = s.substr(pos + 2);
  if (!rest.empty()) {
    if (rest[0] != '/') throw ConfigError("field '" + field + "': malformed angle '" + text + "'");
    divisor = parse_real(rest.substr(1), field);
  }
  return factor * std::numbers::pi / divisor;
}

bool parse_bool(const std::string& text, const std::string& field) {
  if (text == "true" || text == "yes" || text == "1" || text == "on") return true;
  if (text == "false" || text == "no" || text == "0" || text == "off") return false;
  throw ConfigError("field '" + field + "': expected true/false, got '" + text + "'");
}

std::vector<Measure> parse_measures(const std::string& text) {
  std::vector<Measure> out;
  const auto add = [&](Measure m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  for (const auto& item : split_list(text)) {
    if (item == "entangling_power") add(Measure::entangling_power);
    else if (item == "concurrence") add(Measure::concurrence);
    else if (item == "capacity") add(Measure::capacity);
    else if (item == "all") {
      add(Measure::entangling_power);
      add(Measure::concurrence);
      add(Measure::capacity);
    } else if (item != "none") {
      throw ConfigError("field 'measure': unknown measure '" + item + "'");
    }
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw ConfigError("field 'theta': must lie in [0, pi]");
  if (omega_s_over_lambda.empty()) throw ConfigError("field 'omega_s_over_lambda': list is empty");
  if (n_bar.empty()) throw ConfigError("field 'n_bar': list is empty");
  for (Real nb : n_bar)
    if (!(nb >= 0.0)) throw ConfigError("field 'n_bar': values must be >= 0");
  if (!(tau.start >= 0.0)) throw ConfigError("field 'tau_start': must be >= 0");
  if (!(tau.stop > tau.start)) throw ConfigError("field 'tau_stop': must exceed tau_start");
  if (tau.points < 2) throw ConfigError("field 'tau_points': must be >= 2");
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw ConfigError("field 'tail_tol': must lie in (0, 1)");
  if (name.empty() || name.find_first_of("/\\") != std::string::npos)
    throw ConfigError("field 'name': must be a plain file stem");
}

std::vector<Real> TauGrid::values() const {
  std::vector<Real> out(static_cast<std::size_t>(points));
  const Real step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
  out.back() = stop;
  return out;
}

RunConfig parse_config(std::istream& in, const std::string& source, const std::string& default_name) {
  RunConfig cfg;
  cfg.name = default_name;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "name") cfg.name = value;
    else if (key == "measure") cfg.measures = parse_measures(value);
    else if (key == "theta") cfg.theta = parse_angle(value, key);
    else if (key == "omega_s_over_lambda") {
      cfg.omega_s_over_lambda.clear();
      for (const auto& v : split_list(value)) cfg.omega_s_over_lambda.push_back(parse_real(v, key));
    } else if (key == "n_bar") {
      cfg.n_bar.clear();
      for (const auto& v : split_list(value)) cfg.n_bar.push_back(parse_real(v, key));
    } else if (key == "tau_start") cfg.tau.start = parse_real(value, key);
    else if (key == "tau_stop") cfg.tau.stop = parse_real(value, key);
    else if (key == "tau_points") {
      const Real p = parse_real(value, key);
      if (p != std::floor(p) || p > 1e7) throw ConfigError("field 'tau_points': must be an integer");
      cfg.tau.points = static_cast<int>(p);
    } else if (key == "tail_tol") cfg.tail_tol = parse_real(value, key);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "emit_plots") cfg.emit_plots = parse_bool(value, key);
    else if (key == "validation_report") cfg.validation_report = parse_bool(value, key);
    else throw ConfigError(source + ":" + std::to_string(line_no) + ": unknown field '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, path.string(), path.stem().string());
}

}  // namespace ajcm
