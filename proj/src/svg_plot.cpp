#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "ajcm/runner.hpp"

namespace ajcm {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 30, kBottom = 55;

const char* symbol(Measure m) {
  switch (m) {
    case Measure::entangling_power: return "E<tspan baseline-shift=\"sub\" font-size=\"11\">p</tspan>";
    case Measure::concurrence: return "C";
    case Measure::capacity: return "χ";
  }
  return "";
}

Real natural_upper(Measure m) { return m == Measure::capacity ? 2.0 : 1.0; }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

void emit_plot(const MeasureSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");

  const double x_min = series.tau.empty() ? 0.0 : series.tau.front();
  const double x_max = series.tau.empty() ? 1.0 : series.tau.back();
  double y_max = 1.0;
  std::set<Measure> measures;
  std::set<Real> n_bars, lambdas;
  for (const auto& c : series.columns) {
    measures.insert(c.measure);
    n_bars.insert(c.n_bar);
    lambdas.insert(c.lambda_s);
    y_max = std::max(y_max, natural_upper(c.measure));
  }
  const double y_min = 0.0;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * pw; };
  const auto sy = [&](double y) { return kTop + (1.0 - (std::clamp(y, y_min, y_max) - y_min) / (y_max - y_min)) * ph; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"serif\" font-size=\"14\">\n"
      << "<title>" << series.name << "</title>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g id=\"plot-area\" data-x-min=\"" << tick_label(x_min) << "\" data-x-max=\"" << tick_label(x_max)
      << "\" data-y-min=\"" << tick_label(y_min) << "\" data-y-max=\"" << tick_label(y_max) << "\">\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 5.0;
    const double yv = y_min + (y_max - y_min) * i / 5.0;
    out << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
        << tick_label(xv) << "</text>\n"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy(yv) + 5) << "\" text-anchor=\"end\">"
        << tick_label(yv) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12)
      << "\" text-anchor=\"middle\" font-style=\"italic\">τ</text>\n";
  std::string y_label;
  for (Measure m : measures) y_label += (y_label.empty() ? "" : ", ") + std::string(symbol(m));
  out << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-style=\"italic\">" << y_label
      << "</text>\n";

  static constexpr const char* kDash[] = {"2,3", "8,5", ""};
  static constexpr const char* kColor[] = {"black", "#1f5fa8", "#b22222", "#2e7d32", "#7b1fa2"};
  const bool single = series.columns.size() == 1;
  for (const auto& c : series.columns) {
    const auto nb_rank = static_cast<std::size_t>(std::distance(n_bars.begin(), n_bars.find(c.n_bar)));
    const auto ls_rank = static_cast<std::size_t>(std::distance(lambdas.begin(), lambdas.find(c.lambda_s)));
    // Ascending n_bar maps to dotted, dashed, solid; the largest n_bar is always solid.
    const std::size_t from_top = n_bars.size() - 1 - nb_rank;
    const char* dash = single ? "" : kDash[2 - std::min<std::size_t>(from_top, 2)];
    out << "<polyline data-column=\"" << c.name << "\" fill=\"none\" stroke=\"" << kColor[ls_rank % 5]
        << "\" stroke-width=\"1.4\"";
    if (*dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    for (std::size_t r = 0; r < series.tau.size(); ++r)
      out << num(sx(series.tau[r])) << "," << num(sy(c.values[r])) << (r + 1 < series.tau.size() ? " " : "");
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace ajcm
