#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ajcm/runner.hpp"

namespace ajcm {

namespace {

std::string full_precision(Real x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_csv(const MeasureSeries& series, std::ostream& out) {
  out << "# series: " << series.name << "\n";
  out << "# theta: " << full_precision(series.theta) << "\n";
  for (const auto& c : series.combinations)
    out << "# combination: nbar=" << full_precision(c.n_bar) << " ls=" << full_precision(c.lambda_s)
        << " n_max=" << c.n_max << " tail_deficit=" << full_precision(c.tail_deficit) << "\n";
  // Column names contain commas, so header cells are quoted.
  out << "tau";
  for (const auto& col : series.columns) out << ",\"" << col.name << "\"";
  out << "\n";
  for (std::size_t r = 0; r < series.tau.size(); ++r) {
    out << full_precision(series.tau[r]);
    for (const auto& col : series.columns) out << "," << full_precision(col.values[r]);
    out << "\n";
  }
}

void emit_csv(const MeasureSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(series, out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += ch;
      }
    }
    cells.push_back(cell);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) throw IoError(path.string() + ": ragged row");
    std::vector<Real> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      row.push_back(std::strtod(c.c_str(), &end));
      if (end != c.c_str() + c.size()) throw IoError(path.string() + ": bad number '" + c + "'");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace ajcm
