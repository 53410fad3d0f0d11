#include "casimir/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "casimir/errors.hpp"
#include "msg.hpp"

namespace casimir {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

double cell_to_double(const CsvTable& table, std::size_t row,
                      std::size_t column) {
  const std::string& text = table.rows.at(row).at(column);
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(detail::msg("csv row ", row + 1, ", column ", column + 1,
                                 ": '", text, "' is not a number"));
  }
  return value;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(detail::msg("cannot open '", path, "' for writing"));
  }
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  if (!out) {
    throw IoError(detail::msg("write to '", path, "' failed"));
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(detail::msg("cannot open '", path, "'"));
  }
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(detail::msg("'", path, "': missing header row"));
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split_line(line);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw ParseError(detail::msg("'", path, "' line ", line_no, ": expected ",
                                   table.header.size(), " cells, got ",
                                   cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

CsvTable scan_set_to_table(const ScanSet& scan) {
  CsvTable table;
  table.header.push_back("displacement_m");
  for (std::size_t s = 0; s < scan.forces.size(); ++s) {
    table.header.push_back("scan_" + std::to_string(s));
  }
  table.header.push_back("mean");
  for (std::size_t j = 0; j < scan.displacements.size(); ++j) {
    std::vector<std::string> row;
    row.reserve(scan.forces.size() + 2);
    row.push_back(format_double(scan.displacements[j]));
    for (const auto& scan_row : scan.forces) {
      row.push_back(format_double(scan_row[j]));
    }
    row.push_back(format_double(scan.mean_force[j]));
    table.rows.push_back(std::move(row));
  }
  return table;
}

ScanSet scan_set_from_table(const CsvTable& table) {
  if (table.header.size() < 3 || table.header.front() != "displacement_m" ||
      table.header.back() != "mean") {
    throw ParseError(
        "scan table must be displacement_m,scan_0,...,scan_{n-1},mean");
  }
  const std::size_t n_scans = table.header.size() - 2;
  const std::size_t n_steps = table.rows.size();
  ScanSet scan;
  scan.displacements.resize(n_steps);
  scan.forces.assign(n_scans, std::vector<double>(n_steps));
  scan.mean_force.resize(n_steps);
  for (std::size_t j = 0; j < n_steps; ++j) {
    scan.displacements[j] = cell_to_double(table, j, 0);
    for (std::size_t s = 0; s < n_scans; ++s) {
      scan.forces[s][j] = cell_to_double(table, j, s + 1);
    }
    scan.mean_force[j] = cell_to_double(table, j, n_scans + 1);
  }
  return scan;
}

CsvTable calibration_to_table(const std::vector<CalibrationSample>& samples) {
  CsvTable table;
  table.header = {"v1_volts", "deflection"};
  for (const auto& sample : samples) {
    table.rows.push_back({format_double(sample.applied_voltage),
                          format_double(sample.deflection)});
  }
  return table;
}

std::vector<CalibrationSample> calibration_from_table(const CsvTable& table) {
  if (table.header != std::vector<std::string>{"v1_volts", "deflection"}) {
    throw ParseError("calibration table must have header v1_volts,deflection");
  }
  std::vector<CalibrationSample> samples;
  samples.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    samples.push_back(
        {cell_to_double(table, r, 0), cell_to_double(table, r, 1)});
  }
  return samples;
}

}  // namespace casimir
