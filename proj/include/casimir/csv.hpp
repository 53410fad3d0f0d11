#pragma once

#include <string>
#include <vector>

#include "casimir/electrostatics.hpp"
#include "casimir/scan_pipeline.hpp"

namespace casimir {

// In-memory CSV: comma separator, '.' decimal, LF endings, mandatory header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Doubles print with 17 significant digits so every emitted value parses
// back bit-exactly.
std::string format_double(double v);

// Exact string-to-double conversion; throws ParseError naming the 1-based
// row and column on a malformed cell.
double cell_to_double(const CsvTable& table, std::size_t row,
                      std::size_t column);

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// Scan sets travel as `displacement_m,scan_0,...,scan_{n-1},mean`.
CsvTable scan_set_to_table(const ScanSet& scan);
ScanSet scan_set_from_table(const CsvTable& table);

// Calibration sweeps travel as `v1_volts,deflection`.
CsvTable calibration_to_table(const std::vector<CalibrationSample>& samples);
std::vector<CalibrationSample> calibration_from_table(const CsvTable& table);

}  // namespace casimir
