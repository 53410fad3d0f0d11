#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/corrugation.hpp"
#include "casimir/lateral_force.hpp"
#include "casimir/scan_pipeline.hpp"

namespace casimir {

inline constexpr const char* kToolVersion = "1.0.0";

// Whole-run configuration, loadable from a flat key = value text file
// (one value per line, '#' comments).  Defaults describe a gold-coated
// 100 um sphere against a 1.2 um-period corrugated plate.
struct RunConfig {
  double lambda_p = 1.36e-7;         // material.lambda_p, m
  double sphere_radius = 1.0e-4;     // sphere.radius, m
  double period = 1.2e-6;            // corrugation.period, m
  double amplitude_plate = 5.9e-8;   // corrugation.amplitude_plate, m
  double amplitude_sphere = 8.0e-9;  // corrugation.amplitude_sphere, m
  std::vector<double> separations = {2.21e-7, 2.33e-7, 2.45e-7,
                                     2.57e-7};  // m
  ScanConfig scan;
  std::uint64_t seed = 20140;
  std::string output_dir = "out";

  Material material() const;
  SphereGeometry sphere() const;
  // Pair at the given phase and mean separation.
  CorrugationPair pair_at(double phase, double z) const;
};

// Parses a config file.  Unknown keys and malformed values raise ParseError
// with the line number; the loaded config is then validated.
RunConfig load_run_config(const std::string& path);

// Throws ValidationError listing every violated invariant.
void validate(const RunConfig& config);

// Canonical text form; load(format(c)) == c with values printed to 17
// significant digits.
std::string format_run_config(const RunConfig& config);

// Deterministic sub-seed for a labeled consumer of the config seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label);

}  // namespace casimir
