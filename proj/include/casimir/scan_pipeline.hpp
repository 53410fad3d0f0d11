#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "casimir/corrugation.hpp"
#include "casimir/lateral_force.hpp"

namespace casimir {

// Parameters of one synthetic lateral scan.  A scan steps the plate
// sideways in fixed increments and records the lateral force at each step;
// the whole sweep is repeated n_scans times and averaged.
struct ScanConfig {
  double step = 0.46e-9;      // m, lateral step size
  int n_steps = 0;            // 0 derives a span of two corrugation periods
  int n_scans = 60;
  double noise_sigma = 4e-13;  // N, additive Gaussian noise per sample
  double tilt_slope = 0.0;     // separation drift per unit lateral travel
  bool z_correction_enabled = true;  // cancel the tilt drift step by step
  std::uint64_t rng_seed = 0;
};

void validate(const ScanConfig& config);

// Number of steps actually simulated for `config` at corrugation period
// `period` (resolves the n_steps = 0 default).
int resolved_step_count(const ScanConfig& config, double period);

struct ScanSet {
  std::vector<double> displacements;         // m, one per step
  std::vector<std::vector<double>> forces;   // n_scans rows x n_steps columns
  std::vector<double> mean_force;            // column means
};

struct SineFit {
  double amplitude = 0.0;     // N, nonnegative
  double phase = 0.0;         // rad
  double offset = 0.0;        // N
  double rms_residual = 0.0;  // N
};

// Regression of ln|amplitude| on ln z.  The slope is reported as the
// positive decay exponent: model ln A = intercept - slope ln z.
struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

struct ConfidenceInterval {
  double mean_amplitude = 0.0;    // N
  double sigma_mean = 0.0;        // N, standard error of the mean amplitude
  double systematic = 0.0;        // N
  double student_t = 0.0;
  double delta_total = 0.0;       // N, student_t * sigma_mean + systematic
  double confidence_level = 0.0;  // fraction
};

// Generates the scan matrix from the closed-form lateral force at
// phase = 2 pi x / period and separation z + tilt_slope * x (restored to z
// when the correction is enabled), plus seeded Gaussian noise.  Identical
// configs produce bit-identical results.  pair.phase is ignored.
ScanSet simulate_scan(const ScanConfig& config, double z,
                      const CorrugationPair& pair,
                      const SphereGeometry& sphere, const Material& material);

// Least squares of a sin(2 pi x / period) + b cos(2 pi x / period) + c,
// linear in (a, b, c); exact on noiseless sinusoidal input.  Throws
// FitError on fewer than three samples or a rank-deficient design.
SineFit fit_sine(std::span<const double> displacements,
                 std::span<const double> force, double period);

// Amplitude of each scan row fitted individually; feeds the confidence
// statistics.
std::vector<double> per_scan_amplitudes(const ScanSet& scan, double period);

// Solves lateral_amplitude(z) = measured_amplitude for z by bisection to
// 0.01 nm on [A1 + A2 + 1 nm, 2 um]; the amplitude is strictly decreasing
// there so the root is unique.  Throws FitError when the amplitude is not
// attainable in that range.
double invert_separation(double measured_amplitude,
                         const CorrugationPair& pair,
                         const SphereGeometry& sphere,
                         const Material& material);

PowerLawFit fit_power_law(std::span<const double> separations,
                          std::span<const double> amplitudes);

// sigma_mean = sample-std / sqrt(N); systematic = fraction * mean;
// delta_total combines them linearly as student_t * sigma_mean + systematic.
ConfidenceInterval confidence_interval(
    std::span<const double> per_scan_amplitudes, double systematic_fraction,
    double student_t, double confidence_level = 0.95);

// Same combination from precomputed statistics.
ConfidenceInterval confidence_from_stats(double mean_amplitude,
                                         double sigma_mean,
                                         double systematic_fraction,
                                         double student_t,
                                         double confidence_level = 0.95);

}  // namespace casimir
