#pragma once

#include <vector>

#include "casimir/corrugation.hpp"
#include "casimir/lateral_force.hpp"

namespace casimir {

struct CalibrationSample {
  double applied_voltage = 0.0;  // V1, volts
  double deflection = 0.0;       // signal with the force sign, force / k
};

struct CalibrationResult {
  double spring_constant = 0.0;     // N / m
  double residual_potential = 0.0;  // V0, volts
  double fit_residual = 0.0;        // rms model mismatch, signal units
};

// Normal electrostatic force between the corrugated sphere and plate,
//   -pi R epsilon0 (V1 - V0)^2 / z * 1 / sqrt(1 - beta^2),
// with beta = b(phase) / z.  Pass zero amplitudes for smooth surfaces.
double electrostatic_force(double z, double v1, double v0,
                           const CorrugationPair& pair,
                           const SphereGeometry& sphere);

// Recovers the spring constant and residual potential from a voltage sweep.
// The deflection is exactly a parabola in V1, so the fit is a closed-form
// quadratic least squares: V0 = -b/(2a) and k from the curvature a.
// Throws FitError when fewer than three distinct voltages are present or
// when the fitted curvature implies a non-positive spring constant.
CalibrationResult calibrate_from_sweep(
    const std::vector<CalibrationSample>& samples, double z,
    const SphereGeometry& sphere, const CorrugationPair& pair);

}  // namespace casimir
