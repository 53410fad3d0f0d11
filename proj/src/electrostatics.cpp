#include "casimir/electrostatics.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "msg.hpp"
#include "solve3.hpp"

namespace casimir {

namespace {
constexpr double kPi = std::numbers::pi;

// Geometry prefactor C in F = -C (V1 - V0)^2.
double force_prefactor(double z, const CorrugationPair& pair,
                       const SphereGeometry& sphere) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw ValidationError(detail::msg(
        "electrostatic_force: separation must be positive, got ", z));
  }
  if (!(sphere.radius > 0.0)) {
    throw ValidationError("electrostatic_force: sphere radius must be positive");
  }
  const double b = effective_amplitude(pair.amplitude_plate,
                                       pair.amplitude_sphere, pair.phase);
  if (z <= b) {
    throw GeometryError(detail::msg(
        "electrostatic_force: separation ", z,
        " does not exceed the effective corrugation amplitude ", b));
  }
  const double beta = b / z;
  return kPi * sphere.radius * PhysicalConstants::epsilon0 /
         (z * std::sqrt(1.0 - beta * beta));
}

}  // namespace

double electrostatic_force(double z, double v1, double v0,
                           const CorrugationPair& pair,
                           const SphereGeometry& sphere) {
  if (!std::isfinite(v1) || !std::isfinite(v0)) {
    throw ValidationError("electrostatic_force: voltages must be finite");
  }
  const double dv = v1 - v0;
  return -force_prefactor(z, pair, sphere) * dv * dv;
}

CalibrationResult calibrate_from_sweep(
    const std::vector<CalibrationSample>& samples, double z,
    const SphereGeometry& sphere, const CorrugationPair& pair) {
  std::set<double> distinct;
  for (const auto& s : samples) {
    if (!std::isfinite(s.applied_voltage) || !std::isfinite(s.deflection)) {
      throw ValidationError("calibrate_from_sweep: samples must be finite");
    }
    distinct.insert(s.applied_voltage);
  }
  if (samples.size() < 3 || distinct.size() < 3) {
    throw FitError(detail::msg(
        "calibrate_from_sweep: underdetermined fit, need at least 3 "
        "distinct voltages, got ",
        distinct.size()));
  }

  // deflection = a V1^2 + b V1 + c, a parabola in the applied voltage.
  double s1 = static_cast<double>(samples.size());
  double sv = 0, sv2 = 0, sv3 = 0, sv4 = 0, sy = 0, svy = 0, sv2y = 0;
  for (const auto& s : samples) {
    const double v = s.applied_voltage;
    const double v2 = v * v;
    sv += v;
    sv2 += v2;
    sv3 += v2 * v;
    sv4 += v2 * v2;
    sy += s.deflection;
    svy += v * s.deflection;
    sv2y += v2 * s.deflection;
  }
  const auto coef = detail::solve3({{{sv4, sv3, sv2},
                                     {sv3, sv2, sv},
                                     {sv2, sv, s1}}},
                                   {sv2y, svy, sy}, "calibrate_from_sweep");
  const double a = coef[0];
  const double b = coef[1];
  const double c = coef[2];

  // With deflection = force / k and force = -C (V1 - V0)^2 the curvature is
  // a = -C / k, so a must be negative for a physical spring constant.
  const double prefactor = force_prefactor(z, pair, sphere);
  if (!(a < 0.0)) {
    throw FitError(detail::msg(
        "calibrate_from_sweep: inconsistent data, fitted curvature ", a,
        " implies a non-positive spring constant"));
  }
  CalibrationResult result;
  result.spring_constant = -prefactor / a;
  result.residual_potential = -b / (2.0 * a);

  double ss = 0.0;
  for (const auto& s : samples) {
    const double v = s.applied_voltage;
    const double r = a * v * v + b * v + c - s.deflection;
    ss += r * r;
  }
  result.fit_residual = std::sqrt(ss / static_cast<double>(samples.size()));
  return result;
}

}  // namespace casimir
