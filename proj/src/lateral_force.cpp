#include "casimir/lateral_force.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "msg.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_valid(const SphereGeometry& sphere) {
  if (!(sphere.radius > 0.0) || !std::isfinite(sphere.radius)) {
    throw ValidationError(
        detail::msg("sphere: radius must be positive, got ", sphere.radius));
  }
}

void require_positive(double z, const char* where) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw ValidationError(
        detail::msg(where, ": separation must be positive, got ", z));
  }
}

// b(phase) with the geometry guard against touching surfaces at mean
// separation z.
double checked_effective_amplitude(double z, const CorrugationPair& pair,
                                   const char* where) {
  const double b = effective_amplitude(pair.amplitude_plate,
                                       pair.amplitude_sphere, pair.phase);
  if (z <= b) {
    throw GeometryError(detail::msg(
        where, ": separation ", z, " does not exceed the effective ",
        "corrugation amplitude ", b, "; the surfaces would touch"));
  }
  return b;
}

}  // namespace

SphereGeometry make_sphere(double radius) {
  SphereGeometry s{radius};
  require_valid(s);
  return s;
}

std::string ValidityFlags::to_string() const {
  std::string out;
  if (below_plasma_wavelength) out += "below_plasma_wavelength";
  if (pft_marginal) {
    if (!out.empty()) out += ';';
    out += "pft_marginal";
  }
  return out;
}

ValidityFlags validity_flags(double z, double period,
                             const SphereGeometry& sphere,
                             const Material& material) {
  return {z < material.plasma_wavelength,
          sphere.radius < 10.0 * std::max(z, period)};
}

double corrugated_energy(double z, const CorrugationPair& pair,
                         const Material& material) {
  require_positive(z, "corrugated_energy");
  const double b = checked_effective_amplitude(z, pair, "corrugated_energy");
  const double alpha = effective_alpha(pair.amplitude_plate,
                                       pair.amplitude_sphere, pair.phase);
  const double period = pair.period;
  const auto integrand = [&](double x) {
    const double s = z + b * std::cos(kTwoPi * x / period - alpha);
    return plate_energy_value(s, material);
  };
  return converged_periodic_trapezoid(integrand, period) / period;
}

double normal_force_pft(double z, const CorrugationPair& pair,
                        const SphereGeometry& sphere,
                        const Material& material) {
  require_valid(sphere);
  return kTwoPi * sphere.radius * corrugated_energy(z, pair, material);
}

std::array<double, 4> lateral_coefficients(
    double beta, const std::array<double, 4>& plate_coefficients) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw ValidationError(
        detail::msg("lateral_coefficients: beta must lie in [0, 1), got ",
                    beta));
  }
  const double b2 = beta * beta;
  const double b4 = b2 * b2;
  const double u = 1.0 - b2;
  return {
      (4.0 + b2) / (3.0 * u) * plate_coefficients[0],
      5.0 * (4.0 + 3.0 * b2) / (12.0 * u * u) * plate_coefficients[1],
      (8.0 + 12.0 * b2 + b4) / (4.0 * u * u * u) * plate_coefficients[2],
      7.0 * (8.0 + 20.0 * b2 + 5.0 * b4) / (24.0 * u * u * u * u) *
          plate_coefficients[3],
  };
}

std::array<double, 4> lateral_coefficients(double beta) {
  return lateral_coefficients(beta, conductivity_coefficients());
}

LateralForceResult lateral_force_closed(double z, const CorrugationPair& pair,
                                        const SphereGeometry& sphere,
                                        const Material& material) {
  require_positive(z, "lateral_force_closed");
  require_valid(sphere);
  const double b =
      checked_effective_amplitude(z, pair, "lateral_force_closed");
  const double beta = b / z;
  const double u = 1.0 - beta * beta;

  double bracket = 1.0;
  if (material.plasma_wavelength > 0.0) {
    const auto cx = lateral_coefficients(beta);
    const double r = material.plasma_wavelength / (kTwoPi * z);
    bracket = 1.0 + r * (cx[0] + r * (cx[1] + r * (cx[2] + r * cx[3])));
  }

  const double ideal = kPi * kPi * kPi * kPi * sphere.radius *
                       PhysicalConstants::hbar_c / (120.0 * z * z * z * z) *
                       pair.amplitude_plate * pair.amplitude_sphere *
                       std::sin(pair.phase) /
                       (pair.period * u * u * std::sqrt(u));

  LateralForceResult result;
  result.force = ideal * bracket;
  result.beta = beta;
  result.bracket_factor = bracket;
  result.flags = validity_flags(z, pair.period, sphere, material);
  return result;
}

double sphere_plate_energy(double z, const CorrugationPair& pair,
                           const SphereGeometry& sphere,
                           const Material& material) {
  require_positive(z, "sphere_plate_energy");
  require_valid(sphere);
  const double b =
      checked_effective_amplitude(z, pair, "sphere_plate_energy");
  const double alpha = effective_alpha(pair.amplitude_plate,
                                       pair.amplitude_sphere, pair.phase);
  const double period = pair.period;
  const double k0 =
      kPi * kPi * PhysicalConstants::hbar_c / 720.0;  // |ideal| prefactor
  const auto c = conductivity_coefficients();
  const double ell = material.plasma_wavelength / kTwoPi;

  // E_pp is a finite sum of pure powers of the local separation, so the
  // integral from z to infinity is exact per term:
  //   s^-(3+n) integrates to (z + u)^-(2+n) / (2+n).
  const auto depth_integrated = [&](double x) {
    const double s = z + b * std::cos(kTwoPi * x / period - alpha);
    const double inv = 1.0 / s;
    const double inv2 = inv * inv;
    double sum = 0.5 * inv2;
    double ell_pow = 1.0;
    double inv_pow = inv2;
    for (int n = 1; n <= 4; ++n) {
      ell_pow *= ell;
      inv_pow *= inv;
      sum += c[n - 1] * ell_pow * inv_pow / (2.0 + n);
    }
    return -k0 * sum;
  };
  return kTwoPi * sphere.radius *
         converged_periodic_trapezoid(depth_integrated, period) / period;
}

double lateral_force_numeric(double z, const CorrugationPair& pair,
                             const SphereGeometry& sphere,
                             const Material& material) {
  const double h = 1e-3;  // rad
  const auto energy_at = [&](double phi) {
    return sphere_plate_energy(z, with_phase(pair, phi), sphere, material);
  };
  const auto central = [&](double step) {
    return (energy_at(pair.phase + step) - energy_at(pair.phase - step)) /
           (2.0 * step);
  };
  // One Richardson level on the central difference.
  const double derivative = (4.0 * central(h / 2.0) - central(h)) / 3.0;
  return -(kTwoPi / pair.period) * derivative;
}

LateralAmplitude lateral_amplitude(double z, const CorrugationPair& pair,
                                   const SphereGeometry& sphere,
                                   const Material& material) {
  require_positive(z, "lateral_amplitude");
  require_valid(sphere);
  if (z <= pair.amplitude_plate + pair.amplitude_sphere) {
    throw GeometryError(detail::msg(
        "lateral_amplitude: separation ", z,
        " must exceed the combined amplitudes ",
        pair.amplitude_plate + pair.amplitude_sphere));
  }
  const auto magnitude = [&](double phi) {
    return std::fabs(
        lateral_force_closed(z, with_phase(pair, phi), sphere, material)
            .force);
  };

  // Golden-section search on (0, pi); the force vanishes at both ends and
  // has a single interior peak.
  constexpr double kInvGolden = 0.6180339887498949;
  double lo = 0.0;
  double hi = kPi;
  double c = hi - kInvGolden * (hi - lo);
  double d = lo + kInvGolden * (hi - lo);
  double fc = magnitude(c);
  double fd = magnitude(d);
  while (hi - lo > 1e-6) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvGolden * (hi - lo);
      fc = magnitude(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvGolden * (hi - lo);
      fd = magnitude(d);
    }
  }
  const double phi = 0.5 * (lo + hi);
  return {magnitude(phi), phi};
}

}  // namespace casimir
