#include "casimir/plate_energy.hpp"

#include <cmath>
#include <numbers>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "msg.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_separation(double z, const char* where) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw ValidationError(
        detail::msg(where, ": separation must be positive and finite, got ",
                    z));
  }
}

void require_valid(const Material& material) {
  if (!(material.plasma_wavelength >= 0.0) ||
      !std::isfinite(material.plasma_wavelength)) {
    throw ValidationError(
        detail::msg("material: plasma wavelength must be nonnegative, got ",
                    material.plasma_wavelength));
  }
}

}  // namespace

Material make_material(double plasma_wavelength) {
  Material m{plasma_wavelength};
  require_valid(m);
  return m;
}

double ideal_plate_energy(double z) {
  require_positive_separation(z, "ideal_plate_energy");
  return -kPi * kPi * PhysicalConstants::hbar_c / (720.0 * z * z * z);
}

double ideal_plate_pressure(double z) {
  require_positive_separation(z, "ideal_plate_pressure");
  return -kPi * kPi * PhysicalConstants::hbar_c / (240.0 * z * z * z * z);
}

std::array<double, 4> conductivity_coefficients() {
  const double pi2 = kPi * kPi;
  return {
      -4.0,
      72.0 / 5.0,
      -(320.0 / 7.0) * (1.0 - pi2 / 210.0),
      (400.0 / 3.0) * (1.0 - 163.0 * pi2 / 7350.0),
  };
}

double plate_energy_value(double s, const Material& material) {
  require_positive_separation(s, "plate_energy");
  require_valid(material);
  const double ideal = -kPi * kPi * PhysicalConstants::hbar_c /
                       (720.0 * s * s * s);
  if (material.plasma_wavelength == 0.0) return ideal;
  const auto c = conductivity_coefficients();
  const double r = material.plasma_wavelength / (2.0 * kPi * s);
  const double bracket =
      1.0 + r * (c[0] + r * (c[1] + r * (c[2] + r * c[3])));
  return ideal * bracket;
}

PlateEnergy plate_energy(double z, const Material& material) {
  return {plate_energy_value(z, material),
          !within_conductivity_validity(z, material)};
}

bool within_conductivity_validity(double z, const Material& material) {
  return z >= material.plasma_wavelength;
}

}  // namespace casimir
