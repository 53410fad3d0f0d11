#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/plate_energy.hpp"
#include "test_helpers.hpp"

using namespace casimir;
using casimir::testing::rel_diff;

namespace {
// Frozen from a 40-digit evaluation of the defining expressions.
constexpr double kEnergyAt1um = -4.33375257269e-10;    // J/m^2
constexpr double kPressureAt1um = -1.30012577181e-3;   // Pa
constexpr double kC3 = -43.5658004025;
constexpr double kC4 = 104.149741181;
constexpr double kBracketAt221 = 0.7150196587;  // z = 221 nm, lambda_p = 136 nm
constexpr double kBracketAtLambda = 0.6193284619;  // z = lambda_p
}  // namespace

TEST_CASE("ideal plate energy value and scaling") {
  CHECK(rel_diff(ideal_plate_energy(1e-6), kEnergyAt1um) < 1e-11);
  CHECK(ideal_plate_energy(1e-6) < 0.0);
  CHECK(rel_diff(ideal_plate_energy(0.5e-6), 8.0 * ideal_plate_energy(1e-6)) <
        1e-12);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> zdist(50e-9, 5e-6);
  for (int i = 0; i < 100; ++i) {
    const double z = zdist(rng);
    CHECK(rel_diff(ideal_plate_energy(2.0 * z),
                   ideal_plate_energy(z) / 8.0) < 1e-12);
    const double k = 0.1 + 5.0 * (i / 100.0);
    CHECK(rel_diff(ideal_plate_energy(k * z) * k * k * k,
                   ideal_plate_energy(z)) < 1e-12);
  }
}

TEST_CASE("ideal plate pressure value, identity, and derivative") {
  CHECK(rel_diff(ideal_plate_pressure(1e-6), kPressureAt1um) < 1e-11);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> zdist(50e-9, 5e-6);
  for (int i = 0; i < 100; ++i) {
    const double z = zdist(rng);
    // F = 3 U / z follows from the two powers.
    CHECK(rel_diff(ideal_plate_pressure(z), 3.0 * ideal_plate_energy(z) / z) <
          1e-12);
    CHECK(rel_diff(ideal_plate_pressure(2.0 * z),
                   ideal_plate_pressure(z) / 16.0) < 1e-12);
    // Independent route: central difference of the energy.
    const double h = z * 1e-5;
    const double fd =
        -(ideal_plate_energy(z + h) - ideal_plate_energy(z - h)) / (2.0 * h);
    CHECK(rel_diff(fd, ideal_plate_pressure(z)) < 1e-6);
  }
}

TEST_CASE("conductivity coefficients") {
  const auto c = conductivity_coefficients();
  CHECK(c[0] == -4.0);
  CHECK(c[1] == doctest::Approx(14.4).epsilon(1e-15));
  CHECK(rel_diff(c[2], kC3) < 1e-11);
  CHECK(rel_diff(c[3], kC4) < 1e-11);
}

TEST_CASE("corrected plate energy") {
  SUBCASE("ideal-metal reduction is exact") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> zdist(50e-9, 5e-6);
    const Material ideal = ideal_metal();
    for (int i = 0; i < 10000; ++i) {
      const double z = zdist(rng);
      CHECK(plate_energy(z, ideal).value == ideal_plate_energy(z));
    }
  }

  SUBCASE("bracket at z equal to the plasma wavelength") {
    const Material m = testing::gold();
    const double z = m.plasma_wavelength;
    const double bracket = plate_energy(z, m).value / ideal_plate_energy(z);
    CHECK(rel_diff(bracket, kBracketAtLambda) < 1e-9);
    // Same value assembled directly from the coefficients.
    const auto c = conductivity_coefficients();
    const double r = 1.0 / (2.0 * std::numbers::pi);
    const double direct =
        1.0 + c[0] * r + c[1] * r * r + c[2] * r * r * r + c[3] * r * r * r * r;
    CHECK(rel_diff(bracket, direct) < 1e-14);
  }

  SUBCASE("bracket at the reference separation") {
    const double z = 221e-9;
    const double bracket =
        plate_energy(z, testing::gold()).value / ideal_plate_energy(z);
    CHECK(rel_diff(bracket, kBracketAt221) < 1e-9);
  }

  SUBCASE("strictly negative and increasing from lambda_p outward") {
    const Material m = testing::gold();
    double previous = plate_energy(m.plasma_wavelength, m).value;
    for (int i = 1; i <= 1000; ++i) {
      const double z = m.plasma_wavelength * (1.0 + 9.0 * i / 1000.0);
      const double value = plate_energy(z, m).value;
      CHECK(value < 0.0);
      CHECK(value > previous);
      previous = value;
    }
  }

  SUBCASE("validity indicator") {
    const Material m = testing::gold();
    CHECK(plate_energy(221e-9, m).below_plasma_wavelength == false);
    CHECK(plate_energy(100e-9, m).below_plasma_wavelength == true);
    CHECK(within_conductivity_validity(136e-9, m));
    CHECK_FALSE(within_conductivity_validity(135.9e-9, m));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(ideal_plate_energy(0.0), ValidationError);
  CHECK_THROWS_AS(ideal_plate_energy(-1e-9), ValidationError);
  CHECK_THROWS_AS(ideal_plate_pressure(0.0), ValidationError);
  CHECK_THROWS_AS(plate_energy(-1e-6, ideal_metal()), ValidationError);
  const double nan = std::nan("");
  CHECK_THROWS_AS(ideal_plate_energy(nan), ValidationError);
  CHECK_THROWS_AS(make_material(-1e-9), ValidationError);
  CHECK_THROWS_AS(plate_energy(1e-6, Material{-1e-9}), ValidationError);
}
