#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/electrostatics.hpp"
#include "casimir/errors.hpp"
#include "casimir/scan_pipeline.hpp"
#include "test_helpers.hpp"

using namespace casimir;
using casimir::testing::rel_diff;

namespace {
constexpr double kPi = std::numbers::pi;

// Frozen: pi * R * epsilon0 / z at R = 100 um, z = 1 um.
constexpr double kSmoothForceAt1V = -2.781625139e-9;  // N

std::vector<CalibrationSample> synthetic_sweep(double k, double v0, double z,
                                               const CorrugationPair& pair,
                                               const SphereGeometry& sphere,
                                               int steps = 11,
                                               double v_span = 0.5) {
  std::vector<CalibrationSample> samples;
  for (int i = 0; i < steps; ++i) {
    const double v1 = -v_span + 2.0 * v_span * i / (steps - 1.0);
    samples.push_back({v1, electrostatic_force(z, v1, v0, pair, sphere) / k});
  }
  return samples;
}

}  // namespace

TEST_CASE("electrostatic force") {
  const SphereGeometry sphere = testing::reference_sphere();
  const CorrugationPair smooth(1.2e-6, 0.0, 0.0, 0.0, 1e-6);

  SUBCASE("zero at equal potentials") {
    CHECK(electrostatic_force(1e-6, -0.135, -0.135, smooth, sphere) == 0.0);
  }

  SUBCASE("smooth-plate value at 1 V, 1 um") {
    CHECK(rel_diff(electrostatic_force(1e-6, 1.0, 0.0, smooth, sphere),
                   kSmoothForceAt1V) < 1e-9);
    // beta = 0 reduces to the bare formula.
    const double direct = -kPi * sphere.radius *
                          PhysicalConstants::epsilon0 / 1e-6;
    CHECK(rel_diff(electrostatic_force(1e-6, 1.0, 0.0, smooth, sphere),
                   direct) < 1e-15);
  }

  SUBCASE("corrugation factor at phase pi") {
    const CorrugationPair pair = testing::reference_pair(kPi);
    const CorrugationPair flat(1.2e-6, 0.0, 0.0, 0.0, 221e-9);
    const double ratio =
        electrostatic_force(221e-9, 1.0, 0.0, pair, sphere) /
        electrostatic_force(221e-9, 1.0, 0.0, flat, sphere);
    // 1 / sqrt(1 - (67/221)^2) from the effective amplitude at phase pi.
    const double beta = 67.0 / 221.0;
    CHECK(rel_diff(ratio, 1.0 / std::sqrt(1.0 - beta * beta)) < 1e-12);
    CHECK(std::fabs(ratio - 1.049) < 1e-3);
  }

  SUBCASE("quadratic in the voltage difference, linear in the radius") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const CorrugationPair pair = testing::reference_pair(1.3);
    for (int i = 0; i < 200; ++i) {
      const double v0 = 2.0 * unit(rng) - 1.0;
      const double dv = 0.05 + 2.0 * unit(rng);
      const double s = 0.5 + 7.0 * unit(rng);
      const double base =
          electrostatic_force(221e-9, v0 + dv, v0, pair, sphere);
      CHECK(rel_diff(electrostatic_force(221e-9, v0 + s * dv, v0, pair,
                                         sphere),
                     base * s * s) < 1e-12);
      CHECK(rel_diff(electrostatic_force(221e-9, v0 + dv, v0, pair,
                                         SphereGeometry{sphere.radius * s}),
                     base * s) < 1e-12);
    }
  }

  SUBCASE("inverse-first-power separation dependence") {
    const CorrugationPair flat(1.2e-6, 0.0, 0.0, 0.0, 1e-6);
    std::vector<double> zs, mags;
    for (int i = 0; i < 15; ++i) {
      const double z = 120e-9 * std::pow(1.3, i);
      zs.push_back(z);
      mags.push_back(
          std::fabs(electrostatic_force(z, 0.4, -0.135, flat, sphere)));
    }
    const PowerLawFit fit = fit_power_law(zs, mags);
    CHECK(std::fabs(fit.slope - 1.0) < 1e-6);
  }

  SUBCASE("geometry guard") {
    const CorrugationPair pair = testing::reference_pair(kPi);
    CHECK_THROWS_AS(electrostatic_force(66e-9, 1.0, 0.0, pair, sphere),
                    GeometryError);
    CHECK_THROWS_AS(electrostatic_force(0.0, 1.0, 0.0, pair, sphere),
                    ValidationError);
  }
}

TEST_CASE("calibration from a voltage sweep") {
  const SphereGeometry sphere = testing::reference_sphere();

  SUBCASE("torsional constant against the corrugated plate") {
    const CorrugationPair pair = testing::reference_pair(kPi);
    const auto samples = synthetic_sweep(0.138, -0.135, 221e-9, pair, sphere);
    const CalibrationResult result =
        calibrate_from_sweep(samples, 221e-9, sphere, pair);
    CHECK(rel_diff(result.spring_constant, 0.138) < 1e-9);
    CHECK(rel_diff(result.residual_potential, -0.135) < 1e-9);
    CHECK(result.fit_residual <
          1e-10 * std::fabs(samples.front().deflection));
  }

  SUBCASE("bending constant against the smooth plate") {
    const CorrugationPair smooth(1.2e-6, 0.0, 0.0, 0.0, 221e-9);
    const auto samples =
        synthetic_sweep(0.0052, -0.135, 221e-9, smooth, sphere);
    const CalibrationResult result =
        calibrate_from_sweep(samples, 221e-9, sphere, smooth);
    CHECK(rel_diff(result.spring_constant, 0.0052) < 1e-9);
    CHECK(rel_diff(result.residual_potential, -0.135) < 1e-9);
  }

  SUBCASE("round-trip across the parameter range") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const CorrugationPair pair = testing::reference_pair(0.7);
    for (int i = 0; i < 100; ++i) {
      const double k = std::pow(10.0, -3.0 + 3.0 * unit(rng));
      const double v0 = 2.0 * unit(rng) - 1.0;
      const auto samples = synthetic_sweep(k, v0, 250e-9, pair, sphere);
      const CalibrationResult result =
          calibrate_from_sweep(samples, 250e-9, sphere, pair);
      CHECK(rel_diff(result.spring_constant, k) < 1e-9);
      CHECK(std::fabs(result.residual_potential - v0) < 1e-9);
    }
  }

  SUBCASE("noise shrinks as sigma over sqrt(N)") {
    const CorrugationPair pair = testing::reference_pair(0.0);
    const double k = 0.138, v0 = -0.135;
    std::mt19937_64 rng(23);
    std::normal_distribution<double> noise(0.0, 1.0);
    const auto spread = [&](int n_samples, double sigma) {
      double ss = 0.0;
      const int reps = 30;
      for (int rep = 0; rep < reps; ++rep) {
        auto samples =
            synthetic_sweep(k, v0, 221e-9, pair, sphere, n_samples);
        for (auto& s : samples) s.deflection += sigma * noise(rng);
        const CalibrationResult result =
            calibrate_from_sweep(samples, 221e-9, sphere, pair);
        const double err = (result.spring_constant - k) / k;
        ss += err * err;
      }
      return std::sqrt(ss / reps);
    };
    const double sigma = 1e-9;  // deflection units
    const double coarse = spread(12, sigma);
    const double fine = spread(12 * 16, sigma);
    // 16x the samples should shrink the error about 4x.
    CHECK(fine < coarse);
    CHECK(fine > coarse / 16.0);
    CHECK(fine < coarse / 1.5);
  }

  SUBCASE("error paths") {
    const CorrugationPair pair = testing::reference_pair(0.0);
    std::vector<CalibrationSample> two = {{0.1, -1.0}, {0.2, -2.0}};
    CHECK_THROWS_AS(calibrate_from_sweep(two, 221e-9, sphere, pair),
                    FitError);

    std::vector<CalibrationSample> same = {
        {0.1, -1.0}, {0.1, -1.1}, {0.1, -0.9}, {0.1, -1.0}};
    CHECK_THROWS_AS(calibrate_from_sweep(same, 221e-9, sphere, pair),
                    FitError);

    std::vector<CalibrationSample> two_distinct = {
        {0.1, -1.0}, {0.2, -2.0}, {0.1, -1.0}, {0.2, -2.0}};
    CHECK_THROWS_AS(calibrate_from_sweep(two_distinct, 221e-9, sphere, pair),
                    FitError);

    // Sign-flipped deflections imply a negative spring constant.
    auto flipped = synthetic_sweep(0.138, -0.135, 221e-9, pair, sphere);
    for (auto& s : flipped) s.deflection = -s.deflection;
    CHECK_THROWS_AS(calibrate_from_sweep(flipped, 221e-9, sphere, pair),
                    FitError);
  }
}
