#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/scan_pipeline.hpp"
#include "test_helpers.hpp"

using namespace casimir;
using casimir::testing::rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Frozen from a 40-digit bisection against the peak amplitude curve at the
// reference geometry.
constexpr double kInvertOf32 = 221.43754e-9;  // m, amplitude 3.2e-13 N
constexpr double kInvertOf26 = 233.26813e-9;  // m, amplitude 2.6e-13 N
constexpr double kSlopeReference = 3.9604652;

ScanConfig quick_scan(std::uint64_t seed, int n_scans = 8, int n_steps = 200,
                      double sigma = 0.0) {
  ScanConfig config;
  config.step = 12e-9;
  config.n_steps = n_steps;
  config.n_scans = n_scans;
  config.noise_sigma = sigma;
  config.rng_seed = seed;
  return config;
}

}  // namespace

TEST_CASE("scan simulation") {
  const SphereGeometry sphere = testing::reference_sphere();
  const Material gold = testing::gold();
  const CorrugationPair pair = testing::reference_pair(0.0);

  SUBCASE("default step count covers two periods") {
    ScanConfig config;
    const int n = resolved_step_count(config, 1.2e-6);
    CHECK(n == 5219);
    CHECK((n - 1) * config.step >= 2 * 1.2e-6);
  }

  SUBCASE("noiseless rows reproduce the closed-form curve") {
    const ScanSet scan =
        simulate_scan(quick_scan(0, 3), 221e-9, pair, sphere, gold);
    REQUIRE(scan.forces.size() == 3);
    for (std::size_t j = 0; j < scan.displacements.size(); ++j) {
      const double phi = kTwoPi * scan.displacements[j] / pair.period;
      const double expected =
          lateral_force_closed(221e-9, with_phase(pair, phi), sphere, gold)
              .force;
      CHECK(scan.forces[0][j] == expected);
      CHECK(scan.forces[1][j] == expected);
      CHECK(scan.forces[2][j] == expected);
      CHECK(scan.mean_force[j] == doctest::Approx(expected).epsilon(1e-15));
    }
  }

  SUBCASE("same seed, same bits; different seed, different noise") {
    const ScanConfig config = quick_scan(42, 4, 64, 1e-13);
    const ScanSet a = simulate_scan(config, 221e-9, pair, sphere, gold);
    const ScanSet b = simulate_scan(config, 221e-9, pair, sphere, gold);
    ScanConfig other = config;
    other.rng_seed = 43;
    const ScanSet c = simulate_scan(other, 221e-9, pair, sphere, gold);
    bool identical = true;
    bool differs = false;
    for (std::size_t s = 0; s < a.forces.size(); ++s) {
      for (std::size_t j = 0; j < a.forces[s].size(); ++j) {
        identical = identical && a.forces[s][j] == b.forces[s][j];
        differs = differs || a.forces[s][j] != c.forces[s][j];
      }
    }
    CHECK(identical);
    CHECK(differs);
  }

  SUBCASE("averaging 60 scans thins the noise by sqrt(60)") {
    ScanConfig config;  // default: 0.46 nm steps, 60 scans
    config.noise_sigma = 4e-13;
    config.rng_seed = 7;
    const ScanSet noisy = simulate_scan(config, 221e-9, pair, sphere, gold);
    ScanConfig quiet = config;
    quiet.noise_sigma = 0.0;
    const ScanSet base = simulate_scan(quiet, 221e-9, pair, sphere, gold);
    double ss = 0.0;
    for (std::size_t j = 0; j < noisy.mean_force.size(); ++j) {
      const double r = noisy.mean_force[j] - base.mean_force[j];
      ss += r * r;
    }
    const double observed = std::sqrt(ss / noisy.mean_force.size());
    const double expected = config.noise_sigma / std::sqrt(60.0);
    CHECK(std::fabs(observed / expected - 1.0) < 0.2);
  }

  SUBCASE("tilt correction restores the flat curve exactly") {
    ScanConfig tilted = quick_scan(0, 2, 150);
    tilted.tilt_slope = 1e-3;
    tilted.z_correction_enabled = true;
    const ScanSet corrected =
        simulate_scan(tilted, 221e-9, pair, sphere, gold);
    const ScanSet flat =
        simulate_scan(quick_scan(0, 2, 150), 221e-9, pair, sphere, gold);
    for (std::size_t j = 0; j < flat.mean_force.size(); ++j) {
      CHECK(corrected.mean_force[j] == flat.mean_force[j]);
    }

    tilted.z_correction_enabled = false;
    const ScanSet drifting =
        simulate_scan(tilted, 221e-9, pair, sphere, gold);
    const double amp_flat =
        fit_sine(flat.displacements, flat.mean_force, pair.period).amplitude;
    const double amp_drift =
        fit_sine(drifting.displacements, drifting.mean_force, pair.period)
            .amplitude;
    CHECK(rel_diff(amp_flat, amp_drift) > 1e-4);
  }

  SUBCASE("tilt drift into the surface names the offending step") {
    ScanConfig config = quick_scan(0, 1, 4000);
    config.tilt_slope = -5e-3;  // 12 um of travel erases 60 nm of gap
    config.z_correction_enabled = false;
    try {
      simulate_scan(config, 221e-9, pair, sphere, gold);
      FAIL("expected GeometryError");
    } catch (const GeometryError& e) {
      CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
  }

  SUBCASE("config validation") {
    ScanConfig bad;
    bad.step = 0.0;
    CHECK_THROWS_AS(simulate_scan(bad, 221e-9, pair, sphere, gold),
                    ValidationError);
    bad = ScanConfig{};
    bad.n_scans = 0;
    CHECK_THROWS_AS(simulate_scan(bad, 221e-9, pair, sphere, gold),
                    ValidationError);
    bad = ScanConfig{};
    bad.noise_sigma = -1.0;
    CHECK_THROWS_AS(simulate_scan(bad, 221e-9, pair, sphere, gold),
                    ValidationError);
    CHECK_THROWS_AS(simulate_scan(ScanConfig{}, 50e-9, pair, sphere, gold),
                    GeometryError);
  }
}

TEST_CASE("sine fitting") {
  SUBCASE("recovers a pure sine sampled in 0.46 nm steps") {
    const double period = 1.2e-6;
    const double amplitude = 3.2e-13;
    std::vector<double> xs, ys;
    for (int i = 0; i < 5219; ++i) {
      xs.push_back(i * 0.46e-9);
      ys.push_back(amplitude * std::sin(kTwoPi * xs.back() / period));
    }
    const SineFit fit = fit_sine(xs, ys, period);
    CHECK(rel_diff(fit.amplitude, amplitude) < 1e-9);
    CHECK(std::fabs(fit.offset) < 1e-9 * amplitude);
    CHECK(std::fabs(fit.phase) < 1e-9);
    CHECK(fit.rms_residual < 1e-12 * amplitude);
  }

  SUBCASE("exact on any sinusoid plus offset") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double period = 1.2e-6;
    for (int rep = 0; rep < 200; ++rep) {
      const double a = 2.0 * unit(rng) - 1.0;
      const double b = 2.0 * unit(rng) - 1.0;
      const double c = 2.0 * unit(rng) - 1.0;
      const int n = 3 + static_cast<int>(unit(rng) * 40);
      std::vector<double> xs, ys;
      for (int i = 0; i < n; ++i) {
        xs.push_back(period * 3.0 * unit(rng));
        const double theta = kTwoPi * xs.back() / period;
        ys.push_back(a * std::sin(theta) + b * std::cos(theta) + c);
      }
      SineFit fit;
      try {
        fit = fit_sine(xs, ys, period);
      } catch (const FitError&) {
        continue;  // degenerate random draw
      }
      const double scale = std::max(std::hypot(a, b), 1e-6);
      CHECK(std::fabs(fit.amplitude - std::hypot(a, b)) < 1e-9 * scale);
      CHECK(fit.rms_residual < 1e-12);
    }
  }

  SUBCASE("constant input") {
    std::vector<double> xs = {0.0, 1e-7, 2e-7, 3e-7, 5e-7};
    std::vector<double> ys(xs.size(), 2.5e-13);
    const SineFit fit = fit_sine(xs, ys, 1.2e-6);
    CHECK(fit.amplitude < 1e-25);
    CHECK(rel_diff(fit.offset, 2.5e-13) < 1e-12);
  }

  SUBCASE("degenerate designs throw") {
    std::vector<double> xs = {0.0, 1e-7};
    std::vector<double> ys = {0.0, 1.0};
    CHECK_THROWS_AS(fit_sine(xs, ys, 1.2e-6), FitError);

    // All abscissae congruent modulo half a period: sine and cosine
    // columns are proportional.
    const double period = 1.2e-6;
    std::vector<double> bad_x, bad_y;
    for (int i = 0; i < 8; ++i) {
      bad_x.push_back(0.2e-6 + i * period / 2.0);
      bad_y.push_back(static_cast<double>(i));
    }
    CHECK_THROWS_AS(fit_sine(bad_x, bad_y, period), FitError);
  }
}

TEST_CASE("separation inversion") {
  const SphereGeometry sphere = testing::reference_sphere();
  const Material gold = testing::gold();
  const CorrugationPair pair = testing::reference_pair(0.0);

  SUBCASE("reference amplitudes") {
    const double z32 = invert_separation(3.2e-13, pair, sphere, gold);
    CHECK(std::fabs(z32 - kInvertOf32) < 0.02e-9);
    CHECK(z32 > 219e-9);
    CHECK(z32 < 223e-9);
    const double z26 = invert_separation(2.6e-13, pair, sphere, gold);
    CHECK(std::fabs(z26 - kInvertOf26) < 0.02e-9);
    CHECK(z26 > 231e-9);
    CHECK(z26 < 235e-9);
  }

  SUBCASE("round-trips the amplitude curve to 0.01 nm") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> zdist(200e-9, 400e-9);
    for (int i = 0; i < 20; ++i) {
      const double z = zdist(rng);
      const double amp = lateral_amplitude(z, pair, sphere, gold).amplitude;
      CHECK(std::fabs(invert_separation(amp, pair, sphere, gold) - z) <=
            0.01e-9);
    }
  }

  SUBCASE("unattainable amplitudes") {
    CHECK_THROWS_AS(invert_separation(1.0, pair, sphere, gold), FitError);
    CHECK_THROWS_AS(invert_separation(1e-22, pair, sphere, gold), FitError);
    CHECK_THROWS_AS(invert_separation(-1e-13, pair, sphere, gold),
                    ValidationError);
  }
}

TEST_CASE("power-law fitting") {
  SUBCASE("exact quartic decay") {
    std::vector<double> zs, amps;
    for (int i = 0; i < 6; ++i) {
      zs.push_back(200e-9 + 20e-9 * i);
      amps.push_back(3e-13 * std::pow(221e-9 / zs.back(), 4.0));
    }
    const PowerLawFit fit = fit_power_law(zs, amps);
    CHECK(std::fabs(fit.slope - 4.0) < 1e-10);
    CHECK(fit.slope_stderr < 1e-10);
  }

  SUBCASE("exact inverse-square decay") {
    std::vector<double> zs, amps;
    for (int i = 0; i < 6; ++i) {
      zs.push_back(200e-9 + 20e-9 * i);
      amps.push_back(1e-9 * std::pow(221e-9 / zs.back(), 2.0));
    }
    CHECK(std::fabs(fit_power_law(zs, amps).slope - 2.0) < 1e-10);
  }

  SUBCASE("two points define the line with zero stderr") {
    std::vector<double> zs = {200e-9, 300e-9};
    std::vector<double> amps = {4e-13, 4e-13 * std::pow(2.0 / 3.0, 4.0)};
    const PowerLawFit fit = fit_power_law(zs, amps);
    CHECK(std::fabs(fit.slope - 4.0) < 1e-10);
    CHECK(fit.slope_stderr == 0.0);
  }

  SUBCASE("closed-form amplitudes across the reference separations") {
    const SphereGeometry sphere = testing::reference_sphere();
    const Material gold = testing::gold();
    const CorrugationPair pair = testing::reference_pair(0.0);
    std::vector<double> zs = {221e-9, 233e-9, 245e-9, 257e-9};
    std::vector<double> amps;
    for (double z : zs) {
      amps.push_back(lateral_amplitude(z, pair, sphere, gold).amplitude);
    }
    const PowerLawFit fit = fit_power_law(zs, amps);
    CHECK(std::fabs(fit.slope - kSlopeReference) < 1e-4);
    CHECK(fit.slope >= 3.9);
    CHECK(fit.slope <= 4.3);
  }

  SUBCASE("errors") {
    std::vector<double> one_z = {200e-9};
    std::vector<double> one_a = {1e-13};
    CHECK_THROWS_AS(fit_power_law(one_z, one_a), FitError);
    std::vector<double> zs = {200e-9, 300e-9};
    std::vector<double> bad = {1e-13, -1e-13};
    CHECK_THROWS_AS(fit_power_law(zs, bad), ValidationError);
    std::vector<double> same = {200e-9, 200e-9};
    std::vector<double> amps = {1e-13, 2e-13};
    CHECK_THROWS_AS(fit_power_law(same, amps), FitError);
  }
}

TEST_CASE("confidence interval") {
  SUBCASE("reference arithmetic") {
    // 60 amplitudes alternating around the mean, spaced so the standard
    // error of the mean is exactly 0.15e-13.
    const double mean = 3.2e-13;
    const double d = 0.15e-13 * std::sqrt(59.0);
    std::vector<double> amplitudes;
    for (int i = 0; i < 30; ++i) {
      amplitudes.push_back(mean + d);
      amplitudes.push_back(mean - d);
    }
    const ConfidenceInterval ci = confidence_interval(amplitudes, 0.05, 2.0);
    CHECK(rel_diff(ci.mean_amplitude, mean) < 1e-12);
    CHECK(rel_diff(ci.sigma_mean, 0.15e-13) < 1e-12);
    CHECK(rel_diff(ci.systematic, 0.16e-13) < 1e-12);
    CHECK(rel_diff(ci.delta_total, 0.46e-13) < 1e-12);
    CHECK(ci.confidence_level == 0.95);

    const ConfidenceInterval direct =
        confidence_from_stats(3.2e-13, 0.15e-13, 0.05, 2.0);
    CHECK(rel_diff(direct.systematic, 0.16e-13) < 1e-15);
    CHECK(rel_diff(direct.delta_total, 0.46e-13) < 1e-15);
  }

  SUBCASE("degenerate combinations") {
    std::vector<double> equal(10, 2e-13);
    const ConfidenceInterval ci = confidence_interval(equal, 0.05, 2.0);
    CHECK(ci.sigma_mean == 0.0);
    CHECK(ci.delta_total == ci.systematic);

    std::vector<double> spread = {1e-13, 2e-13, 3e-13};
    const ConfidenceInterval no_sys = confidence_interval(spread, 0.0, 1.7);
    CHECK(no_sys.systematic == 0.0);
    CHECK(rel_diff(no_sys.delta_total, 1.7 * no_sys.sigma_mean) < 1e-15);
  }

  SUBCASE("errors") {
    std::vector<double> one = {1e-13};
    CHECK_THROWS_AS(confidence_interval(one, 0.05, 2.0), FitError);
    std::vector<double> two = {1e-13, 2e-13};
    CHECK_THROWS_AS(confidence_interval(two, -0.1, 2.0), ValidationError);
  }
}

TEST_CASE("pipeline composition") {
  const SphereGeometry sphere = testing::reference_sphere();
  const Material gold = testing::gold();
  const CorrugationPair pair = testing::reference_pair(0.0);

  SUBCASE("noiseless scan fit lands on the amplitude curve") {
    ScanConfig config;  // full resolution
    config.noise_sigma = 0.0;
    const ScanSet scan = simulate_scan(config, 221e-9, pair, sphere, gold);
    const SineFit fit =
        fit_sine(scan.displacements, scan.mean_force, pair.period);
    const double amp = lateral_amplitude(221e-9, pair, sphere, gold)
                           .amplitude;
    CHECK(rel_diff(fit.amplitude, amp) < 0.02);
    // And the fitted amplitude inverts back to the configured separation.
    const double inverted =
        invert_separation(fit.amplitude, pair, sphere, gold);
    CHECK(std::fabs(inverted - 221e-9) < 2e-9);
  }

  SUBCASE("per-scan amplitudes are identical without noise") {
    const ScanSet scan =
        simulate_scan(quick_scan(5, 6, 220), 221e-9, pair, sphere, gold);
    const std::vector<double> amps = per_scan_amplitudes(scan, pair.period);
    REQUIRE(amps.size() == 6);
    for (double a : amps) CHECK(a == amps.front());
  }

  SUBCASE("fitted-amplitude spread scales as 1 / sqrt(n_scans)") {
    const auto spread = [&](int n_scans) {
      std::vector<double> amps;
      for (int rep = 0; rep < 100; ++rep) {
        const ScanSet scan = simulate_scan(
            quick_scan(1000 + rep, n_scans, 200, 4e-13), 221e-9, pair,
            sphere, gold);
        amps.push_back(
            fit_sine(scan.displacements, scan.mean_force, pair.period)
                .amplitude);
      }
      double mean = 0.0;
      for (double a : amps) mean += a;
      mean /= amps.size();
      double ss = 0.0;
      for (double a : amps) ss += (a - mean) * (a - mean);
      return std::sqrt(ss / (amps.size() - 1.0));
    };
    const double wide = spread(15);
    const double narrow = spread(60);
    CHECK(std::fabs(wide / narrow - 2.0) < 0.5);  // sqrt(60/15) = 2, 25%
  }
}
