#include "casimir/scan_pipeline.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "casimir/errors.hpp"
#include "msg.hpp"
#include "solve3.hpp"

namespace casimir {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Box-Muller on explicit 53-bit uniforms.  std::normal_distribution is free
// to differ between standard libraries; this stream is the same everywhere
// for a given seed, which the byte-reproducibility contract relies on.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

void validate(const ScanConfig& config) {
  if (!(config.step > 0.0) || !std::isfinite(config.step)) {
    throw ValidationError(
        detail::msg("scan: step must be positive, got ", config.step));
  }
  if (config.n_steps < 0) {
    throw ValidationError(
        detail::msg("scan: step count must be nonnegative, got ",
                    config.n_steps));
  }
  if (config.n_scans < 1) {
    throw ValidationError(
        detail::msg("scan: need at least one scan, got ", config.n_scans));
  }
  if (!(config.noise_sigma >= 0.0) || !std::isfinite(config.noise_sigma)) {
    throw ValidationError(detail::msg(
        "scan: noise sigma must be nonnegative, got ", config.noise_sigma));
  }
  if (!std::isfinite(config.tilt_slope)) {
    throw ValidationError("scan: tilt slope must be finite");
  }
}

int resolved_step_count(const ScanConfig& config, double period) {
  if (config.n_steps > 0) return config.n_steps;
  // Cover two corrugation periods: (n - 1) * step >= 2 * period.
  return static_cast<int>(std::ceil(2.0 * period / config.step)) + 1;
}

ScanSet simulate_scan(const ScanConfig& config, double z,
                      const CorrugationPair& pair,
                      const SphereGeometry& sphere, const Material& material) {
  validate(config);
  if (!(z > pair.amplitude_plate + pair.amplitude_sphere)) {
    throw GeometryError(detail::msg(
        "simulate_scan: separation ", z,
        " must exceed the combined corrugation amplitudes ",
        pair.amplitude_plate + pair.amplitude_sphere));
  }
  const int n_steps = resolved_step_count(config, pair.period);

  ScanSet scan;
  scan.displacements.resize(n_steps);
  std::vector<double> base(n_steps);
  for (int j = 0; j < n_steps; ++j) {
    const double x0 = j * config.step;
    const double phi = kTwoPi * x0 / pair.period;
    const double z_eff =
        config.z_correction_enabled ? z : z + config.tilt_slope * x0;
    const double b = effective_amplitude(pair.amplitude_plate,
                                         pair.amplitude_sphere, phi);
    if (!(z_eff > b)) {
      throw GeometryError(detail::msg(
          "simulate_scan: tilt drift at step ", j, " (x = ", x0,
          ") brings the separation to ", z_eff,
          ", inside the effective corrugation amplitude ", b));
    }
    scan.displacements[j] = x0;
    base[j] =
        lateral_force_closed(z_eff, with_phase(pair, phi), sphere, material)
            .force;
  }

  scan.forces.assign(config.n_scans, base);
  if (config.noise_sigma > 0.0) {
    GaussianSampler noise(config.rng_seed);
    for (auto& row : scan.forces) {
      for (double& value : row) {
        value += config.noise_sigma * noise.next();
      }
    }
  }

  scan.mean_force.assign(n_steps, 0.0);
  for (const auto& row : scan.forces) {
    for (int j = 0; j < n_steps; ++j) scan.mean_force[j] += row[j];
  }
  for (double& value : scan.mean_force) {
    value /= static_cast<double>(config.n_scans);
  }
  return scan;
}

SineFit fit_sine(std::span<const double> displacements,
                 std::span<const double> force, double period) {
  if (displacements.size() != force.size()) {
    throw ValidationError("fit_sine: displacement and force sizes differ");
  }
  if (displacements.size() < 3) {
    throw FitError(detail::msg("fit_sine: need at least 3 samples, got ",
                               displacements.size()));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ValidationError(
        detail::msg("fit_sine: period must be positive, got ", period));
  }

  double ss = 0, sc = 0, s1 = 0, cc = 0, c1 = 0, sy = 0, cy = 0, y1 = 0;
  const std::size_t n = displacements.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = kTwoPi * displacements[i] / period;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double y = force[i];
    ss += s * s;
    sc += s * c;
    s1 += s;
    cc += c * c;
    c1 += c;
    sy += s * y;
    cy += c * y;
    y1 += y;
  }
  const auto coef = detail::solve3(
      {{{ss, sc, s1}, {sc, cc, c1}, {s1, c1, static_cast<double>(n)}}},
      {sy, cy, y1}, "fit_sine");

  SineFit fit;
  fit.amplitude = std::hypot(coef[0], coef[1]);
  fit.phase = (fit.amplitude > 0.0) ? std::atan2(coef[1], coef[0]) : 0.0;
  fit.offset = coef[2];

  double residual_ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = kTwoPi * displacements[i] / period;
    const double model =
        coef[0] * std::sin(theta) + coef[1] * std::cos(theta) + coef[2];
    const double r = model - force[i];
    residual_ss += r * r;
  }
  fit.rms_residual = std::sqrt(residual_ss / static_cast<double>(n));
  return fit;
}

std::vector<double> per_scan_amplitudes(const ScanSet& scan, double period) {
  std::vector<double> amplitudes;
  amplitudes.reserve(scan.forces.size());
  for (const auto& row : scan.forces) {
    amplitudes.push_back(fit_sine(scan.displacements, row, period).amplitude);
  }
  return amplitudes;
}

double invert_separation(double measured_amplitude,
                         const CorrugationPair& pair,
                         const SphereGeometry& sphere,
                         const Material& material) {
  if (!(measured_amplitude > 0.0) || !std::isfinite(measured_amplitude)) {
    throw ValidationError(detail::msg(
        "invert_separation: amplitude must be positive, got ",
        measured_amplitude));
  }
  const double combined = pair.amplitude_plate + pair.amplitude_sphere;
  double lo = combined + 1e-9;
  double hi = 2e-6;
  const auto amplitude_at = [&](double z) {
    return lateral_amplitude(z, pair, sphere, material).amplitude;
  };
  const double amp_lo = amplitude_at(lo);
  const double amp_hi = amplitude_at(hi);
  // The amplitude decreases monotonically with separation on this bracket.
  if (measured_amplitude > amp_lo || measured_amplitude < amp_hi) {
    throw FitError(detail::msg(
        "invert_separation: no solution, amplitude ", measured_amplitude,
        " lies outside the attainable range [", amp_hi, ", ", amp_lo, "]"));
  }
  while (hi - lo > 0.01e-9) {
    const double mid = 0.5 * (lo + hi);
    if (amplitude_at(mid) > measured_amplitude) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PowerLawFit fit_power_law(std::span<const double> separations,
                          std::span<const double> amplitudes) {
  if (separations.size() != amplitudes.size()) {
    throw ValidationError(
        "fit_power_law: separation and amplitude sizes differ");
  }
  const std::size_t n = separations.size();
  if (n < 2) {
    throw FitError(
        detail::msg("fit_power_law: need at least 2 points, got ", n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(separations[i] > 0.0) || !(amplitudes[i] > 0.0)) {
      throw ValidationError(detail::msg(
          "fit_power_law: inputs must be positive, got (", separations[i],
          ", ", amplitudes[i], ") at index ", i));
    }
  }

  double mx = 0, my = 0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(separations[i]);
    ys[i] = std::log(amplitudes[i]);
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) {
    throw FitError("fit_power_law: all separations coincide");
  }
  const double regression_slope = sxy / sxx;

  PowerLawFit fit;
  fit.slope = -regression_slope;  // positive decay exponent
  fit.intercept = my - regression_slope * mx;
  if (n > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ys[i] - (fit.intercept + regression_slope * xs[i]);
      ssr += r * r;
    }
    fit.slope_stderr =
        std::sqrt(ssr / (static_cast<double>(n) - 2.0) / sxx);
  }
  return fit;
}

ConfidenceInterval confidence_from_stats(double mean_amplitude,
                                         double sigma_mean,
                                         double systematic_fraction,
                                         double student_t,
                                         double confidence_level) {
  if (!(systematic_fraction >= 0.0)) {
    throw ValidationError(detail::msg(
        "confidence interval: systematic fraction must be nonnegative, got ",
        systematic_fraction));
  }
  ConfidenceInterval ci;
  ci.mean_amplitude = mean_amplitude;
  ci.sigma_mean = sigma_mean;
  ci.systematic = systematic_fraction * mean_amplitude;
  ci.student_t = student_t;
  ci.delta_total = student_t * sigma_mean + ci.systematic;
  ci.confidence_level = confidence_level;
  return ci;
}

ConfidenceInterval confidence_interval(
    std::span<const double> per_scan_amplitudes, double systematic_fraction,
    double student_t, double confidence_level) {
  const std::size_t n = per_scan_amplitudes.size();
  if (n < 2) {
    throw FitError(detail::msg(
        "confidence interval: insufficient data, need at least 2 "
        "amplitudes, got ",
        n));
  }
  double mean = 0.0;
  for (double a : per_scan_amplitudes) mean += a;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double a : per_scan_amplitudes) ss += (a - mean) * (a - mean);
  const double sample_std = std::sqrt(ss / (static_cast<double>(n) - 1.0));
  return confidence_from_stats(mean,
                               sample_std / std::sqrt(static_cast<double>(n)),
                               systematic_fraction, student_t,
                               confidence_level);
}

}  // namespace casimir
