#include "casimir/corrugation.hpp"

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "msg.hpp"

namespace casimir {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CorrugationPair::CorrugationPair(double period_in, double amplitude_plate_in,
                                 double amplitude_sphere_in, double phase_in,
                                 double mean_separation_in)
    : period(period_in),
      amplitude_plate(amplitude_plate_in),
      amplitude_sphere(amplitude_sphere_in),
      phase(reduce_phase(phase_in)),
      mean_separation(mean_separation_in) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ValidationError(
        detail::msg("corrugation: period must be positive, got ", period));
  }
  if (!(amplitude_plate >= 0.0) || !std::isfinite(amplitude_plate)) {
    throw ValidationError(detail::msg(
        "corrugation: plate amplitude must be nonnegative, got ",
        amplitude_plate));
  }
  if (!(amplitude_sphere >= 0.0) || !std::isfinite(amplitude_sphere)) {
    throw ValidationError(detail::msg(
        "corrugation: sphere amplitude must be nonnegative, got ",
        amplitude_sphere));
  }
  if (!std::isfinite(phase)) {
    throw ValidationError("corrugation: phase must be finite");
  }
  if (!(mean_separation > amplitude_plate + amplitude_sphere) ||
      !std::isfinite(mean_separation)) {
    throw GeometryError(detail::msg(
        "corrugation: mean separation ", mean_separation,
        " must exceed the combined amplitudes ",
        amplitude_plate + amplitude_sphere, " or the surfaces touch"));
  }
}

double reduce_phase(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod rounding at the seam
  return r;
}

double effective_amplitude(double a1, double a2, double phi) {
  const double b2 = a1 * a1 + a2 * a2 - 2.0 * a1 * a2 * std::cos(phi);
  return std::sqrt(std::max(b2, 0.0));
}

double effective_alpha(double a1, double a2, double phi) {
  const double num = a2 * std::cos(phi) - a1;  // b sin(alpha)
  const double den = a2 * std::sin(phi);       // b cos(alpha)
  if (num == 0.0 && den == 0.0) return 0.0;    // b = 0, alpha by convention
  return std::atan2(num, den);
}

double profile_lower(double x, const CorrugationPair& pair) {
  return pair.amplitude_plate * std::sin(kTwoPi * x / pair.period);
}

double profile_upper(double x, const CorrugationPair& pair) {
  return pair.mean_separation +
         pair.amplitude_sphere *
             std::sin(kTwoPi * x / pair.period + pair.phase);
}

EffectiveCorrugation effective_params(const CorrugationPair& pair) {
  const double b =
      effective_amplitude(pair.amplitude_plate, pair.amplitude_sphere,
                          pair.phase);
  if (b >= pair.mean_separation) {
    throw GeometryError(detail::msg(
        "corrugation: effective amplitude ", b,
        " reaches the mean separation ", pair.mean_separation,
        "; the surfaces would intersect"));
  }
  return {b,
          effective_alpha(pair.amplitude_plate, pair.amplitude_sphere,
                          pair.phase),
          b / pair.mean_separation};
}

double separation(double x, const CorrugationPair& pair) {
  const EffectiveCorrugation eff = effective_params(pair);
  return pair.mean_separation +
         eff.amplitude * std::cos(kTwoPi * x / pair.period - eff.alpha);
}

CorrugationPair with_phase(const CorrugationPair& pair, double phi) {
  return CorrugationPair(pair.period, pair.amplitude_plate,
                         pair.amplitude_sphere, phi, pair.mean_separation);
}

}  // namespace casimir
