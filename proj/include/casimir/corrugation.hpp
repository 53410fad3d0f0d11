#pragma once

namespace casimir {

// Two aligned uniaxial sinusoidal corrugation profiles:
//   lower plate   z1(x) = A1 sin(2 pi x / period)
//   upper surface z2(x) = z + A2 sin(2 pi x / period + phase)
// All lengths in meters, phase in radians.  The phase is reduced into
// [0, 2 pi) on construction; the mean separation must exceed A1 + A2 so the
// surfaces can never touch.
struct CorrugationPair {
  double period = 0.0;            // m
  double amplitude_plate = 0.0;   // A1, m
  double amplitude_sphere = 0.0;  // A2, m
  double phase = 0.0;             // rad, in [0, 2 pi)
  double mean_separation = 0.0;   // z, m

  CorrugationPair(double period, double amplitude_plate,
                  double amplitude_sphere, double phase,
                  double mean_separation);
};

// Single-cosine reduction of the separation profile:
//   z2(x) - z1(x) = z + b cos(2 pi x / period - alpha).
struct EffectiveCorrugation {
  double amplitude = 0.0;  // b, m
  double alpha = 0.0;      // rad, in (-pi, pi]
  double beta = 0.0;       // b / z, dimensionless
};

// Reduces an arbitrary real angle into [0, 2 pi).
double reduce_phase(double phi);

// b(phi) = sqrt(A1^2 + A2^2 - 2 A1 A2 cos(phi)).
double effective_amplitude(double a1, double a2, double phi);

// The angle alpha satisfying b cos(alpha) = A2 sin(phi) and
// b sin(alpha) = A2 cos(phi) - A1.  The two-argument arctangent fixes the
// quadrant; the raw tangent ratio is branch-ambiguous and singular at
// sin(phi) = 0.  Zero by convention when b vanishes.
double effective_alpha(double a1, double a2, double phi);

double profile_lower(double x, const CorrugationPair& pair);
double profile_upper(double x, const CorrugationPair& pair);

// Throws GeometryError when b >= z, which the constructor invariant rules
// out but mutated instances may violate.
EffectiveCorrugation effective_params(const CorrugationPair& pair);

// Normal separation z + b cos(2 pi x / period - alpha); identical to
// profile_upper(x) - profile_lower(x).
double separation(double x, const CorrugationPair& pair);

// Copy of `pair` with a different phase (reduced on construction).
CorrugationPair with_phase(const CorrugationPair& pair, double phi);

}  // namespace casimir
