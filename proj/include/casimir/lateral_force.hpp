#pragma once

#include <array>
#include <string>

#include "casimir/corrugation.hpp"
#include "casimir/plate_energy.hpp"

namespace casimir {

// Sphere replacing the upper plate.  The proximity-force conversion assumes
// the radius dwarfs both the separation and the corrugation period; results
// are flagged when R < 10 max(z, period).
struct SphereGeometry {
  double radius = 0.0;  // m
};

SphereGeometry make_sphere(double radius);

struct ValidityFlags {
  bool below_plasma_wavelength = false;  // z < lambda_p
  bool pft_marginal = false;             // R < 10 max(z, period)

  bool any() const { return below_plasma_wavelength || pft_marginal; }
  // Semicolon-joined flag names, empty when clean.
  std::string to_string() const;
};

ValidityFlags validity_flags(double z, double period,
                             const SphereGeometry& sphere,
                             const Material& material);

struct LateralForceResult {
  double force = 0.0;           // N
  double beta = 0.0;            // b(phase) / z
  double bracket_factor = 1.0;  // 1 + sum_n c_{n,x} (lambda_p / 2 pi z)^n
  ValidityFlags flags;
};

// Plate energy per unit area averaged over one corrugation period at mean
// separation z, evaluated by periodic quadrature of the single-cosine
// separation profile.  The pair supplies period, amplitudes and phase; z is
// passed explicitly so separation sweeps need not rebuild the pair.
double corrugated_energy(double z, const CorrugationPair& pair,
                         const Material& material);

// Normal sphere-plate force via the proximity-force conversion,
// 2 pi R times the corrugated plate energy.  Negative (attractive).
double normal_force_pft(double z, const CorrugationPair& pair,
                        const SphereGeometry& sphere,
                        const Material& material);

// Coefficients (c_{1,x} .. c_{4,x}) of the lateral-force conductivity
// bracket as functions of beta = b/z.  The overload taking explicit plate
// coefficients exists for diagnostics; the default uses
// conductivity_coefficients().
std::array<double, 4> lateral_coefficients(double beta);
std::array<double, 4> lateral_coefficients(
    double beta, const std::array<double, 4>& plate_coefficients);

// Closed-form lateral force between the corrugated sphere and plate,
//   pi^4 R hbar c / (120 z^4) * A1 A2 sin(phase) / (period (1-beta^2)^{5/2})
//     * [1 + sum_n c_{n,x} (lambda_p / 2 pi z)^n].
// Odd in the phase and zero at phase 0 and pi.
LateralForceResult lateral_force_closed(double z, const CorrugationPair& pair,
                                        const SphereGeometry& sphere,
                                        const Material& material);

// Sphere-plate interaction energy obtained by integrating the normal force
// from z to infinity.  The separation integral is taken analytically per
// power term; the remaining period integral uses periodic quadrature.  This
// is the quantity the numerical force route differentiates.
double sphere_plate_energy(double z, const CorrugationPair& pair,
                           const SphereGeometry& sphere,
                           const Material& material);

// Independent route to the lateral force: a phase derivative of
// sphere_plate_energy by central differences (step 1e-3 rad) with one
// Richardson extrapolation level.  Shares no algebra with the closed-form
// bracket, which makes it the reference the closed form is checked against.
double lateral_force_numeric(double z, const CorrugationPair& pair,
                             const SphereGeometry& sphere,
                             const Material& material);

struct LateralAmplitude {
  double amplitude = 0.0;   // N, peak magnitude over one phase period
  double phi_at_max = 0.0;  // rad
};

// Maximizes |lateral force| over phase in (0, pi) by golden-section search
// to 1e-6 rad.  pair.phase is ignored.  Requires z > A1 + A2.
LateralAmplitude lateral_amplitude(double z, const CorrugationPair& pair,
                                   const SphereGeometry& sphere,
                                   const Material& material);

}  // namespace casimir
