#pragma once

#include <array>

namespace casimir {

// Boundary metal characterized by its plasma wavelength, in meters.
// A zero plasma wavelength selects the ideal-metal limit.
struct Material {
  double plasma_wavelength = 0.0;  // m
};

// Validating factory; throws ValidationError on a negative or non-finite
// plasma wavelength.
Material make_material(double plasma_wavelength);

inline Material ideal_metal() { return Material{0.0}; }

// Zero-point energy per unit area between two flat ideal-metal plates a
// distance z apart, -pi^2 hbar c / (720 z^3).  Strictly negative.
double ideal_plate_energy(double z);

// Pressure between two flat ideal-metal plates, -pi^2 hbar c / (240 z^4);
// the negated z-derivative of ideal_plate_energy.
double ideal_plate_pressure(double z);

// Coefficients (c1, c2, c3, c4) of the finite-conductivity expansion in
// powers of lambda_p / (2 pi z).
std::array<double, 4> conductivity_coefficients();

// Corrected plate energy together with the accuracy indicator.  The
// expansion is stated to hold for z >= lambda_p; below that the value is
// still computed and the flag is set instead of erroring.
struct PlateEnergy {
  double value = 0.0;                    // J / m^2
  bool below_plasma_wavelength = false;  // z < lambda_p
};

// Energy per unit area between flat plates of the given material,
//   ideal_plate_energy(z) * [1 + sum_n c_n (lambda_p / 2 pi z)^n].
// Reduces exactly to the ideal-metal value when lambda_p vanishes.
PlateEnergy plate_energy(double z, const Material& material);

// Bare corrected energy density E_pp(s) at a local separation s, without
// the validity indicator.  Quadrature kernels call this once per node.
double plate_energy_value(double s, const Material& material);

// True when z is inside the stated accuracy range of the expansion.
bool within_conductivity_validity(double z, const Material& material);

}  // namespace casimir
