#pragma once

namespace casimir {

// SI values shared by every formula in the library. Only the product
// hbar*c ever appears, so it is stored as one number.
struct PhysicalConstants {
  static constexpr double hbar_c = 3.16152677e-26;     // J m
  static constexpr double epsilon0 = 8.8541878128e-12;  // F / m
};

}  // namespace casimir
