#pragma once

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "casimir/errors.hpp"

namespace casimir {

// Trapezoidal rule over one full period of a periodic integrand.  For
// analytic periodic integrands this converges spectrally, so node doubling
// settles after a refinement or two.
template <class F>
double periodic_trapezoid(F&& f, double period, int nodes) {
  const double h = period / nodes;
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) sum += f(i * h);
  return sum * h;
}

struct QuadratureOptions {
  int initial_nodes = 2048;
  int max_nodes = 1 << 21;
  double rel_tol = 1e-9;
};

// Integrates f over [0, period] assuming period-periodicity, doubling the
// node count until two successive estimates agree to rel_tol.  Throws
// NumericalError with diagnostics if max_nodes is reached first.
template <class F>
double converged_periodic_trapezoid(F&& f, double period,
                                    QuadratureOptions opts = {}) {
  int n = opts.initial_nodes;
  double estimate = periodic_trapezoid(f, period, n);
  while (n < opts.max_nodes) {
    // The refined grid reuses every existing node; only odd nodes are new.
    const double h = period / (2 * n);
    double odd_sum = 0.0;
    for (int i = 0; i < n; ++i) odd_sum += f((2 * i + 1) * h);
    const double refined = 0.5 * estimate + odd_sum * h;
    const double diff = std::fabs(refined - estimate);
    estimate = refined;
    n *= 2;
    if (diff <= opts.rel_tol * std::max(std::fabs(refined), 1e-300)) {
      return estimate;
    }
  }
  std::ostringstream msg;
  msg << "periodic quadrature did not converge: " << n
      << " nodes reached, estimate " << estimate;
  throw NumericalError(msg.str());
}

}  // namespace casimir
