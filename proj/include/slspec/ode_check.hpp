#pragma once

#include "slspec/potential.hpp"
#include "slspec/solution_field.hpp"

namespace slspec {

struct OdeCheckOptions {
  /// Scaled by the size of the starting Cauchy data when that is below 1.
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
};

/// Re-integrates the equation as a first-order system with an adaptive
/// Runge-Kutta-Fehlberg 7(8) stepper, starting from the field's own Cauchy
/// data (smallest grid point for regular fields, x = 1 otherwise), and returns
/// the larger of max|Δψ|/max|ψ| and max|Δψ'|/max|ψ'| over the grid.
/// Throws IntegratorError if the stepper stalls.
double ode_cross_check(const Potential& q, Order l, const SolutionField& field, const OdeCheckOptions& opts = {});

}  // namespace slspec
