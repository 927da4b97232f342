#pragma once

#include <Eigen/Dense>
#include <utility>

#include "slspec/free_solutions.hpp"

namespace slspec {

enum class SolutionKind { Regular, IrregularW, IrregularV };

/// Samples of a solution ψ of -ψ'' + (l(l+1)/x² + q)ψ = λψ on a strictly
/// increasing grid in (0, 1]. Second derivatives come from the equation itself,
/// so off-grid evaluation uses quintic Hermite interpolation.
struct SolutionField {
  SolutionKind kind = SolutionKind::Regular;
  Order l;
  SpectralParameter lam;

  Eigen::VectorXd grid;
  Eigen::VectorXcd values;
  Eigen::VectorXcd derivatives;
  Eigen::VectorXcd second_derivatives;

  /// Max relative residual of the equation at the quadrature nodes.
  double residual_estimate = 0.0;
  int picard_iterations = 0;
  /// Relative sup-norm change of the last Picard step.
  double picard_increment = 0.0;

  Eigen::Index size() const noexcept { return grid.size(); }
  double x_min() const { return grid[0]; }
  double x_max() const { return grid[grid.size() - 1]; }

  /// (ψ(x), ψ'(x)); exact on grid points, interpolated elsewhere.
  /// Throws UsageError outside [x_min, x_max].
  std::pair<cplx, cplx> cauchy_at(double x) const;
  cplx value_at(double x) const { return cauchy_at(x).first; }
  cplx derivative_at(double x) const { return cauchy_at(x).second; }

  /// Sign changes of Re ψ along the grid (interior zeros for real λ).
  int sign_changes() const;
};

std::string_view to_string(SolutionKind k);

}  // namespace slspec
