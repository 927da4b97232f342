#pragma once

// Volterra construction of the regular solution φ and the irregular solution
// ψ̃ of  -y'' + (l(l+1)/x² + q(x)) y = λ y  on (0, 1].
//
//   φ(x) = u(x) + ∫₀ˣ K(x,t) q(t) φ(t) dt
//   ψ̃(x) = f(x) - ∫ₓ¹ K(x,t) q(t) ψ̃(t) dt,   f = w (corrected) or v (original)
//
// with the variation-of-parameters kernel K(x,t) = v(x)u(t) - u(x)v(t).
// Because the integral term of ψ̃ and its x-derivative vanish at x = 1, the
// continuation of ψ̃ to x > 1 (where q = 0) is f itself.

#include <vector>

#include "slspec/potential.hpp"
#include "slspec/solution_field.hpp"

namespace slspec {

enum class InhomKind { WCorrected, VOriginal };

std::string_view to_string(InhomKind k);

/// Cell layout for the Nyström discretization.
struct MeshSpec {
  /// Number of base cells; 0 picks it from |λ| and max|q| and enables
  /// automatic refinement until the residual tolerance is met.
  int cells = 0;
  int min_cells = 48;
  /// Upper bound on h·sqrt(|λ| + max|q|) for automatically sized cells.
  double max_phase_per_cell = 0.25;
  /// Regular-solution mesh x_j = (j/N)^grading.
  double grading = 2.0;
  /// Left end of irregular-solution grids.
  double x_min = 1e-3;
  /// Cells [a,b] with b/a above this are split geometrically; automatic
  /// refinement takes its square root at each step.
  double max_cell_ratio = 1.05;
  int nodes_per_cell = 8;
  /// Points that must appear on the output grid.
  std::vector<double> breakpoints;
};

struct SolverOptions {
  double tol_picard = 1e-12;
  double tol_residual = 1e-8;
  int max_iters = 200;
};

/// K(x,t) = v(x)u(t) - u(x)v(t). K(x,x) = 0 and ∂ₜK(x,t)|_{t=x} = -1.
/// Throws DomainError at λ = 0 (v_free is not defined there).
cplx cauchy_kernel(Order l, double x, double t, const SpectralParameter& lam);

SolutionField regular_solution(const Potential& q, Order l, const SpectralParameter& lam,
                               const MeshSpec& mesh = {}, const SolverOptions& opts = {});

SolutionField irregular_solution(const Potential& q, Order l, const SpectralParameter& lam,
                                 InhomKind inhom, const MeshSpec& mesh = {},
                                 const SolverOptions& opts = {});

namespace detail {

/// Sign s in ψ̃ = f + s ∫ₓ¹ K q ψ̃. Only s = -1 produces solutions of the
/// equation; the tests pin this by solving with both signs.
inline constexpr int kIrregularVolterraSign = -1;

SolutionField irregular_solution_signed(const Potential& q, Order l, const SpectralParameter& lam,
                                        InhomKind inhom, int sign, const MeshSpec& mesh,
                                        const SolverOptions& opts);

std::vector<double> regular_mesh(const Potential& q, const SpectralParameter& lam, const MeshSpec& spec,
                                 int cells);
std::vector<double> irregular_mesh(const Potential& q, const SpectralParameter& lam,
                                   const MeshSpec& spec, int cells);
int automatic_cells(const Potential& q, const SpectralParameter& lam, const MeshSpec& spec, bool graded);

}  // namespace detail

}  // namespace slspec
