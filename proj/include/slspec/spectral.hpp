#pragma once

#include <array>
#include <vector>

#include "slspec/contour.hpp"
#include "slspec/volterra.hpp"

namespace slspec {

/// Solver settings shared by the spectral operations.
struct SpectralOptions {
  MeshSpec mesh;
  SolverOptions solver;
  /// Relative width of the final eigenvalue bracket.
  double tol_eig = 1e-10;
  WindingOptions winding;
};

/// Independence is certified when |W(φ,ψ̃)| and |Im flux| both exceed this.
inline constexpr double kCertThreshold = 1e-8;

/// Dirichlet eigenvalues μ₁ < μ₂ < ... (zeros of λ ↦ φ(1,λ)).
struct EigenvalueList {
  std::vector<double> values;
  /// |φ(1, μ_n)|
  std::vector<double> residuals;
  std::vector<double> bracket_widths;
};

struct IndependenceReport {
  double lambda0 = 0.0;
  /// W(φ, ψ̃_w) at x = 0.5.
  cplx wronskian{0.0};
  cplx flux{0.0};
  bool certified = false;
  /// W at x = 0.2, 0.5, 0.9 and their max relative deviation from the middle one.
  std::array<cplx, 3> wronskian_samples{};
  double wronskian_spread = 0.0;
};

struct ShiftResult {
  Potential potential;
  double shift = 0.0;
};

struct BoundRow {
  double x = 0.0;
  /// max over r of |ψ̃_w(x, λ)| / exp(|Im √λ| (2 - x))
  double max_ratio = 0.0;
  /// Least-squares slope of log|ψ̃_w(x, λ)| against |Im √λ|.
  double slope = 0.0;
  double slope_bound = 0.0;
  bool within_bound = false;
};

struct BoundReport {
  double ray_angle = 0.0;
  std::vector<double> radii;
  std::vector<BoundRow> rows;
  /// ratios[i][j] for x_grid[i] and radii[j]; NaN where the solve failed.
  std::vector<std::vector<double>> ratios;
  std::vector<double> failed_radii;
};

/// W(f,g)(x) = f g' - f' g. Throws UsageError unless both fields share λ and l.
cplx wronskian(const SolutionField& f, const SolutionField& g, double x);

/// Throws PartialResultError when fewer than n_max roots lie below search_cap.
EigenvalueList dirichlet_eigenvalues(const Potential& q, Order l, int n_max, double search_cap,
                                     const SpectralOptions& opts = {});

/// -ψ̃'(R) conj(ψ̃(R)) + conj(ψ̃'(R)) ψ̃(R) for R >= 1, where ψ̃ continues past
/// x = 1 as its free inhomogeneous term. Equals -2i λ₀^{3/2} for the outgoing
/// term at l = 1 and 0 for the real singular term.
cplx flux(const Potential& q, Order l, double lambda0, double R, InhomKind inhom = InhomKind::WCorrected,
          const SpectralOptions& opts = {});

IndependenceReport independence_certificate(const Potential& q, Order l, double lambda0,
                                            const SpectralOptions& opts = {});

/// (q + c, c) with c = max(0, delta - μ₁(q)), so that μ₁(q + c) >= delta.
ShiftResult shift_to_positive(const Potential& q, Order l, double delta = 1.0, const SpectralOptions& opts = {});

/// F(λ) = W(φ, ψ̃)(1/2) for the chosen inhomogeneous term.
cplx wronskian_function(const Potential& q, Order l, cplx lambda, InhomKind inhom, const SpectralOptions& opts = {});

/// Zeros of F(λ) = W(φ, ψ̃)(1/2) inside the region. With the outgoing term F
/// jumps across the positive real axis, so counts for regions meeting it are
/// only meaningful when F is continuous there (e.g. q = 0).
WindingResult wronskian_zero_count(const Potential& q, Order l, const ContourRegion& region, InhomKind inhom,
                                   const SpectralOptions& opts = {});

/// Growth of ψ̃_w along the ray λ = r e^{iθ}, 1 <= r <= r_max (log-spaced).
BoundReport bound_check(const Potential& q, Order l, double ray_angle, double r_max, const std::vector<double>& x_grid,
                        int n_radii = 24, const SpectralOptions& opts = {});

}  // namespace slspec
