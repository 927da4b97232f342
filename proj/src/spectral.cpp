#include "slspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "slspec/errors.hpp"

namespace slspec {

cplx wronskian(const SolutionField& f, const SolutionField& g, double x) {
  if (!(f.lam == g.lam)) throw UsageError("wronskian: fields have different λ");
  if (!(f.l == g.l)) throw UsageError("wronskian: fields have different l");
  const auto [fv, fd] = f.cauchy_at(x);
  const auto [gv, gd] = g.cauchy_at(x);
  return fv * gd - fd * gv;
}

namespace {

struct ShotResult {
  double end_value;
  int zeros;
};

ShotResult shoot(const Potential& q, Order l, double lambda, const SpectralOptions& opts) {
  const SolutionField phi = regular_solution(q, l, SpectralParameter(lambda), opts.mesh, opts.solver);
  return {phi.values[phi.size() - 1].real(), phi.sign_changes()};
}

// Illinois-modified regula falsi on a sign-change bracket, with a bisection
// step whenever two consecutive steps fail to halve the bracket.
std::pair<double, double> refine_root(const Potential& q, Order l, double a, double fa, double b, double fb,
                                      const SpectralOptions& bracket_opts) {
  // The automatic cell count grows with |λ|; a count that changed inside the
  // bracket would make λ ↦ φ(1, λ) jump and stall the secant steps.
  SpectralOptions opts = bracket_opts;
  if (opts.mesh.cells <= 0)
    opts.mesh.min_cells = std::max(detail::automatic_cells(q, SpectralParameter(a), opts.mesh, true),
                                   detail::automatic_cells(q, SpectralParameter(b), opts.mesh, true));
  int side = 0;
  double width_before = b - a;
  for (int it = 0; it < 300; ++it) {
    const double scale = std::max(1.0, std::abs(0.5 * (a + b)));
    if (b - a <= opts.tol_eig * scale) break;
    double c = (it % 2 == 1 && (b - a) > 0.5 * width_before) ? 0.5 * (a + b) : (a * fb - b * fa) / (fb - fa);
    if (it % 2 == 1) width_before = b - a;
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    const double fc = shoot(q, l, c, opts).end_value;
    if (fc == 0.0) return {c, 0.0};
    if ((fc < 0.0) == (fb < 0.0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
  }
  // The Illinois halving distorts fa/fb; re-evaluate for the final secant.
  fa = shoot(q, l, a, opts).end_value;
  fb = shoot(q, l, b, opts).end_value;
  double root = fb != fa ? (a * fb - b * fa) / (fb - fa) : 0.5 * (a + b);
  if (!(root >= a && root <= b)) root = 0.5 * (a + b);
  return {root, b - a};
}

}  // namespace

EigenvalueList dirichlet_eigenvalues(const Potential& q, Order l, int n_max, double search_cap,
                                     const SpectralOptions& opts) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  EigenvalueList out;
  // The free operator is nonnegative, so nothing lies below min q.
  double lo = q.min_value() - 1.0;
  ShotResult at_lo = shoot(q, l, lo, opts);
  for (int guard = 0; at_lo.zeros > 0 && guard < 60; ++guard) {
    lo -= std::max(1.0, std::abs(lo));
    at_lo = shoot(q, l, lo, opts);
  }
  if (at_lo.zeros > 0) throw AccuracyError("could not find a λ below the spectrum");

  double step = std::numbers::pi * std::numbers::pi;
  while (static_cast<int>(out.values.size()) < n_max) {
    if (lo >= search_cap)
      throw PartialResultError("found " + std::to_string(out.values.size()) + " of " + std::to_string(n_max) +
                                   " eigenvalues below search cap " + std::to_string(search_cap),
                               out.values);
    const double hi = std::min(lo + step, search_cap);
    const ShotResult at_hi = shoot(q, l, hi, opts);
    const int crossed = at_hi.zeros - at_lo.zeros;
    if (crossed > 1 || (crossed == 1 && (at_hi.end_value < 0.0) == (at_lo.end_value < 0.0))) {
      step *= 0.5;
      if (step < 1e-9 * std::max(1.0, std::abs(lo))) throw AccuracyError("eigenvalue bracket collapsed near " + std::to_string(lo));
      continue;
    }
    if (crossed == 1) {
      const auto [mu, width] = refine_root(q, l, lo, at_lo.end_value, hi, at_hi.end_value, opts);
      out.values.push_back(mu);
      out.bracket_widths.push_back(width);
      out.residuals.push_back(std::abs(shoot(q, l, mu, opts).end_value));
    }
    lo = hi;
    at_lo = at_hi;
    step = std::numbers::pi * std::numbers::pi * double(out.values.size() + 1);
  }
  return out;
}

cplx flux(const Potential& q, Order l, double lambda0, double R, InhomKind inhom, const SpectralOptions& opts) {
  if (!(lambda0 > 0.0)) throw DomainError("flux: lambda0 must be > 0");
  if (!(R >= 1.0)) throw DomainError("flux: R must be >= 1");
  const SpectralParameter lam(lambda0);
  const auto kind = inhom == InhomKind::WCorrected ? FreeSolutionKind::WOutgoing : FreeSolutionKind::VSingular;
  // The extension past x = 1 is f only if the solved field matches f there.
  const SolutionField field = irregular_solution(q, l, lam, inhom, opts.mesh, opts.solver);
  const auto at_one = free_solution(kind, l, 1.0, lam);
  const Eigen::Index last = field.size() - 1;
  if (field.values[last] != at_one.value || field.derivatives[last] != at_one.derivative)
    throw AccuracyError("irregular solution is not anchored to its free term at x = 1");
  const auto f = free_solution(kind, l, R, lam);
  return -f.derivative * std::conj(f.value) + std::conj(f.derivative) * f.value;
}

IndependenceReport independence_certificate(const Potential& q, Order l, double lambda0,
                                            const SpectralOptions& opts) {
  if (!(lambda0 > 0.0)) throw DomainError("independence_certificate: lambda0 must be > 0");
  constexpr std::array<double, 3> xs{0.2, 0.5, 0.9};
  SpectralOptions local = opts;
  local.mesh.breakpoints.insert(local.mesh.breakpoints.end(), xs.begin(), xs.end());
  const SpectralParameter lam(lambda0);
  const SolutionField phi = regular_solution(q, l, lam, local.mesh, local.solver);
  const SolutionField psi = irregular_solution(q, l, lam, InhomKind::WCorrected, local.mesh, local.solver);

  IndependenceReport r;
  r.lambda0 = lambda0;
  for (std::size_t i = 0; i < xs.size(); ++i) r.wronskian_samples[i] = wronskian(phi, psi, xs[i]);
  r.wronskian = r.wronskian_samples[1];
  for (const cplx w : r.wronskian_samples)
    r.wronskian_spread = std::max(r.wronskian_spread, std::abs(w - r.wronskian) / std::abs(r.wronskian));
  r.flux = flux(q, l, lambda0, 1.0, InhomKind::WCorrected, opts);
  r.certified = std::abs(r.wronskian) > kCertThreshold && std::abs(r.flux.imag()) > kCertThreshold;
  return r;
}

ShiftResult shift_to_positive(const Potential& q, Order l, double delta, const SpectralOptions& opts) {
  const double cap = q.max_abs() + 1e4;
  const double mu1 = dirichlet_eigenvalues(q, l, 1, cap, opts).values.front();
  // μ₁ is only known to tol_eig; a potential that already satisfies the bound
  // within that accuracy is left alone.
  const double slack = 10.0 * opts.tol_eig * std::max(1.0, std::abs(delta));
  const double c = mu1 < delta - slack ? delta - mu1 : 0.0;
  return {c == 0.0 ? q : q.shifted(c), c};
}

cplx wronskian_function(const Potential& q, Order l, cplx lambda, InhomKind inhom, const SpectralOptions& opts) {
  SpectralOptions local = opts;
  local.mesh.breakpoints.push_back(0.5);
  const SpectralParameter lam(lambda);
  const SolutionField phi = regular_solution(q, l, lam, local.mesh, local.solver);
  const SolutionField psi = irregular_solution(q, l, lam, inhom, local.mesh, local.solver);
  return wronskian(phi, psi, 0.5);
}

WindingResult wronskian_zero_count(const Potential& q, Order l, const ContourRegion& region, InhomKind inhom,
                                   const SpectralOptions& opts) {
  region.validate();
  // λ = 0 has no irregular solution.
  const bool zero_on_re_edge = (region.re_min == 0.0 || region.re_max == 0.0) && region.im_min <= 0.0 && region.im_max >= 0.0;
  const bool zero_on_im_edge = (region.im_min == 0.0 || region.im_max == 0.0) && region.re_min <= 0.0 && region.re_max >= 0.0;
  if (zero_on_re_edge || zero_on_im_edge) throw ContourDegeneracyError("contour passes through λ = 0; shift the region");
  return winding_number([&](cplx lambda) { return wronskian_function(q, l, lambda, inhom, opts); }, region,
                        opts.winding);
}

BoundReport bound_check(const Potential& q, Order l, double ray_angle, double r_max, const std::vector<double>& x_grid,
                        int n_radii, const SpectralOptions& opts) {
  if (!(ray_angle > 0.0 && ray_angle < 2.0 * std::numbers::pi))
    throw DomainError("bound_check: ray_angle must lie in (0, 2π)");
  if (!(r_max > 1.0)) throw DomainError("bound_check: r_max must exceed 1");
  if (n_radii < 3) throw ValidationError("bound_check: need at least 3 radii");
  if (x_grid.empty()) throw ValidationError("bound_check: x_grid is empty");

  BoundReport rep;
  rep.ray_angle = ray_angle;
  for (int j = 0; j < n_radii; ++j) rep.radii.push_back(std::pow(r_max, double(j) / (n_radii - 1)));
  rep.ratios.assign(x_grid.size(), std::vector<double>(rep.radii.size(), std::numeric_limits<double>::quiet_NaN()));
  std::vector<std::vector<double>> logs(x_grid.size());
  std::vector<double> growth;

  SpectralOptions local = opts;
  local.mesh.breakpoints.insert(local.mesh.breakpoints.end(), x_grid.begin(), x_grid.end());
  for (std::size_t j = 0; j < rep.radii.size(); ++j) {
    const SpectralParameter lam(std::polar(rep.radii[j], ray_angle));
    const double s = std::abs(lam.sqrt_lambda().imag());
    try {
      const SolutionField psi = irregular_solution(q, l, lam, InhomKind::WCorrected, local.mesh, local.solver);
      growth.push_back(s);
      for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double mag = std::abs(psi.value_at(x_grid[i]));
        rep.ratios[i][j] = mag / std::exp(s * (2.0 - x_grid[i]));
        logs[i].push_back(std::log(mag));
      }
    } catch (const ConvergenceError&) {
      rep.failed_radii.push_back(rep.radii[j]);
    }
  }

  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    BoundRow row;
    row.x = x_grid[i];
    row.slope_bound = 2.0 - x_grid[i];
    for (double r : rep.ratios[i])
      if (std::isfinite(r)) row.max_ratio = std::max(row.max_ratio, r);
    const auto n = static_cast<double>(growth.size());
    if (growth.size() >= 2) {
      double ms = 0.0, ml = 0.0;
      for (std::size_t k = 0; k < growth.size(); ++k) {
        ms += growth[k];
        ml += logs[i][k];
      }
      ms /= n;
      ml /= n;
      double sxy = 0.0, sxx = 0.0;
      for (std::size_t k = 0; k < growth.size(); ++k) {
        sxy += (growth[k] - ms) * (logs[i][k] - ml);
        sxx += (growth[k] - ms) * (growth[k] - ms);
      }
      row.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    }
    row.within_bound = growth.size() >= 2 && row.slope <= row.slope_bound + 0.05;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace slspec
