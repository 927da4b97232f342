#include "slspec/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slspec/errors.hpp"
#include "slspec/quadrature.hpp"

namespace slspec {

std::string_view to_string(InhomKind k) {
  return k == InhomKind::WCorrected ? "w" : "v";
}

cplx cauchy_kernel(Order l, double x, double t, const SpectralParameter& lam) {
  const auto ux = u_free(l, x, lam), ut = u_free(l, t, lam);
  const auto vx = v_free(l, x, lam), vt = v_free(l, t, lam);
  return vx.value * ut.value - ux.value * vt.value;
}

namespace {

// The kernel is written as K(x,t) = (b(x)a(t) - a(x)b(t)) / W(a,b) for a pair
// of free solutions (a,b). Near the origin (a,b) = (u,v); once |x√λ| passes
// kHankelSwitch the pair switches to (w⁺, w⁻), whose products do not suffer
// the e^{2|Im √λ| t} cancellation that (u,v) has for complex λ.
double hankel_switch(Order l) { return std::max(1.0, double(l.value())); }

struct Basis {
  cplx a, ap, b, bp;
};

Basis basis_at(bool hankel, Order l, double x, const SpectralParameter& lam) {
  if (!hankel) {
    const auto u = u_free(l, x, lam);
    const auto v = detail::v_free_entire(l, x, lam);
    return {u.value, u.derivative, v.value, v.derivative};
  }
  const cplx k = lam.sqrt_lambda();
  const auto hp = rb_h_plus(l, k * x);
  const auto hm = rb_h_minus(l, k * x);
  return {hp.value, k * hp.derivative, hm.value, k * hm.derivative};
}

cplx basis_wronskian(bool hankel, const SpectralParameter& lam) {
  return hankel ? cplx(0.0, -2.0) * lam.sqrt_lambda() : cplx(1.0);
}

struct Cell {
  double lo, hi;
  bool hankel;
  cplx omega;
  Basis entry, exit;
  Eigen::Index first;
};

enum class FreeTerm { U, V, W };

FreeValue free_term(FreeTerm t, Order l, double x, const SpectralParameter& lam) {
  switch (t) {
    case FreeTerm::U:
      return u_free(l, x, lam);
    case FreeTerm::V:
      return v_free(l, x, lam);
    case FreeTerm::W:
      return w_free(l, x, lam);
  }
  return {};
}

// Nyström discretization of  y = f + m ∫_{x0}^{x} K(x,t) q(t) y(t) dt  with
// x0 = 0 (forward) or x0 = 1 (backward), p Gauss-Legendre nodes per cell.
class VolterraProblem {
 public:
  VolterraProblem(const Potential& q, Order l, const SpectralParameter& lam, std::vector<double> pts,
                  bool forward, FreeTerm term, double multiplier, int p)
      : q_(q), l_(l), lam_(lam), pts_(std::move(pts)), forward_(forward), term_(term), m_(multiplier),
        gl_(gauss_legendre(p)), p_(p) {
    const auto n_cells = static_cast<Eigen::Index>(pts_.size()) - 1;
    const Eigen::Index nodes = n_cells * p_;
    x_.resize(nodes);
    qn_.resize(nodes);
    f_.resize(nodes);
    a_.resize(nodes);
    ap_.resize(nodes);
    b_.resize(nodes);
    bp_.resize(nodes);
    const double zc = hankel_switch(l_);
    const double kabs = std::abs(lam_.sqrt_lambda());
    cells_.reserve(static_cast<std::size_t>(n_cells));
    for (Eigen::Index s = 0; s < n_cells; ++s) {
      const Eigen::Index c = forward_ ? s : n_cells - 1 - s;
      Cell cell;
      cell.lo = pts_[static_cast<std::size_t>(c)];
      cell.hi = pts_[static_cast<std::size_t>(c) + 1];
      cell.hankel = !lam_.is_zero() && kabs * 0.5 * (cell.lo + cell.hi) >= zc;
      cell.omega = basis_wronskian(cell.hankel, lam_);
      const double in = forward_ ? cell.lo : cell.hi, out = forward_ ? cell.hi : cell.lo;
      // The regular sweep starts at x = 0 with zero integrals; the basis is
      // never evaluated there.
      cell.entry = in > 0.0 ? basis_at(cell.hankel, l_, in, lam_) : Basis{};
      cell.exit = basis_at(cell.hankel, l_, out, lam_);
      cell.first = s * p_;
      const double mid = 0.5 * (cell.lo + cell.hi), half = 0.5 * (cell.hi - cell.lo);
      for (int i = 0; i < p_; ++i) {
        const Eigen::Index k = cell.first + i;
        const double x = mid + half * gl_.nodes[i];
        x_[k] = x;
        qn_[k] = q_(x);
        f_[k] = free_term(term_, l_, x, lam_).value;
        const Basis bs = basis_at(cell.hankel, l_, x, lam_);
        a_[k] = bs.a;
        ap_[k] = bs.ap;
        b_[k] = bs.b;
        bp_[k] = bs.bp;
      }
      cells_.push_back(cell);
    }
    left_ = gl_.left_integral.cast<cplx>();
    right_ = gl_.right_integral.cast<cplx>();
    weights_ = gl_.weights.cast<cplx>();
    if (forward_ && term_ == FreeTerm::U && !cells_.empty() && !cells_[0].hankel) build_origin_series();
  }

  // D(x) = ∫_{x0}^{x} K(x,t) g(t) dt at the nodes, plus D and D' at each cell exit.
  void sweep(const Eigen::VectorXcd& g, Eigen::VectorXcd& d_nodes, Eigen::VectorXcd* dp_nodes,
             std::vector<cplx>& d_exit, std::vector<cplx>& dp_exit) const {
    const Eigen::MatrixXcd& partial = forward_ ? left_ : right_;
    const double dir = forward_ ? 1.0 : -1.0;
    d_nodes.resize(g.size());
    if (dp_nodes) dp_nodes->resize(g.size());
    d_exit.assign(cells_.size(), cplx(0.0));
    dp_exit.assign(cells_.size(), cplx(0.0));
    cplx acc_a = 0.0, acc_b = 0.0;
    std::size_t start = 0;
    if (!origin_series_.empty()) {
      origin_cell(d_nodes, dp_nodes, d_exit[0], dp_exit[0], acc_a, acc_b);
      start = 1;
    }
    for (std::size_t s = start; s < cells_.size(); ++s) {
      const Cell& c = cells_[s];
      if (s > 0 && c.hankel != cells_[s - 1].hankel) {
        // Re-express the accumulated part through Cauchy data at the shared point.
        const cplx d = d_exit[s - 1], dp = dp_exit[s - 1];
        const cplx alpha = (d * c.entry.bp - dp * c.entry.b) / c.omega;
        const cplx beta = (c.entry.a * dp - c.entry.ap * d) / c.omega;
        acc_a = c.omega * beta;
        acc_b = -c.omega * alpha;
      }
      const double hh = dir * 0.5 * (c.hi - c.lo);
      const auto ga = a_.segment(c.first, p_).cwiseProduct(g.segment(c.first, p_)).eval();
      const auto gb = b_.segment(c.first, p_).cwiseProduct(g.segment(c.first, p_)).eval();
      const Eigen::VectorXcd ia = (hh * (partial * ga)).array() + acc_a;
      const Eigen::VectorXcd ib = (hh * (partial * gb)).array() + acc_b;
      const auto bn = b_.segment(c.first, p_), an = a_.segment(c.first, p_);
      d_nodes.segment(c.first, p_) = (bn.cwiseProduct(ia) - an.cwiseProduct(ib)) / c.omega;
      if (dp_nodes)
        dp_nodes->segment(c.first, p_) =
            (bp_.segment(c.first, p_).cwiseProduct(ia) - ap_.segment(c.first, p_).cwiseProduct(ib)) / c.omega;
      acc_a += hh * (weights_.array() * ga.array()).sum();
      acc_b += hh * (weights_.array() * gb.array()).sum();
      d_exit[s] = (c.exit.b * acc_a - c.exit.a * acc_b) / c.omega;
      dp_exit[s] = (c.exit.bp * acc_a - c.exit.ap * acc_b) / c.omega;
    }
  }

  SolutionField solve(const SolverOptions& opts) const {
    Eigen::VectorXcd y = f_;
    Eigen::VectorXcd d, dp;
    std::vector<cplx> d_exit, dp_exit;
    double increment = 0.0;
    int iters = 0;
    if (q_.is_zero()) {
      sweep(Eigen::VectorXcd::Zero(y.size()), d, &dp, d_exit, dp_exit);
      iters = 1;
    } else {
      for (;;) {
        if (iters >= opts.max_iters)
          throw ConvergenceError("Picard iteration did not converge in " + std::to_string(opts.max_iters) +
                                     " iterations (last relative increment " + std::to_string(increment) + ")",
                                 increment);
        ++iters;
        const Eigen::VectorXcd g = qn_.cast<cplx>().cwiseProduct(y);
        sweep(g, d, nullptr, d_exit, dp_exit);
        Eigen::VectorXcd next = f_ + m_ * d;
        const double scale = next.cwiseAbs().maxCoeff();
        increment = scale > 0.0 ? (next - y).cwiseAbs().maxCoeff() / scale : 0.0;
        y = std::move(next);
        if (!std::isfinite(increment))
          throw ConvergenceError("Picard iteration produced non-finite values", increment);
        if (increment < opts.tol_picard) break;
      }
      const Eigen::VectorXcd g = qn_.cast<cplx>().cwiseProduct(y);
      sweep(g, d, &dp, d_exit, dp_exit);
    }
    y = f_ + m_ * d;

    SolutionField field;
    field.l = l_;
    field.lam = lam_;
    field.picard_iterations = iters;
    field.picard_increment = increment;
    field.residual_estimate = residual(y, dp);
    assemble(field, d_exit, dp_exit);
    return field;
  }

 private:
  cplx coefficient(double x, double qx) const { return l_.centrifugal() / (x * x) + qx - lam_.lambda(); }

  double residual(const Eigen::VectorXcd& y, const Eigen::VectorXcd& dp) const {
    double worst = 0.0;
    for (const Cell& c : cells_) {
      const double h = c.hi - c.lo;
      // The free term solves the free equation exactly, so only the integral
      // part is differentiated numerically. Differentiating f as well would
      // add the interpolation error of x^{-l-1} on the cell to the estimate.
      const Eigen::VectorXcd corr = m_ * dp.segment(c.first, p_);
      const Eigen::VectorXcd corr_pp = (2.0 / h) * (gl_.derivative.cast<cplx>() * corr);
      double scale = 0.0, err = 0.0;
      for (int i = 0; i < p_; ++i) {
        const Eigen::Index k = c.first + i;
        const cplx ypp = coefficient(x_[k], 0.0) * f_[k] + corr_pp[i];
        const cplx cy = coefficient(x_[k], qn_[k]) * y[k];
        scale = std::max({scale, std::abs(cy), std::abs(ypp)});
        err = std::max(err, std::abs(ypp - cy));
      }
      if (scale > 0.0) worst = std::max(worst, err / scale);
    }
    return worst;
  }

  void assemble(SolutionField& field, const std::vector<cplx>& d_exit, const std::vector<cplx>& dp_exit) const {
    const auto n_cells = static_cast<Eigen::Index>(cells_.size());
    // Forward: grid = pts[1..N] (cell exits). Backward: grid = pts[0..N], the
    // anchor x = 1 carrying f exactly.
    const Eigen::Index n = forward_ ? n_cells : n_cells + 1;
    field.grid.resize(n);
    field.values.resize(n);
    field.derivatives.resize(n);
    field.second_derivatives.resize(n);
    auto put = [&](Eigen::Index j, double x, cplx d, cplx dp) {
      const auto f = free_term(term_, l_, x, lam_);
      field.grid[j] = x;
      field.values[j] = f.value + m_ * d;
      field.derivatives[j] = f.derivative + m_ * dp;
      field.second_derivatives[j] = coefficient(x, q_(x)) * field.values[j];
    };
    if (forward_) {
      for (Eigen::Index s = 0; s < n_cells; ++s) put(s, pts_[static_cast<std::size_t>(s) + 1], d_exit[s], dp_exit[s]);
    } else {
      put(n_cells, pts_.back(), 0.0, 0.0);
      for (Eigen::Index s = 0; s < n_cells; ++s) {
        const Eigen::Index j = n_cells - 1 - s;
        put(j, pts_[static_cast<std::size_t>(j)], d_exit[s], dp_exit[s]);
      }
    }
  }

  // On the cell touching x = 0 the interpolant of u q φ ~ t^{2l+2} is
  // multiplied by v ~ t^{-l} at nodes far closer to the origin than the
  // interpolation points, which amplifies its error by up to (node ratio)^{l+1}.
  // There q is a polynomial, so φ comes from its Frobenius series instead:
  //   φ = Σ c_n x^{n+l+1},  c_0 = 1,  n(n+2l+1) c_n = Σ_k p_k c_{n-2-k},
  // with p the coefficients of q - λ.
  void build_origin_series() {
    const double x1 = cells_[0].hi;
    std::vector<cplx> p;
    for (double c : q_.origin_polynomial()) p.emplace_back(c);
    p[0] -= lam_.lambda();
    const int l = l_.value();
    std::vector<cplx> c{1.0, 0.0};
    double size = 1.0;
    int quiet = 0;
    for (int n = 2; n < 600; ++n) {
      cplx sum = 0.0;
      for (int k = 0; k < static_cast<int>(p.size()) && k <= n - 2; ++k) sum += p[k] * c[n - 2 - k];
      c.push_back(sum / double(n * (n + 2 * l + 1)));
      const double term = std::abs(c.back()) * std::pow(x1, n);
      size = std::max(size, term);
      // Stop after several negligible terms, and give up when the terms
      // grow so large that the sum would cancel.
      quiet = term < 1e-18 ? quiet + 1 : 0;
      if (quiet > static_cast<int>(p.size()) + 2) break;
    }
    if (quiet == 0 || size > 1e3) return;
    origin_series_ = std::move(c);
  }

  // (φ, φ') from the origin series.
  std::pair<cplx, cplx> origin_value(double x) const {
    const int l = l_.value();
    cplx v = 0.0, dv = 0.0;
    for (std::size_t n = origin_series_.size(); n-- > 0;) {
      v = v * x + origin_series_[n];
      dv = dv * x + origin_series_[n] * double(static_cast<int>(n) + l + 1);
    }
    const double xl = std::pow(x, l);
    return {xl * x * v, xl * dv};
  }

  // The Volterra correction d = φ - u on the first cell, plus the integrals
  // ∫ u q φ = W(u, φ) and ∫ v q φ = 1 - W(φ, v) carried into the next cell.
  void origin_cell(Eigen::VectorXcd& d_nodes, Eigen::VectorXcd* dp_nodes, cplx& d_exit, cplx& dp_exit, cplx& acc_a,
                   cplx& acc_b) const {
    const Cell& c = cells_[0];
    for (int i = 0; i < p_; ++i) {
      const Eigen::Index k = c.first + i;
      const auto [phi, dphi] = origin_value(x_[k]);
      d_nodes[k] = phi - a_[k];
      if (dp_nodes) (*dp_nodes)[k] = dphi - ap_[k];
    }
    const auto [phi, dphi] = origin_value(c.hi);
    d_exit = phi - c.exit.a;
    dp_exit = dphi - c.exit.ap;
    acc_a = c.exit.a * dphi - c.exit.ap * phi;
    acc_b = 1.0 - (phi * c.exit.bp - dphi * c.exit.b);
  }

  const Potential& q_;
  Order l_;
  SpectralParameter lam_;
  std::vector<double> pts_;
  bool forward_;
  FreeTerm term_;
  double m_;
  const GaussLegendre& gl_;
  int p_;
  std::vector<Cell> cells_;
  Eigen::VectorXd x_, qn_;
  Eigen::VectorXcd f_, a_, ap_, b_, bp_;
  Eigen::MatrixXcd left_, right_;
  Eigen::VectorXcd weights_;
  std::vector<cplx> origin_series_;
};

void insert_breakpoints(std::vector<double>& pts, std::span<const double> extra, double lo, double hi) {
  for (double b : extra) {
    if (!(b >= lo && b <= hi))
      throw UsageError("breakpoint " + std::to_string(b) + " outside mesh range [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
    if (b == lo || b == hi) continue;
    std::erase_if(pts, [b](double x) { return x != 0.0 && x != 1.0 && std::abs(x - b) < 1e-10; });
    pts.push_back(b);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

void refine_geometric(std::vector<double>& pts, double ratio) {
  std::vector<double> out{pts.front()};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    if (a > 0.0 && b / a > ratio) {
      const int m = static_cast<int>(std::ceil(std::log(b / a) / std::log(ratio)));
      for (int k = 1; k < m; ++k) out.push_back(a * std::pow(b / a, double(k) / m));
    }
    out.push_back(b);
  }
  pts = std::move(out);
}

template <typename MeshFn>
SolutionField solve_with_refinement(const Potential& q, const SpectralParameter& lam, const MeshSpec& spec,
                                    const SolverOptions& opts, bool graded, MeshFn&& solve_on) {
  const bool automatic = spec.cells <= 0;
  int cells = automatic ? detail::automatic_cells(q, lam, spec, graded) : spec.cells;
  MeshSpec current = spec;
  for (int attempt = 0;; ++attempt) {
    SolutionField field = solve_on(current, cells);
    if (!automatic || field.residual_estimate <= opts.tol_residual) return field;
    if (attempt == 3)
      throw ConvergenceError("residual estimate " + std::to_string(field.residual_estimate) +
                                 " above tolerance after mesh refinement",
                             field.residual_estimate);
    // Halve the cells everywhere, including the geometric ones near the origin.
    cells *= 2;
    current.max_cell_ratio = std::sqrt(current.max_cell_ratio);
  }
}

}  // namespace

int detail::automatic_cells(const Potential& q, const SpectralParameter& lam, const MeshSpec& spec, bool graded) {
  const double k_eff = std::sqrt(std::abs(lam.lambda()) + q.max_abs());
  const double span = graded ? spec.grading : 1.0 - spec.x_min;
  return std::max(spec.min_cells, static_cast<int>(std::ceil(span * k_eff / spec.max_phase_per_cell)));
}

std::vector<double> detail::regular_mesh(const Potential& q, const SpectralParameter&, const MeshSpec& spec,
                                         int cells) {
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(cells) + 1);
  for (int j = 0; j <= cells; ++j) pts.push_back(std::pow(double(j) / cells, spec.grading));
  pts.back() = 1.0;
  insert_breakpoints(pts, q.kinks(), 0.0, 1.0);
  insert_breakpoints(pts, spec.breakpoints, 0.0, 1.0);
  if (std::find(spec.breakpoints.begin(), spec.breakpoints.end(), 0.0) != spec.breakpoints.end())
    throw UsageError("breakpoint 0 is not on the regular-solution grid");
  refine_geometric(pts, spec.max_cell_ratio);
  return pts;
}

std::vector<double> detail::irregular_mesh(const Potential& q, const SpectralParameter&, const MeshSpec& spec,
                                           int cells) {
  if (!(spec.x_min > 0.0 && spec.x_min < 1.0)) throw UsageError("x_min must lie in (0, 1)");
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(cells) + 1);
  for (int j = 0; j <= cells; ++j) pts.push_back(spec.x_min + (1.0 - spec.x_min) * double(j) / cells);
  pts.back() = 1.0;
  std::vector<double> kinks;
  for (double k : q.kinks())
    if (k > spec.x_min) kinks.push_back(k);
  insert_breakpoints(pts, kinks, spec.x_min, 1.0);
  insert_breakpoints(pts, spec.breakpoints, spec.x_min, 1.0);
  refine_geometric(pts, spec.max_cell_ratio);
  return pts;
}

SolutionField regular_solution(const Potential& q, Order l, const SpectralParameter& lam, const MeshSpec& mesh,
                               const SolverOptions& opts) {
  return solve_with_refinement(q, lam, mesh, opts, true, [&](const MeshSpec& m, int cells) {
    VolterraProblem problem(q, l, lam, detail::regular_mesh(q, lam, m, cells), true, FreeTerm::U, 1.0,
                            mesh.nodes_per_cell);
    SolutionField field = problem.solve(opts);
    field.kind = SolutionKind::Regular;
    return field;
  });
}

SolutionField detail::irregular_solution_signed(const Potential& q, Order l, const SpectralParameter& lam,
                                                InhomKind inhom, int sign, const MeshSpec& mesh,
                                                const SolverOptions& opts) {
  if (lam.is_zero()) throw DomainError("irregular_solution: undefined at λ = 0");
  if (sign != 1 && sign != -1) throw UsageError("Volterra sign must be ±1");
  const FreeTerm term = inhom == InhomKind::WCorrected ? FreeTerm::W : FreeTerm::V;
  // ψ̃ = f + s ∫ₓ¹ K q ψ̃ = f - s ∫₁ˣ K q ψ̃
  return solve_with_refinement(q, lam, mesh, opts, false, [&](const MeshSpec& m, int cells) {
    VolterraProblem problem(q, l, lam, detail::irregular_mesh(q, lam, m, cells), false, term, -double(sign),
                            mesh.nodes_per_cell);
    SolutionField field = problem.solve(opts);
    field.kind = inhom == InhomKind::WCorrected ? SolutionKind::IrregularW : SolutionKind::IrregularV;
    return field;
  });
}

SolutionField irregular_solution(const Potential& q, Order l, const SpectralParameter& lam, InhomKind inhom,
                                 const MeshSpec& mesh, const SolverOptions& opts) {
  return detail::irregular_solution_signed(q, l, lam, inhom, detail::kIrregularVolterraSign, mesh, opts);
}

}  // namespace slspec
