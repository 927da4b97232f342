#include "slspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slspec/errors.hpp"
#include "slspec/quadrature.hpp"

namespace slspec {

namespace {

double horner(std::span<const double> c, double x) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

void require_finite(std::span<const double> v, const char* field) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i]))
      throw ValidationError(std::string(field) + "[" + std::to_string(i) + "] is not finite");
}

// ∫_a^b x|p(x)| dx for a polynomial: split at sign changes found on a fine
// sampling grid, then Gauss-Legendre on each piece (exact up to rounding).
double weighted_abs_integral(std::span<const double> c) {
  constexpr int kSamples = 4096;
  std::vector<double> cuts{0.0};
  double prev = horner(c, 0.0);
  for (int i = 1; i <= kSamples; ++i) {
    const double x = double(i) / kSamples;
    const double cur = horner(c, x);
    // A root that lands exactly on a sample becomes a cut by itself.
    if (cur == 0.0 && x < 1.0) cuts.push_back(x);
    if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
      double lo = double(i - 1) / kSamples, hi = x;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = horner(c, mid);
        if ((fm < 0.0) == (prev < 0.0)) lo = mid; else hi = mid;
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  cuts.push_back(1.0);
  const int order = std::min<int>(32, static_cast<int>(c.size()) / 2 + 2);
  const auto& gl = gauss_legendre(order);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int m = 0; m < gl.size(); ++m) {
      const double x = mid + half * gl.nodes[m];
      s += gl.weights[m] * x * horner(c, x);
    }
    total += std::abs(half * s);
  }
  return total;
}

// ∫ x|q| for a piecewise-linear q: x·q is quadratic on each piece, and the
// two-point rule is exact once the piece is split at its zero.
double weighted_abs_integral(std::span<const double> xs, std::span<const double> qs) {
  auto piece = [](double a, double b, double qa, double qb) {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b), g = 1.0 / std::sqrt(3.0);
    double s = 0.0;
    for (double t : {-g, g}) {
      const double x = m + h * t;
      s += x * (qa + (qb - qa) * (x - a) / (b - a));
    }
    return std::abs(h * s);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = xs[i], b = xs[i + 1], qa = qs[i], qb = qs[i + 1];
    if ((qa < 0.0 && qb > 0.0) || (qa > 0.0 && qb < 0.0)) {
      const double r = a + (b - a) * qa / (qa - qb);
      total += piece(a, r, qa, 0.0) + piece(r, b, 0.0, qb);
    } else {
      total += piece(a, b, qa, qb);
    }
  }
  return total;
}

}  // namespace

Potential::Potential(Kind kind, std::vector<double> coeffs, std::vector<double> table_x)
    : kind_(kind), coeffs_(std::move(coeffs)), table_x_(std::move(table_x)) {
  finish();
}

Potential Potential::constant(double c) {
  require_finite(std::span(&c, 1), "c");
  return Potential(Kind::Constant, {c}, {});
}

Potential Potential::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw ValidationError("coeffs: polynomial needs at least one coefficient");
  require_finite(coeffs, "coeffs");
  return Potential(Kind::Polynomial, std::move(coeffs), {});
}

Potential Potential::table(std::vector<double> x, std::vector<double> q) {
  if (x.size() < 2) throw ValidationError("x: table needs at least two samples");
  if (x.size() != q.size())
    throw ValidationError("q: length " + std::to_string(q.size()) + " does not match x length " +
                          std::to_string(x.size()));
  require_finite(x, "x");
  require_finite(q, "q");
  if (x.front() != 0.0) throw ValidationError("x: first sample must be 0");
  if (x.back() != 1.0) throw ValidationError("x: last sample must be 1");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      throw ValidationError("x: samples must be strictly increasing (index " + std::to_string(i) + ")");
  return Potential(Kind::Table, std::move(q), std::move(x));
}

void Potential::finish() {
  zero_ = std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
  switch (kind_) {
    case Kind::Constant:
      weighted_norm_ = 0.5 * std::abs(coeffs_[0]);
      min_ = coeffs_[0];
      max_abs_ = std::abs(coeffs_[0]);
      break;
    case Kind::Polynomial: {
      weighted_norm_ = weighted_abs_integral(coeffs_);
      min_ = horner(coeffs_, 0.0);
      max_abs_ = 0.0;
      for (int i = 0; i <= 4096; ++i) {
        const double v = horner(coeffs_, i / 4096.0);
        min_ = std::min(min_, v);
        max_abs_ = std::max(max_abs_, std::abs(v));
      }
      break;
    }
    case Kind::Table:
      weighted_norm_ = weighted_abs_integral(table_x_, coeffs_);
      min_ = *std::min_element(coeffs_.begin(), coeffs_.end());
      max_abs_ = 0.0;
      for (double v : coeffs_) max_abs_ = std::max(max_abs_, std::abs(v));
      break;
  }
}

double Potential::operator()(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return coeffs_[0];
    case Kind::Polynomial:
      return horner(coeffs_, x);
    case Kind::Table: {
      if (x <= 0.0) return coeffs_.front();
      if (x >= 1.0) return coeffs_.back();
      const auto it = std::upper_bound(table_x_.begin(), table_x_.end(), x);
      const auto i = static_cast<std::size_t>(it - table_x_.begin()) - 1;
      const double t = (x - table_x_[i]) / (table_x_[i + 1] - table_x_[i]);
      return coeffs_[i] + t * (coeffs_[i + 1] - coeffs_[i]);
    }
  }
  return 0.0;
}

std::span<const double> Potential::kinks() const noexcept {
  if (kind_ != Kind::Table || table_x_.size() <= 2) return {};
  return std::span(table_x_).subspan(1, table_x_.size() - 2);
}

std::vector<double> Potential::origin_polynomial() const {
  if (kind_ != Kind::Table) return coeffs_;
  return {coeffs_[0], (coeffs_[1] - coeffs_[0]) / (table_x_[1] - table_x_[0])};
}

Potential Potential::shifted(double c) const {
  Potential p = *this;
  if (kind_ == Kind::Table) {
    for (double& v : p.coeffs_) v += c;
  } else {
    p.coeffs_[0] += c;
  }
  p.finish();
  return p;
}

}  // namespace slspec
