#include "slspec/quadrature.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "slspec/errors.hpp"

namespace slspec {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

double lagrange(const Eigen::VectorXd& nodes, int j, double s) {
  double r = 1.0;
  for (int m = 0; m < nodes.size(); ++m)
    if (m != j) r *= (s - nodes[m]) / (nodes[j] - nodes[m]);
  return r;
}

}  // namespace

GaussLegendre::GaussLegendre(int n) : nodes(n), weights(n), left_integral(n, n), right_integral(n, n), derivative(n, n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }

  // Sub-interval integrals of L_j are polynomials of degree n-1, so the same
  // rule mapped to [-1, ξ_i] integrates them exactly.
  for (int i = 0; i < n; ++i) {
    const double half = 0.5 * (nodes[i] + 1.0);
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int m = 0; m < n; ++m) s += weights[m] * lagrange(nodes, j, -1.0 + half * (nodes[m] + 1.0));
      left_integral(i, j) = half * s;
      right_integral(i, j) = weights[j] - left_integral(i, j);
    }
  }

  // Barycentric differentiation matrix.
  Eigen::VectorXd bary(n);
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int m = 0; m < n; ++m)
      if (m != j) prod *= nodes[j] - nodes[m];
    bary[j] = 1.0 / prod;
  }
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      derivative(i, j) = bary[j] / bary[i] / (nodes[i] - nodes[j]);
      diag -= derivative(i, j);
    }
    derivative(i, i) = diag;
  }
}

const GaussLegendre& gauss_legendre(int n) {
  constexpr int kMax = 32;
  if (n < 1 || n > kMax) throw DomainError("Gauss-Legendre order out of range [1, 32]");
  static std::array<std::unique_ptr<GaussLegendre>, kMax + 1> cache;
  static std::array<std::once_flag, kMax + 1> flags;
  std::call_once(flags[n], [n] { cache[n] = std::make_unique<GaussLegendre>(n); });
  return *cache[n];
}

}  // namespace slspec
