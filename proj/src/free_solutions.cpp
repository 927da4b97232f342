#include "slspec/free_solutions.hpp"

#include <cmath>

namespace slspec {

SpectralParameter::SpectralParameter(cplx lambda) : lambda_(lambda), sqrt_(std::sqrt(lambda)) {
  if (sqrt_.imag() < 0.0) sqrt_ = -sqrt_;
  // std::sqrt(-a - 0i) = -i√a; the flip above maps it back to i√a.
  if (sqrt_.imag() == 0.0 && sqrt_.real() < 0.0) sqrt_ = -sqrt_;
}

namespace {

// Below |x√λ| = this, u and v are summed in powers of λx² directly, which is
// entire in λ and avoids the tiny-times-huge products of the ĵ/ŷ forms.
constexpr double kSmallArgument = 0.5;

double ipow(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

// u = x^{l+1} Σ_k (-λx²/2)^k / (k! Π_{m=1}^k (2l+2m+1))
FreeValue u_series(int l, double x, cplx lambda) {
  const cplx s = -lambda * x * x / 2.0;
  cplx term = 1.0, sum = 1.0, dsum = double(l + 1);
  for (int k = 1; k < 200; ++k) {
    term *= s / (double(k) * double(2 * l + 2 * k + 1));
    sum += term;
    dsum += term * double(l + 1 + 2 * k);
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  const double xl = ipow(x, l);
  return {xl * x * sum, xl * dsum};
}

// v = -x^{-l}/(2l+1) Σ_k (-λx²/2)^k / (k! Π_{m=1}^k (2m-1-2l))
FreeValue v_series(int l, double x, cplx lambda) {
  const cplx s = -lambda * x * x / 2.0;
  cplx term = 1.0, sum = 1.0, dsum = double(-l);
  for (int k = 1; k < 200; ++k) {
    term *= s / (double(k) * double(2 * k - 1 - 2 * l));
    sum += term;
    dsum += term * double(2 * k - l);
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  const double c = -1.0 / double(2 * l + 1);
  const double xml = 1.0 / ipow(x, l);
  return {c * xml * sum, c * xml / x * dsum};
}

bool small(double x, const SpectralParameter& lam) {
  return std::abs(lam.sqrt_lambda()) * x < kSmallArgument;
}

cplx cpow_int(cplx z, int n) {
  cplx r = 1.0;
  for (int k = 0; k < std::abs(n); ++k) r *= z;
  return n < 0 ? 1.0 / r : r;
}

void require_nonzero_lambda(const SpectralParameter& lam, const char* name) {
  if (lam.is_zero()) throw DomainError(std::string(name) + ": undefined at λ = 0");
}

}  // namespace

FreeValue u_free(Order order, double x, const SpectralParameter& lam) {
  const int l = order.value();
  if (small(x, lam)) return u_series(l, x, lam.lambda());
  const cplx k = lam.sqrt_lambda();
  const auto j = rb_j(order, lam.scaled(x));
  const double norm = double_factorial_odd(l);
  const cplx kpow = cpow_int(k, -(l + 1));
  return {norm * kpow * j.value, norm * kpow * k * j.derivative};
}

FreeValue detail::v_free_entire(Order order, double x, const SpectralParameter& lam) {
  const int l = order.value();
  if (small(x, lam)) return v_series(l, x, lam.lambda());
  const cplx k = lam.sqrt_lambda();
  const auto y = rb_y(order, lam.scaled(x));
  const double norm = 1.0 / double_factorial_odd(l);
  const cplx kpow = cpow_int(k, l);
  return {norm * kpow * y.value, norm * kpow * k * y.derivative};
}

FreeValue v_free(Order l, double x, const SpectralParameter& lam) {
  require_nonzero_lambda(lam, "v_free");
  return detail::v_free_entire(l, x, lam);
}

FreeValue w_free(Order l, double x, const SpectralParameter& lam) {
  require_nonzero_lambda(lam, "w_free");
  const cplx k = lam.sqrt_lambda();
  const auto h = rb_h_plus(l, lam.scaled(x));
  return {k * h.value, k * k * h.derivative};
}

FreeValue detail::w_minus_free(Order l, double x, const SpectralParameter& lam) {
  require_nonzero_lambda(lam, "w_minus_free");
  const cplx k = lam.sqrt_lambda();
  const auto h = rb_h_minus(l, lam.scaled(x));
  return {k * h.value, k * k * h.derivative};
}

FreeValue free_solution(FreeSolutionKind kind, Order l, double x, const SpectralParameter& lam) {
  switch (kind) {
    case FreeSolutionKind::URegular:
      return u_free(l, x, lam);
    case FreeSolutionKind::VSingular:
      return v_free(l, x, lam);
    case FreeSolutionKind::WOutgoing:
      return w_free(l, x, lam);
  }
  throw UsageError("unknown free solution kind");
}

}  // namespace slspec
