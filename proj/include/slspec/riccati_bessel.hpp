#pragma once

// Riccati-Bessel functions ĵ_l(z) = z j_l(z), ŷ_l(z) = z y_l(z) and the
// outgoing / incoming Riccati-Hankel combinations w_l^±(z) = ŷ_l(z) ∓ i ĵ_l(z)
// for complex z and integer l >= 0.
//
// With this sign convention w_l^+(z) ~ -(-i)^l e^{iz} for large |z|, and
// w_1^+(z) = i e^{iz} (1 + i/z) exactly.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "slspec/errors.hpp"

namespace slspec {

/// Angular momentum index l >= 0 of the centrifugal term l(l+1)/x².
class Order {
 public:
  constexpr Order() = default;
  constexpr explicit Order(int l) : l_(l) {
    if (l < 0) throw DomainError("angular momentum l must be >= 0, got " + std::to_string(l));
  }
  constexpr int value() const noexcept { return l_; }
  /// l(l+1)
  constexpr double centrifugal() const noexcept { return double(l_) * double(l_ + 1); }
  friend constexpr bool operator==(Order, Order) = default;

 private:
  int l_ = 1;
};

/// A function value together with its derivative.
template <typename Real>
struct RBValue {
  std::complex<Real> value;
  std::complex<Real> derivative;
};

/// (2l+1)!! = 1·3·5···(2l+1).
template <typename Real = double>
constexpr Real double_factorial_odd(int l) {
  Real r = 1;
  for (int k = 3; k <= 2 * l + 1; k += 2) r *= Real(k);
  return r;
}

/// Below this modulus ĵ_1 is summed from its power series; the closed form
/// sin z / z - cos z loses more than 1e-14 relative accuracy there.
template <typename Real>
inline constexpr Real kRiccatiSeriesSwitch = Real(0.5);

namespace detail {

// ĵ_l from its power series  z^{l+1}/(2l+1)!! Σ_k (-z²/2)^k / (k! Π_{m=1}^k (2l+2m+1)).
template <typename Real>
RBValue<Real> rb_j_series(int l, std::complex<Real> z) {
  using C = std::complex<Real>;
  const C half_z2 = -z * z / Real(2);
  C term = 1;
  C sum = 1;
  C dsum = Real(l + 1);  // Σ (l+1+2k) c_k z^{2k}
  for (int k = 0; k < 200; ++k) {
    term *= half_z2 / (Real(k + 1) * Real(2 * l + 2 * k + 3));
    sum += term;
    dsum += term * Real(l + 1 + 2 * (k + 1));
    if (std::abs(term) <= std::numeric_limits<Real>::epsilon() * Real(1e-2) * std::abs(sum)) break;
  }
  const Real norm = double_factorial_odd<Real>(l);
  C zl = 1;
  for (int k = 0; k < l; ++k) zl *= z;
  return {zl * z * sum / norm, zl * dsum / norm};
}

// ŷ_l from its Laurent series  -(2l-1)!! z^{-l} Σ_k (-z²/2)^k / (k! Π_{m=1}^k (2m-1-2l)).
template <typename Real>
RBValue<Real> rb_y_series(int l, std::complex<Real> z) {
  using C = std::complex<Real>;
  const C half_z2 = -z * z / Real(2);
  C term = 1;
  C sum = 1;
  C dsum = Real(-l);  // Σ (2k-l) c_k z^{2k}
  for (int k = 1; k < 300; ++k) {
    term *= half_z2 / (Real(k) * Real(2 * k - 1 - 2 * l));
    sum += term;
    dsum += term * Real(2 * k - l);
    if (std::abs(term) <= std::numeric_limits<Real>::epsilon() * Real(1e-2) * std::abs(sum)) break;
  }
  const Real norm = l == 0 ? Real(1) : double_factorial_odd<Real>(l - 1);
  C zl = 1;
  for (int k = 0; k < l; ++k) zl *= z;
  return {-norm * sum / zl, -norm * dsum / (zl * z)};
}

// Upward recurrence in l loses digits for |z| below about l and near the
// imaginary axis, where ĵ is recessive and ŷ falls far below ŷ_0 = -cos z.
// There the power series are safe: their terms outgrow the sum by only about
// e^{|z| - |Im z|}.
template <typename Real>
bool near_imaginary_axis(std::complex<Real> z) {
  const Real r = std::abs(z);
  return r - std::abs(z.imag()) < Real(6) && r < Real(100);
}

template <typename Real>
std::complex<Real> rb_j1_closed(std::complex<Real> z) {
  return std::sin(z) / z - std::cos(z);
}

// Upward recurrence f_{m+1} = (2m+1)/z f_m - f_{m-1}; derivative from
// f_l' = f_{l-1} - (l/z) f_l.
template <typename Real>
RBValue<Real> upward(int l, std::complex<Real> z, std::complex<Real> f0, std::complex<Real> f0p,
                     std::complex<Real> f1) {
  if (l == 0) return {f0, f0p};
  std::complex<Real> prev = f0, cur = f1;
  for (int m = 1; m < l; ++m) {
    const std::complex<Real> next = Real(2 * m + 1) / z * cur - prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev - Real(l) / z * cur};
}

template <typename Real>
void require_nonzero(std::complex<Real> z, const char* name) {
  if (z == std::complex<Real>(0)) throw DomainError(std::string(name) + ": pole at z = 0");
}

}  // namespace detail

/// ĵ_l(z) and dĵ_l/dz. Entire in z.
template <typename Real>
RBValue<Real> rb_j(Order order, std::complex<Real> z) {
  const int l = order.value();
  if (l == 0) return {std::sin(z), std::cos(z)};
  const Real r = std::abs(z);
  if (l == 1) {
    if (r < kRiccatiSeriesSwitch<Real>) return detail::rb_j_series(1, z);
    const auto f = detail::rb_j1_closed(z);
    return {f, std::sin(z) - f / z};
  }
  if (r < Real(l + 2) || detail::near_imaginary_axis(z)) return detail::rb_j_series(l, z);
  return detail::upward(l, z, std::sin(z), std::cos(z), detail::rb_j1_closed(z));
}

/// ŷ_l(z) and dŷ_l/dz; ŷ_l(z) ~ -(2l-1)!! z^{-l} at the origin.
template <typename Real>
RBValue<Real> rb_y(Order order, std::complex<Real> z) {
  detail::require_nonzero(z, "rb_y");
  const int l = order.value();
  if (l >= 2) {
    const Real r = std::abs(z);
    if ((r < Real(l + 2) && std::abs(z.imag()) > Real(1)) || detail::near_imaginary_axis(z))
      return detail::rb_y_series(l, z);
  }
  const auto c = std::cos(z), s = std::sin(z);
  return detail::upward(order.value(), z, -c, s, -c / z - s);
}

/// Outgoing Riccati-Hankel function w_l^+(z) = ŷ_l(z) - i ĵ_l(z).
template <typename Real>
RBValue<Real> rb_h_plus(Order order, std::complex<Real> z) {
  using C = std::complex<Real>;
  detail::require_nonzero(z, "rb_h_plus");
  const C i(0, 1);
  const C e = std::exp(i * z);
  return detail::upward(order.value(), z, -e, -i * e, e * (i - Real(1) / z));
}

/// Incoming Riccati-Hankel function w_l^-(z) = ŷ_l(z) + i ĵ_l(z).
template <typename Real>
RBValue<Real> rb_h_minus(Order order, std::complex<Real> z) {
  using C = std::complex<Real>;
  detail::require_nonzero(z, "rb_h_minus");
  const C i(0, 1);
  const C e = std::exp(-i * z);
  return detail::upward(order.value(), z, -e, i * e, e * (-i - Real(1) / z));
}

}  // namespace slspec
