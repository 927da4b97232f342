#pragma once

// High-precision reference values computed independently of the library:
// tan z = z roots by 200-bit bisection, and Riccati-Bessel functions from
// their power series and finite Hankel sums in 100-digit arithmetic.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <complex>

namespace oracle {

using Bisect = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>>;
using Real = boost::multiprecision::cpp_bin_float_100;

/// n-th positive root of sin z / z - cos z (n >= 1), in (nπ, (n+1/2)π).
inline Bisect tan_root(int n) {
  const Bisect pi = boost::math::constants::pi<Bisect>();
  Bisect lo = pi * n + Bisect(1e-30), hi = pi * (Bisect(n) + Bisect(0.5)) - Bisect(1e-30);
  auto f = [](const Bisect& z) { return sin(z) / z - cos(z); };
  const bool lo_negative = f(lo) < 0;
  for (int it = 0; it < 220; ++it) {
    const Bisect mid = (lo + hi) / 2;
    if ((f(mid) < 0) == lo_negative) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

/// μ_n = z_n², the free Dirichlet eigenvalues at l = 1.
inline double free_eigenvalue(int n) {
  const Bisect z = tan_root(n);
  return static_cast<double>(z * z);
}

struct Cx {
  Real re, im;
  Cx(Real r = 0, Real i = 0) : re(std::move(r)), im(std::move(i)) {}
  static Cx from(std::complex<double> z) { return {Real(z.real()), Real(z.imag())}; }
  std::complex<double> to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};
inline Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Cx operator/(const Cx& a, const Cx& b) {
  const Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline Cx exp(const Cx& z) { return {boost::multiprecision::exp(z.re) * cos(z.im), boost::multiprecision::exp(z.re) * sin(z.im)}; }
inline Cx sin(const Cx& z) { return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)}; }
inline Cx cos(const Cx& z) { return {cos(z.re) * cosh(z.im), -sin(z.re) * sinh(z.im)}; }
inline Real abs(const Cx& z) { return sqrt(z.re * z.re + z.im * z.im); }

/// ĵ_l(z) from z^{l+1}/(2l+1)!! Σ (-z²/2)^k / (k! Π (2l+2m+1)).
inline Cx j_hat(int l, const Cx& z) {
  const Cx s = Cx(-1) * z * z / Cx(2);
  Cx term(1), sum(1);
  for (int k = 1; k < 400; ++k) {
    term = term * s / Cx(Real(k) * Real(2 * l + 2 * k + 1));
    sum = sum + term;
    if (abs(term) < Real("1e-90") * abs(sum) && k > 5) break;
  }
  Cx zp(1);
  Real norm = 1;
  for (int k = 0; k <= l; ++k) zp = zp * z;
  for (int k = 3; k <= 2 * l + 1; k += 2) norm *= k;
  return zp * sum / Cx(norm);
}

// z h_l^{(1,2)}(z) = (∓i)^{l+1} e^{±iz} Σ_k (±i)^k (l+k)! / (k! (l-k)! (2z)^k)
inline Cx riccati_hankel_sum(int l, const Cx& z, int sign) {
  const Cx i(0, sign);
  Cx sum(0), ik(1), z2k(1);
  for (int k = 0; k <= l; ++k) {
    Real c = 1;
    for (int m = l - k + 1; m <= l + k; ++m) c *= m;
    for (int m = 2; m <= k; ++m) c /= m;
    sum = sum + ik * Cx(c) / z2k;
    ik = ik * i;
    z2k = z2k * Cx(2) * z;
  }
  Cx pre(1);
  const Cx mi(0, -sign);
  for (int k = 0; k <= l; ++k) pre = pre * mi;
  return pre * exp(i * z) * sum;
}

/// ŷ_l(z) = z y_l(z) = z (h⁽¹⁾ - h⁽²⁾) / (2i).
inline Cx y_hat(int l, const Cx& z) {
  return (riccati_hankel_sum(l, z, 1) - riccati_hankel_sum(l, z, -1)) / Cx(0, 2);
}

/// w_l^+(z) = ŷ_l - i ĵ_l = -i z h_l^{(1)}(z).
inline Cx w_plus(int l, const Cx& z) { return Cx(0, -1) * riccati_hankel_sum(l, z, 1); }

/// f_l' = f_{l-1} - (l/z) f_l, with ĵ_0' = cos z, ŷ_0' = sin z.
inline Cx j_hat_prime(int l, const Cx& z) {
  return l == 0 ? cos(z) : j_hat(l - 1, z) - Cx(Real(l)) / z * j_hat(l, z);
}
inline Cx y_hat_prime(int l, const Cx& z) {
  return l == 0 ? sin(z) : y_hat(l - 1, z) - Cx(Real(l)) / z * y_hat(l, z);
}

/// √λ with Im ≥ 0, from polar form.
inline Cx sqrt_upper(std::complex<double> lambda) {
  const Real r = sqrt(Real(std::abs(lambda)));
  Real th = atan2(Real(lambda.imag()), Real(lambda.real()));
  if (th < 0) th += 2 * boost::math::constants::pi<Real>();
  return {r * cos(th / 2), r * sin(th / 2)};
}

/// 3v - (i/3) λ^{3/2} u at l = 1, evaluated in 100-digit arithmetic.
inline std::complex<double> w_identity_rhs(double x, std::complex<double> lambda) {
  const Cx k = sqrt_upper(lambda);
  const Cx z = k * Cx(Real(x));
  const Cx u = Cx(3) * j_hat(1, z) / (k * k);
  const Cx v = k * y_hat(1, z) / Cx(3);
  return (Cx(3) * v - Cx(0, Real(1) / 3) * k * k * k * u).to_double();
}

}  // namespace oracle
