#pragma once

// Solutions of the free equation  -u'' + l(l+1)x^{-2} u = λ u.
//
//   u_l(x,λ) = (2l+1)!! λ^{-(l+1)/2} ĵ_l(x√λ)   regular,   u ~ x^{l+1}
//   v_l(x,λ) = λ^{l/2} / (2l+1)!! ŷ_l(x√λ)      singular,  v ~ -x^{-l}/(2l+1)
//   w_l(x,λ) = √λ w_l^+(x√λ)                     outgoing
//
// W(u,v) = uv' - u'v = 1. At l = 1 the outgoing solution decomposes as
// w = 3v - (i/3) λ^{3/2} u. Both u and v are entire in λ; w carries the
// branch of √λ.

#include <complex>

#include "slspec/riccati_bessel.hpp"

namespace slspec {

using cplx = std::complex<double>;

/// Complex spectral parameter λ together with √λ on the branch Im √λ >= 0.
/// The branch cut of this square root lies along the positive real axis;
/// exactly on it √λ > 0.
class SpectralParameter {
 public:
  SpectralParameter() = default;
  explicit SpectralParameter(cplx lambda);
  SpectralParameter(double lambda) : SpectralParameter(cplx(lambda, 0.0)) {}  // NOLINT

  cplx lambda() const noexcept { return lambda_; }
  cplx sqrt_lambda() const noexcept { return sqrt_; }
  /// z = x√λ
  cplx scaled(double x) const noexcept { return x * sqrt_; }
  bool is_zero() const noexcept { return lambda_ == cplx(0.0); }

  friend bool operator==(const SpectralParameter& a, const SpectralParameter& b) {
    return a.lambda_ == b.lambda_;
  }

 private:
  cplx lambda_{0.0};
  cplx sqrt_{0.0};
};

enum class FreeSolutionKind { URegular, VSingular, WOutgoing };

using FreeValue = RBValue<double>;

/// Regular free solution; x >= 0, any λ (λ = 0 gives x^{l+1}).
FreeValue u_free(Order l, double x, const SpectralParameter& lam);
/// Singular free solution; throws DomainError at λ = 0.
FreeValue v_free(Order l, double x, const SpectralParameter& lam);
/// Outgoing free solution √λ w_l^+(x√λ); throws DomainError at λ = 0.
FreeValue w_free(Order l, double x, const SpectralParameter& lam);

FreeValue free_solution(FreeSolutionKind kind, Order l, double x, const SpectralParameter& lam);

namespace detail {
/// v_free continued to λ = 0 (v = -x^{-l}/(2l+1)); used by the Volterra kernel.
FreeValue v_free_entire(Order l, double x, const SpectralParameter& lam);
/// √λ w_l^-(x√λ), the incoming partner of w_free.
FreeValue w_minus_free(Order l, double x, const SpectralParameter& lam);
}  // namespace detail

}  // namespace slspec
