#pragma once

#include <span>
#include <vector>

namespace slspec {

/// Real potential q on [0,1]. Polynomials take ascending coefficients;
/// tables are joined by linear interpolation.
///
/// Construction validates the data and records ∫₀¹ x|q(x)| dx.
class Potential {
 public:
  enum class Kind { Constant, Polynomial, Table };

  Potential() : Potential(constant(0.0)) {}

  static Potential constant(double c);
  static Potential polynomial(std::vector<double> coeffs);
  static Potential table(std::vector<double> x, std::vector<double> q);

  double operator()(double x) const;

  Kind kind() const noexcept { return kind_; }
  /// Constant value (Constant), coefficients (Polynomial) or samples (Table).
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<const double> table_x() const noexcept { return table_x_; }
  std::span<const double> table_q() const noexcept { return coeffs_; }

  double weighted_norm() const noexcept { return weighted_norm_; }
  /// Lower bound for q on [0,1] (exact for Constant/Table, sampled for Polynomial).
  double min_value() const noexcept { return min_; }
  double max_abs() const noexcept { return max_abs_; }
  bool is_zero() const noexcept { return zero_; }

  /// Interior points where q is not smooth (table nodes); mesh generators
  /// put cell boundaries there.
  std::span<const double> kinks() const noexcept;

  /// Ascending coefficients of q on [0, first kink], where every kind is a
  /// polynomial.
  std::vector<double> origin_polynomial() const;

  /// q + c
  Potential shifted(double c) const;

  friend bool operator==(const Potential&, const Potential&) = default;

 private:
  Potential(Kind kind, std::vector<double> coeffs, std::vector<double> table_x);
  void finish();

  Kind kind_ = Kind::Constant;
  std::vector<double> coeffs_;
  std::vector<double> table_x_;
  double weighted_norm_ = 0.0;
  double min_ = 0.0;
  double max_abs_ = 0.0;
  bool zero_ = true;
};

}  // namespace slspec
