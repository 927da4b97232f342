#pragma once

#include <array>
#include <functional>

#include "slspec/free_solutions.hpp"

namespace slspec {

/// Axis-aligned rectangle in the complex λ-plane, traversed counter-clockwise.
struct ContourRegion {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -1.0;
  double im_max = 1.0;
  int nodes_per_side = 32;

  /// Throws ValidationError unless re_min < re_max, im_min < im_max and
  /// nodes_per_side >= 32.
  void validate() const;
  double diameter() const;
  /// True when the rectangle meets the positive real axis, the branch cut of
  /// √λ on the Im √λ >= 0 branch.
  bool meets_positive_real_axis() const;
};

struct WindingOptions {
  /// Accept once the raw integral lies this close to an integer.
  double integrality_window = 0.05;
  int max_doublings = 5;
  /// Central-difference step for F' as a fraction of the region diameter.
  double derivative_step = 1e-4;
  /// A node with |F/F'| below this fraction of the diameter signals a zero
  /// too close to the contour.
  double near_zero_fraction = 1e-3;
};

struct WindingResult {
  int count = 0;
  cplx raw{0.0};
  int nodes_per_side = 0;
  int evaluations = 0;
};

/// Number of zeros of an analytic F inside `region`, from (1/2πi)∮F'/F dλ
/// by the trapezoid rule, doubling the node count until the integral is
/// within the window of an integer and F's phase is resolved node to node.
WindingResult winding_number(const std::function<cplx(cplx)>& f, const ContourRegion& region,
                             const WindingOptions& opts = {});

/// Monic polynomial of the given degree (1..8) with known real roots:
/// 0 for degree 1, otherwise evenly spaced in [-1, 1] (degree 2 is λ² - 1).
std::function<cplx(cplx)> validation_polynomial(int degree);

}  // namespace slspec
