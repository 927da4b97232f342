#include "slspec/solution_field.hpp"

#include <algorithm>
#include <string>

#include "slspec/errors.hpp"

namespace slspec {

std::pair<cplx, cplx> SolutionField::cauchy_at(double x) const {
  const Eigen::Index n = grid.size();
  if (n == 0) throw UsageError("empty solution field");
  if (x < grid[0] || x > grid[n - 1])
    throw UsageError("x = " + std::to_string(x) + " outside field range [" + std::to_string(grid[0]) +
                     ", " + std::to_string(grid[n - 1]) + "]");
  const auto* begin = grid.data();
  const auto* it = std::lower_bound(begin, begin + n, x);
  auto j = static_cast<Eigen::Index>(it - begin);
  if (j < n && grid[j] == x) return {values[j], derivatives[j]};
  const Eigen::Index i = j - 1;

  const double h = grid[j] - grid[i];
  const double t = (x - grid[i]) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  // Quintic Hermite basis on [0,1] and its t-derivative.
  const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5, d0 = -30 * t2 + 60 * t3 - 30 * t4;
  const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5, d1 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
  const double h2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5), d2 = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4);
  const double h3 = 0.5 * (t3 - 2 * t4 + t5), d3 = 0.5 * (3 * t2 - 8 * t3 + 5 * t4);
  const double h4 = -4 * t3 + 7 * t4 - 3 * t5, d4 = -12 * t2 + 28 * t3 - 15 * t4;
  const double h5 = 10 * t3 - 15 * t4 + 6 * t5, d5 = 30 * t2 - 60 * t3 + 30 * t4;

  const cplx y0 = values[i], y1 = values[j];
  const cplx p0 = h * derivatives[i], p1 = h * derivatives[j];
  const cplx s0 = h * h * second_derivatives[i], s1 = h * h * second_derivatives[j];
  const cplx y = y0 * h0 + p0 * h1 + s0 * h2 + s1 * h3 + p1 * h4 + y1 * h5;
  const cplx dy = (y0 * d0 + p0 * d1 + s0 * d2 + s1 * d3 + p1 * d4 + y1 * d5) / h;
  return {y, dy};
}

int SolutionField::sign_changes() const {
  int count = 0;
  double prev = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = values[i].real();
    if (v == 0.0) continue;
    if (prev != 0.0 && (v < 0.0) != (prev < 0.0)) ++count;
    prev = v;
  }
  return count;
}

std::string_view to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::Regular:
      return "regular";
    case SolutionKind::IrregularW:
      return "irregular_w";
    case SolutionKind::IrregularV:
      return "irregular_v";
  }
  return "unknown";
}

}  // namespace slspec
