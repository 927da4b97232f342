#include "slspec/contour.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "slspec/errors.hpp"

namespace slspec {

void ContourRegion::validate() const {
  if (!(re_min < re_max)) throw ValidationError("region: re_min must be < re_max");
  if (!(im_min < im_max)) throw ValidationError("region: im_min must be < im_max");
  if (nodes_per_side < 32) throw ValidationError("region: nodes_per_side must be >= 32");
}

double ContourRegion::diameter() const { return std::hypot(re_max - re_min, im_max - im_min); }

bool ContourRegion::meets_positive_real_axis() const { return im_min <= 0.0 && im_max >= 0.0 && re_max > 0.0; }

WindingResult winding_number(const std::function<cplx(cplx)>& f, const ContourRegion& region,
                             const WindingOptions& opts) {
  region.validate();
  const double diam = region.diameter();
  const double h = opts.derivative_step * diam;
  const std::array<cplx, 5> corners{cplx(region.re_min, region.im_min), cplx(region.re_max, region.im_min),
                                    cplx(region.re_max, region.im_max), cplx(region.re_min, region.im_max),
                                    cplx(region.re_min, region.im_min)};

  // Nodes of a coarse pass are reused after doubling.
  std::map<std::pair<double, double>, std::pair<cplx, cplx>> cache;
  int evaluations = 0;
  auto sample = [&](cplx z) {
    const auto key = std::make_pair(z.real(), z.imag());
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const cplx fz = f(z);
    const cplx dfz = (f(z + h) - f(z - h)) / (2.0 * h);
    evaluations += 3;
    if (!std::isfinite(std::abs(fz)) || !std::isfinite(std::abs(dfz)))
      throw AccuracyError("non-finite function value on the contour at λ = (" + std::to_string(z.real()) + ", " +
                          std::to_string(z.imag()) + ")");
    if (std::abs(fz) <= opts.near_zero_fraction * diam * std::abs(dfz))
      throw ContourDegeneracyError("zero within " + std::to_string(opts.near_zero_fraction * diam) +
                                   " of the contour near λ = (" + std::to_string(z.real()) + ", " +
                                   std::to_string(z.imag()) + "); shift the region");
    return cache[key] = {fz, dfz};
  };

  WindingResult result;
  int n = region.nodes_per_side;
  for (int pass = 0; pass <= opts.max_doublings; ++pass, n *= 2) {
    cplx integral = 0.0;
    double max_phase_step = 0.0;
    cplx prev_f = 0.0;
    bool first = true;
    for (int side = 0; side < 4; ++side) {
      const cplx a = corners[side], b = corners[side + 1];
      const cplx step = (b - a) / double(n);
      for (int j = 0; j <= n; ++j) {
        const cplx z = j == n ? b : a + (b - a) * (double(j) / n);
        const auto [fz, dfz] = sample(z);
        const double weight = (j == 0 || j == n) ? 0.5 : 1.0;
        integral += weight * step * dfz / fz;
        if (!first) max_phase_step = std::max(max_phase_step, std::abs(std::arg(fz / prev_f)));
        prev_f = fz;
        first = false;
      }
    }
    result.raw = integral / cplx(0.0, 2.0 * std::numbers::pi);
    result.nodes_per_side = n;
    const double nearest = std::round(result.raw.real());
    if (std::abs(result.raw - nearest) < opts.integrality_window && max_phase_step < std::numbers::pi / 2) {
      result.count = static_cast<int>(nearest);
      result.evaluations = evaluations;
      return result;
    }
  }
  throw AccuracyError("winding integral " + std::to_string(result.raw.real()) + std::to_string(result.raw.imag()) +
                      "i not within " + std::to_string(opts.integrality_window) + " of an integer at " +
                      std::to_string(result.nodes_per_side) + " nodes per side");
}

std::function<cplx(cplx)> validation_polynomial(int degree) {
  if (degree < 1 || degree > 8) throw ValidationError("validation polynomial degree must be in [1, 8]");
  std::vector<double> roots;
  if (degree == 1) {
    roots.push_back(0.0);
  } else {
    for (int k = 0; k < degree; ++k) roots.push_back(-1.0 + 2.0 * k / (degree - 1));
  }
  return [roots](cplx z) {
    cplx p = 1.0;
    for (double r : roots) p *= z - r;
    return p;
  };
}

}  // namespace slspec
