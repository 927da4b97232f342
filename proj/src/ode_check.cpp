#include "slspec/ode_check.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <string>
#include <vector>

#include "slspec/errors.hpp"

namespace slspec {

namespace {

using State = std::array<double, 4>;  // Re y, Im y, Re y', Im y'

}  // namespace

double ode_cross_check(const Potential& q, Order l, const SolutionField& field, const OdeCheckOptions& opts) {
  namespace odeint = boost::numeric::odeint;
  const Eigen::Index n = field.size();
  if (n < 8) throw UsageError("ode_cross_check needs at least 8 grid points");

  const cplx lambda = field.lam.lambda();
  const double cent = l.centrifugal();
  auto rhs = [&](const State& s, State& ds, double x) {
    const cplx y(s[0], s[1]);
    const cplx ypp = (cent / (x * x) + q(x) - lambda) * y;
    ds[0] = s[2];
    ds[1] = s[3];
    ds[2] = ypp.real();
    ds[3] = ypp.imag();
  };

  const bool forward = field.kind == SolutionKind::Regular;
  std::vector<double> times(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) times[static_cast<std::size_t>(i)] = field.grid[forward ? i : n - 1 - i];
  const Eigen::Index start = forward ? 0 : n - 1;
  State state{field.values[start].real(), field.values[start].imag(), field.derivatives[start].real(),
              field.derivatives[start].imag()};

  std::vector<cplx> y(static_cast<std::size_t>(n)), yp(static_cast<std::size_t>(n));
  std::size_t seen = 0;
  double last_x = times.front();
  auto observer = [&](const State& s, double x) {
    const Eigen::Index i = forward ? static_cast<Eigen::Index>(seen) : n - 1 - static_cast<Eigen::Index>(seen);
    y[static_cast<std::size_t>(i)] = {s[0], s[1]};
    yp[static_cast<std::size_t>(i)] = {s[2], s[3]};
    last_x = x;
    ++seen;
  };

  // Regular fields start near x^{l+1} at tiny x and any error admitted there
  // grows with the solution, so the absolute tolerance follows the start data.
  const double start_size = std::abs(field.values[start]) + std::abs(field.derivatives[start]);
  const double abs_tol = opts.abs_tol * (start_size > 0.0 ? std::min(start_size, 1.0) : 1.0);
  auto stepper = odeint::make_controlled(abs_tol, opts.rel_tol, odeint::runge_kutta_fehlberg78<State>());
  const double dt0 = (forward ? 1.0 : -1.0) * 1e-3 * std::abs(times[1] - times[0]);
  try {
    odeint::integrate_times(stepper, rhs, state, times.begin(), times.end(), dt0, observer,
                            odeint::max_step_checker(100000));
  } catch (const std::exception& e) {
    throw IntegratorError("reference integrator stalled near x = " + std::to_string(last_x) + ": " + e.what(), last_x);
  }
  if (seen != times.size()) throw IntegratorError("reference integrator stopped early", last_x);

  double dy = 0.0, sy = 0.0, dyp = 0.0, syp = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    dy = std::max(dy, std::abs(y[k] - field.values[i]));
    sy = std::max(sy, std::abs(y[k]));
    dyp = std::max(dyp, std::abs(yp[k] - field.derivatives[i]));
    syp = std::max(syp, std::abs(yp[k]));
  }
  return std::max(sy > 0.0 ? dy / sy : dy, syp > 0.0 ? dyp / syp : dyp);
}

}  // namespace slspec
