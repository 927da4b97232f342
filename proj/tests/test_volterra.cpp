#include <doctest.h>

#include <cmath>
#include <vector>

#include "slspec/errors.hpp"
#include "slspec/ode_check.hpp"
#include "slspec/volterra.hpp"

using namespace slspec;
using C = std::complex<double>;

namespace {

const Potential kBump = Potential::polynomial({0.0, 20.0, -20.0});
const Potential kRamp = Potential::table({0.0, 0.25, 0.5, 0.75, 1.0}, {0.0, 2.5, 5.0, 7.5, 10.0});

double max_abs(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }

// Relative sup-norm distance between a field and a reference evaluated on its grid.
template <typename Ref>
std::pair<double, double> distance(const SolutionField& f, Ref&& ref) {
  double dv = 0.0, dd = 0.0;
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    const FreeValue r = ref(f.grid[k]);
    dv = std::max(dv, std::abs(f.values[k] - r.value));
    dd = std::max(dd, std::abs(f.derivatives[k] - r.derivative));
  }
  return {dv / max_abs(f.values), dd / max_abs(f.derivatives)};
}

}  // namespace

TEST_SUITE("volterra") {
  TEST_CASE("q = 0 reproduces the free solutions") {
    const Potential zero;
    for (C lam : {C(30.0), C(5.0, 3.0), C(-50.0)}) {
      const SpectralParameter p(lam);
      for (int l : {1, 3}) {
        const auto phi = regular_solution(zero, Order(l), p);
        auto [a, b] = distance(phi, [&](double x) { return u_free(Order(l), x, p); });
        CHECK(a < 1e-12);
        CHECK(b < 1e-12);
        const auto psw = irregular_solution(zero, Order(l), p, InhomKind::WCorrected);
        std::tie(a, b) = distance(psw, [&](double x) { return w_free(Order(l), x, p); });
        CHECK(a < 1e-12);
        CHECK(b < 1e-12);
        const auto psv = irregular_solution(zero, Order(l), p, InhomKind::VOriginal);
        std::tie(a, b) = distance(psv, [&](double x) { return v_free(Order(l), x, p); });
        CHECK(a < 1e-12);
        CHECK(b < 1e-12);
      }
    }
  }

  TEST_CASE("q ≡ c: the regular solution is u at λ - c") {
    for (double c : {-40.0, 7.0, 150.0})
      for (C lam : {C(30.0), C(2.0, -9.0)}) {
        const auto phi = regular_solution(Potential::constant(c), Order(1), SpectralParameter(lam));
        const SpectralParameter shifted(lam - c);
        const auto [a, b] = distance(phi, [&](double x) { return u_free(Order(1), x, shifted); });
        CAPTURE(c);
        CAPTURE(lam);
        CHECK(a < 1e-10);
        CHECK(b < 1e-10);
      }
  }

  TEST_CASE("q ≡ c at high l, including coarse fixed meshes") {
    for (int l : {4, 6, 8, 10, 12})
      for (int cells : {0, 48}) {
        MeshSpec m;
        m.cells = cells;
        const SpectralParameter p(C(60.0, 10.0));
        const auto phi = regular_solution(Potential::constant(1.0), Order(l), p, m);
        const SpectralParameter shifted(p.lambda() - 1.0);
        double worst = 0.0;
        for (Eigen::Index k = 0; k < phi.size(); ++k) {
          const C u = u_free(Order(l), phi.grid[k], shifted).value;
          worst = std::max(worst, std::abs(phi.values[k] - u) / std::abs(u));
        }
        CAPTURE(l);
        CAPTURE(cells);
        CHECK(worst < 1e-12);
      }
  }

  TEST_CASE("q ≡ c: the irregular solution matches its Cauchy data at x = 1") {
    // ψ̃ solves the free equation at λ - c with ψ̃(1) = f(1), ψ̃'(1) = f'(1), so
    // ψ̃ = A u + B v with A = f v' - f' v and B = u f' - u' f at x = 1.
    for (double c : {-25.0, 12.0})
      for (C lam : {C(40.0), C(-10.0, 15.0)})
        for (InhomKind inhom : {InhomKind::WCorrected, InhomKind::VOriginal}) {
          const SpectralParameter p(lam), s(lam - c);
          const auto f1 = inhom == InhomKind::WCorrected ? w_free(Order(1), 1.0, p) : v_free(Order(1), 1.0, p);
          const auto u1 = u_free(Order(1), 1.0, s), v1 = v_free(Order(1), 1.0, s);
          const C A = f1.value * v1.derivative - f1.derivative * v1.value;
          const C B = u1.value * f1.derivative - u1.derivative * f1.value;
          const auto psi = irregular_solution(Potential::constant(c), Order(1), p, inhom);
          const auto [a, b] = distance(psi, [&](double x) {
            const auto u = u_free(Order(1), x, s), v = v_free(Order(1), x, s);
            return FreeValue{A * u.value + B * v.value, A * u.derivative + B * v.derivative};
          });
          CAPTURE(c);
          CAPTURE(lam);
          CHECK(a < 1e-9);
          CHECK(b < 1e-9);
        }
  }

  TEST_CASE("bump potential: residual and independent integration agree") {
    for (C lam : {C(30.0), C(5.0, 3.0), C(-50.0), C(0.0, 400.0), C(300.0), C(50.0, -20.0)}) {
      const SpectralParameter p(lam);
      CAPTURE(lam);
      const auto phi = regular_solution(kBump, Order(1), p);
      CHECK(phi.residual_estimate < 1e-8);
      CHECK(ode_cross_check(kBump, Order(1), phi) < 1e-8);
      const auto psi = irregular_solution(kBump, Order(1), p, InhomKind::WCorrected);
      CHECK(psi.residual_estimate < 1e-8);
      CHECK(ode_cross_check(kBump, Order(1), psi) < 1e-8);
    }
  }

  TEST_CASE("table potential with kinks at higher l") {
    for (int l : {2, 4, 6, 10}) {
      const SpectralParameter p(C(60.0, 10.0));
      const auto phi = regular_solution(kRamp, Order(l), p);
      CHECK(ode_cross_check(kRamp, Order(l), phi) < 1e-8);
      const auto psi = irregular_solution(kRamp, Order(l), p, InhomKind::WCorrected);
      CHECK(ode_cross_check(kRamp, Order(l), psi) < 1e-8);
    }
  }

  TEST_CASE("the irregular equation needs the minus sign") {
    MeshSpec mesh;
    mesh.cells = 64;
    const SpectralParameter p(30.0);
    const auto good = detail::irregular_solution_signed(kBump, Order(1), p, InhomKind::WCorrected,
                                                        detail::kIrregularVolterraSign, mesh, {});
    const auto bad = detail::irregular_solution_signed(kBump, Order(1), p, InhomKind::WCorrected,
                                                       -detail::kIrregularVolterraSign, mesh, {});
    CHECK(good.residual_estimate < 1e-8);
    CHECK(bad.residual_estimate > 1e-2);
    CHECK(ode_cross_check(kBump, Order(1), bad) > 1e-3);
    CHECK_THROWS_AS(detail::irregular_solution_signed(kBump, Order(1), p, InhomKind::WCorrected, 0, mesh, {}),
                    UsageError);
  }

  TEST_CASE("irregular solutions carry the free Cauchy data at x = 1") {
    const SpectralParameter p(C(20.0, 4.0));
    const auto psi = irregular_solution(kBump, Order(1), p, InhomKind::WCorrected);
    const auto w = w_free(Order(1), 1.0, p);
    CHECK(psi.x_max() == 1.0);
    CHECK(psi.values[psi.size() - 1] == w.value);
    CHECK(psi.derivatives[psi.size() - 1] == w.derivative);
  }

  TEST_CASE("regular solution is normalized like x^{l+1} at the origin") {
    for (int l : {1, 2, 5}) {
      const auto phi = regular_solution(kBump, Order(l), SpectralParameter(80.0));
      for (int k = 0; k < 3; ++k) {
        const double x = phi.grid[k];
        CHECK(std::abs(phi.values[k] / std::pow(x, l + 1) - 1.0) < 1e-3);
      }
    }
  }

  TEST_CASE("Picard iteration stops below its tolerance and reports failure") {
    SolverOptions opts;
    const auto phi = regular_solution(kBump, Order(1), SpectralParameter(30.0), {}, opts);
    CHECK(phi.picard_increment < opts.tol_picard);
    CHECK(phi.picard_iterations > 1);
    opts.max_iters = 1;
    CHECK_THROWS_AS(regular_solution(kBump, Order(1), SpectralParameter(30.0), {}, opts), ConvergenceError);
  }

  TEST_CASE("property: error falls at least quadratically under mesh refinement") {
    const SpectralParameter p(C(40.0, 5.0));
    const auto reference = regular_solution(kBump, Order(1), p);
    auto err = [&](int cells) {
      MeshSpec m;
      m.cells = cells;
      m.nodes_per_cell = 2;
      const auto f = regular_solution(kBump, Order(1), p, m);
      return std::abs(f.value_at(1.0) - reference.value_at(1.0)) / std::abs(reference.value_at(1.0));
    };
    // Two nodes per cell keep the discretization error well above rounding.
    const double e1 = err(64), e2 = err(128), e3 = err(256);
    const double p1 = std::log2(e1 / e2), p2 = std::log2(e2 / e3);
    CAPTURE(e1);
    CAPTURE(e2);
    CAPTURE(e3);
    CHECK(p1 >= 1.8);
    CHECK(p2 >= 1.8);
  }

  TEST_CASE("Cauchy kernel K(x,t) = v(x)u(t) - u(x)v(t)") {
    const SpectralParameter p(C(12.0, 3.0));
    for (double x : {0.1, 0.6}) {
      CHECK(std::abs(cauchy_kernel(Order(1), x, x, p)) < 1e-14);
      const double h = 1e-6;
      const C dk = (cauchy_kernel(Order(1), x, x + h, p) - cauchy_kernel(Order(1), x, x - h, p)) / (2 * h);
      CHECK(std::abs(dk + 1.0) < 1e-6);
      CHECK(std::abs(cauchy_kernel(Order(1), x, 0.3, p) + cauchy_kernel(Order(1), 0.3, x, p)) < 1e-14);
    }
    CHECK_THROWS_AS(cauchy_kernel(Order(1), 0.5, 0.2, SpectralParameter(0.0)), DomainError);
  }

  TEST_CASE("off-grid interpolation and range errors") {
    const SpectralParameter p(C(25.0, 2.0));
    const auto phi = regular_solution(Potential(), Order(1), p);
    for (double x : {0.123, 0.5001, 0.987}) {
      const auto u = u_free(Order(1), x, p);
      CHECK(std::abs(phi.value_at(x) - u.value) / std::abs(u.value) < 1e-8);
      CHECK(std::abs(phi.derivative_at(x) - u.derivative) / std::abs(u.derivative) < 1e-7);
    }
    CHECK_THROWS_AS(phi.cauchy_at(1.5), UsageError);
    CHECK_THROWS_AS(irregular_solution(kBump, Order(1), SpectralParameter(0.0), InhomKind::WCorrected),
                    DomainError);
    MeshSpec bad;
    bad.breakpoints = {1.2};
    CHECK_THROWS_AS(regular_solution(kBump, Order(1), p, bad), UsageError);
  }

  TEST_CASE("breakpoints appear on the output grid") {
    MeshSpec m;
    m.breakpoints = {0.2, 0.5, 0.9};
    const auto psi = irregular_solution(kBump, Order(1), SpectralParameter(30.0), InhomKind::WCorrected, m);
    for (double b : m.breakpoints) {
      bool found = false;
      for (Eigen::Index k = 0; k < psi.size(); ++k) found = found || psi.grid[k] == b;
      CHECK(found);
    }
  }

  TEST_CASE("sign changes count the interior zeros of u at real λ") {
    // u at l = 1 vanishes where tan(x√λ) = x√λ; λ = 400 gives roots at 4.49, 7.73, 10.90, 14.07, 17.22.
    const auto phi = regular_solution(Potential(), Order(1), SpectralParameter(400.0));
    CHECK(phi.sign_changes() == 5);
  }
}

TEST_SUITE("ode_check") {
  TEST_CASE("free and constant potentials") {
    const auto phi = regular_solution(Potential(), Order(1), SpectralParameter(C(30.0, 5.0)));
    CHECK(ode_cross_check(Potential(), Order(1), phi) < 1e-10);
    const auto q5 = Potential::constant(5.0);
    const auto psi = irregular_solution(q5, Order(2), SpectralParameter(-20.0), InhomKind::VOriginal);
    CHECK(ode_cross_check(q5, Order(2), psi) < 1e-8);
  }

  TEST_CASE("needs at least eight grid points") {
    MeshSpec m;
    m.cells = 4;
    m.max_cell_ratio = 1e9;
    const auto psi = irregular_solution(Potential(), Order(1), SpectralParameter(9.0), InhomKind::WCorrected, m);
    REQUIRE(psi.size() < 8);
    CHECK_THROWS_AS(ode_cross_check(Potential(), Order(1), psi), UsageError);
  }
}
