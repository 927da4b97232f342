#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "slspec/errors.hpp"
#include "slspec/spectral.hpp"

using namespace slspec;
using C = std::complex<double>;

namespace {

const Potential kZero;
const Potential kBump = Potential::polynomial({0.0, 20.0, -20.0});
const Potential kRamp = Potential::table({0.0, 0.25, 0.5, 0.75, 1.0}, {0.0, 2.5, 5.0, 7.5, 10.0});

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("free Dirichlet eigenvalues are the squared roots of tan z = z") {
    const auto eig = dirichlet_eigenvalues(kZero, Order(1), 10, 1e4);
    REQUIRE(eig.values.size() == 10);
    for (int n = 1; n <= 10; ++n) {
      const double want = oracle::free_eigenvalue(n);
      CAPTURE(n);
      CHECK(std::abs(eig.values[n - 1] - want) / want < 1e-8);
    }
    CHECK(std::abs(eig.values[0] - 20.1907286) < 1e-6);
    for (double r : eig.residuals) CHECK(r < 1e-8);
  }

  TEST_CASE("property: eigenvalues approach ((n + 1/2)π)² from below") {
    const auto eig = dirichlet_eigenvalues(kZero, Order(1), 8, 1e4);
    for (int n = 1; n <= 8; ++n) {
      const double asym = std::pow((n + 0.5) * std::numbers::pi, 2);
      CHECK(eig.values[n - 1] < asym);
      // z_n = (n+1/2)π - 1/((n+1/2)π) + O(n^-3), so the gap in z² tends to 2.
      if (n == 8) CHECK(std::abs(asym - eig.values[n - 1] - 2.0) < 0.01);
    }
  }

  TEST_CASE("property: shift covariance μ_n(q + c) = μ_n(q) + c") {
    for (const Potential* q : {&kZero, &kBump, &kRamp}) {
      const auto base = dirichlet_eigenvalues(*q, Order(1), 5, 1e4);
      for (double c : {-3.0, 7.0}) {
        const auto moved = dirichlet_eigenvalues(q->shifted(c), Order(1), 5, 1e4);
        for (int n = 0; n < 5; ++n) CHECK(std::abs(moved.values[n] - base.values[n] - c) < 1e-8);
      }
    }
  }

  TEST_CASE("higher angular momentum orders the spectrum upward") {
    const auto l1 = dirichlet_eigenvalues(kBump, Order(1), 3, 1e4);
    const auto l3 = dirichlet_eigenvalues(kBump, Order(3), 3, 1e4);
    for (int n = 0; n < 3; ++n) CHECK(l3.values[n] > l1.values[n]);
  }

  TEST_CASE("search cap yields a partial result carrying what was found") {
    try {
      dirichlet_eigenvalues(kZero, Order(1), 10, 100.0);
      FAIL("expected PartialResultError");
    } catch (const PartialResultError& e) {
      REQUIRE(e.found().size() == 2);
      CHECK(std::abs(e.found()[0] - oracle::free_eigenvalue(1)) < 1e-7);
      CHECK(std::abs(e.found()[1] - oracle::free_eigenvalue(2)) < 1e-7);
    }
    CHECK_THROWS_AS(dirichlet_eigenvalues(kZero, Order(1), 0, 100.0), ValidationError);
  }

  TEST_CASE("flux is R-independent and equals -2i λ₀^{3/2}") {
    for (double lam0 : {1.0, 4.0, 9.0}) {
      const C want(0.0, -2.0 * std::pow(lam0, 1.5));
      for (const Potential* q : {&kZero, &kBump}) {
        for (double R : {1.0, 2.0, 5.0}) {
          const C f = flux(*q, Order(1), lam0, R);
          CHECK(std::abs(f.real()) < 1e-12);
          CHECK(std::abs(f - want) < 1e-10);
          CHECK(std::abs(flux(*q, Order(1), lam0, R, InhomKind::VOriginal)) < 1e-12);
        }
      }
    }
    CHECK_THROWS_AS(flux(kZero, Order(1), 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(flux(kZero, Order(1), 1.0, 0.5), DomainError);
  }

  TEST_CASE("independence is certified at shifted eigenvalues") {
    for (const Potential* q : {&kZero, &kBump, &kRamp}) {
      const auto shifted = shift_to_positive(*q, Order(1));
      const auto eig = dirichlet_eigenvalues(shifted.potential, Order(1), 5, 1e4);
      for (double mu : eig.values) {
        const auto rep = independence_certificate(shifted.potential, Order(1), mu);
        CAPTURE(mu);
        CHECK(rep.certified);
        CHECK(std::abs(rep.wronskian) > kCertThreshold);
        CHECK(rep.wronskian_spread < 1e-8);
        if (q == &kZero) CHECK(std::abs(rep.wronskian - 3.0) < 1e-10);
      }
    }
    CHECK_THROWS_AS(independence_certificate(kZero, Order(1), -1.0), DomainError);
  }

  TEST_CASE("shift_to_positive moves the ground state to at least delta") {
    // μ₁(-30) = z₁² - 30, so the shift is 31 - z₁².
    const auto r = shift_to_positive(Potential::constant(-30.0), Order(1));
    CHECK(std::abs(r.shift - (31.0 - oracle::free_eigenvalue(1))) < 1e-8);
    const auto mu = dirichlet_eigenvalues(r.potential, Order(1), 1, 1e4);
    CHECK(mu.values[0] >= 1.0 - 1e-8);
    // Idempotent once the spectrum is already high enough.
    const auto again = shift_to_positive(r.potential, Order(1));
    CHECK(std::abs(again.shift) < 1e-8);
    CHECK(shift_to_positive(kBump, Order(1)).shift == 0.0);
  }

  TEST_CASE("Wronskian helper rejects mismatched fields") {
    const auto a = regular_solution(kZero, Order(1), SpectralParameter(5.0));
    const auto b = regular_solution(kZero, Order(1), SpectralParameter(6.0));
    const auto c = regular_solution(kZero, Order(2), SpectralParameter(5.0));
    CHECK_THROWS_AS(wronskian(a, b, 0.5), UsageError);
    CHECK_THROWS_AS(wronskian(a, c, 0.5), UsageError);
    CHECK(std::abs(wronskian(a, a, 0.5)) < 1e-14);
  }

  TEST_CASE("F(λ) = W(φ, ψ̃) for the free problem is constant") {
    for (C lam : {C(5.0, 1.0), C(-20.0), C(50.0, -3.0)}) {
      CHECK(std::abs(wronskian_function(kZero, Order(1), lam, InhomKind::WCorrected) - 3.0) < 1e-10);
      CHECK(std::abs(wronskian_function(kZero, Order(1), lam, InhomKind::VOriginal) - 1.0) < 1e-10);
    }
  }

  TEST_CASE("zero counts of F in the right half-plane") {
    ContourRegion region{1.0, 100.0, -5.0, 5.0, 32};
    CHECK(wronskian_zero_count(kZero, Order(1), region, InhomKind::WCorrected).count == 0);
    CHECK(wronskian_zero_count(kZero, Order(1), region, InhomKind::VOriginal).count == 0);
    ContourRegion through_origin{0.0, 10.0, -1.0, 1.0, 32};
    CHECK_THROWS_AS(wronskian_zero_count(kZero, Order(1), through_origin, InhomKind::WCorrected),
                    ContourDegeneracyError);
    ContourRegion on_real_edge{-5.0, 1.0, 0.0, 1.0, 32};
    CHECK_THROWS_AS(wronskian_zero_count(kZero, Order(1), on_real_edge, InhomKind::WCorrected), ContourDegeneracyError);
    ContourRegion clear_of_origin{-1.0, 10.0, 0.5, 1.0, 32};
    CHECK(wronskian_zero_count(kZero, Order(1), clear_of_origin, InhomKind::WCorrected).count == 0);
  }

  TEST_CASE("growth of the outgoing solution along a ray stays within its bound") {
    const auto rep = bound_check(kBump, Order(1), std::numbers::pi / 2, 100.0, {0.25, 0.5, 1.0}, 12);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.failed_radii.empty());
    CHECK(rep.radii.size() == 12);
    for (const auto& row : rep.rows) {
      CAPTURE(row.x);
      CHECK(row.slope <= (2.0 - row.x) + 0.05);
      CHECK(row.within_bound);
    }
    CHECK_THROWS_AS(bound_check(kBump, Order(1), 0.0, 100.0, {0.5}), DomainError);
    CHECK_THROWS_AS(bound_check(kBump, Order(1), 1.0, 0.5, {0.5}), DomainError);
    CHECK_THROWS_AS(bound_check(kBump, Order(1), 1.0, 100.0, {}), ValidationError);
  }
}

TEST_SUITE("contour") {
  TEST_CASE("validation polynomials are counted exactly") {
    for (int degree = 1; degree <= 8; ++degree) {
      const auto r = winding_number(validation_polynomial(degree), ContourRegion{});
      CAPTURE(degree);
      CHECK(r.count == degree);
      CHECK(std::abs(r.raw - double(degree)) < 0.05);
    }
    CHECK_THROWS_AS(validation_polynomial(0), ValidationError);
    CHECK_THROWS_AS(validation_polynomial(9), ValidationError);
  }

  TEST_CASE("regions that exclude the roots count zero") {
    CHECK(winding_number(validation_polynomial(4), ContourRegion{2.0, 5.0, -1.0, 1.0, 32}).count == 0);
    CHECK(winding_number(validation_polynomial(2), ContourRegion{0.5, 1.5, -0.5, 0.5, 32}).count == 1);
  }

  TEST_CASE("invalid regions") {
    CHECK_THROWS_AS(ContourRegion({1.0, 1.0, -1.0, 1.0, 32}).validate(), ValidationError);
    CHECK_THROWS_AS(ContourRegion({0.0, 1.0, 1.0, -1.0, 32}).validate(), ValidationError);
    CHECK_THROWS_AS(ContourRegion({0.0, 1.0, -1.0, 1.0, 16}).validate(), ValidationError);
    CHECK(ContourRegion{0.0, 3.0, 0.0, 4.0, 32}.diameter() == 5.0);
    CHECK(ContourRegion{-1.0, 3.0, -1.0, 1.0, 32}.meets_positive_real_axis());
    CHECK_FALSE(ContourRegion{-3.0, -1.0, -1.0, 1.0, 32}.meets_positive_real_axis());
  }

  TEST_CASE("a root on the contour is reported as degenerate") {
    // λ² - 1 has a root at 1, on the right edge.
    CHECK_THROWS_AS(winding_number(validation_polynomial(2), ContourRegion{-0.5, 1.0, -1.0, 1.0, 32}),
                    ContourDegeneracyError);
  }

  TEST_CASE("an unresolved phase without refinement is an accuracy error") {
    WindingOptions opts;
    opts.max_doublings = 0;
    auto f = [](C z) { return std::pow(z, 40); };
    CHECK_THROWS_AS(winding_number(f, ContourRegion{-1.0, 1.0, -1.0, 1.0, 32}, opts), AccuracyError);
    opts.max_doublings = 5;
    CHECK(winding_number(f, ContourRegion{-1.0, 1.0, -1.0, 1.0, 32}, opts).count == 40);
  }

  TEST_CASE("property: the count is additive over adjacent regions") {
    const auto f = validation_polynomial(5);
    const int whole = winding_number(f, ContourRegion{-2.0, 2.0, -1.0, 1.0, 32}).count;
    const int left = winding_number(f, ContourRegion{-2.0, 0.25, -1.0, 1.0, 32}).count;
    const int right = winding_number(f, ContourRegion{0.25, 2.0, -1.0, 1.0, 32}).count;
    CHECK(left + right == whole);
  }
}
