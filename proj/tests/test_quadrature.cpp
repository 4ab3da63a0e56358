#include <doctest.h>

#include <cmath>

#include "dap/errors.hpp"
#include "dap/quadrature.hpp"

using namespace dap;

TEST_CASE("polynomials are integrated exactly") {
  auto r = integrate_adaptive([](double x) { return 3.0 * x * x; }, 0.0, 2.0, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(8.0).epsilon(1e-12));

  r = integrate_adaptive([](double x) { return x * x * x - x; }, -1.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("smooth transcendental integrand") {
  auto r = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  CHECK(r.error <= 1e-10);
}

TEST_CASE("peaked integrand needs adaptivity but converges") {
  // narrow Gaussian bump away from the interval center
  auto f = [](double x) { return std::exp(-5000.0 * (x - 0.123) * (x - 0.123)); };
  auto r = integrate_adaptive(f, 0.0, 1.0, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::sqrt(M_PI / 5000.0)).epsilon(1e-8));
}

TEST_CASE("degenerate interval and reversed handling") {
  auto r = integrate_adaptive([](double x) { return x; }, 1.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(0.0));
}

TEST_CASE("non-convergence is reported and thrown") {
  // |x - 1/3| has a kink; depth 0 forbids the refinement needed at 1e-15
  auto f = [](double x) { return std::abs(x - 1.0 / 3.0); };
  auto r = integrate_adaptive(f, 0.0, 1.0, 1e-15, 0);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(integrate_or_throw(f, 0.0, 1.0, 1e-15, 0), NumericalError);
  try {
    integrate_or_throw(f, 0.0, 1.0, 1e-15, 0);
  } catch (const NumericalError& e) {
    CHECK(e.kind() == NumericalError::Kind::QuadratureNonConvergence);
  }
}
