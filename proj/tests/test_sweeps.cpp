#include <doctest.h>

#include <cmath>
#include <vector>

#include "dap/analytic.hpp"
#include "dap/errors.hpp"
#include "dap/sweeps.hpp"

using namespace dap;

TEST_CASE("log-spaced grid") {
  const std::vector<double> g = log_spaced_grid(1e-4, 1e-1, 4);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(1e-2).epsilon(1e-12));
  CHECK(g[3] == doctest::Approx(1e-1).epsilon(1e-12));

  const std::vector<double> one = log_spaced_grid(0.005, 0.05, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(0.005));
}

TEST_CASE("a single-point sweep yields one coherent row") {
  SystemParams params;
  SweepOptions opts;
  opts.trials = 1500;
  opts.seed = 3;
  const std::vector<double> grid = {0.005};
  const std::vector<SweepRow> rows = sweep_zeta(params, UserDistribution::uniform(), grid, opts);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ok);
  CHECK(rows[0].zeta == doctest::Approx(0.005));
  CHECK(rows[0].n_total == 26);
  CHECK(rows[0].q > 0.0);
  CHECK(rows[0].e_tau_u_sim > 0.0);
  CHECK(rows[0].e_tau_d_sim > 0.0);
  CHECK(rows[0].e_tau_u_analytic > 0.0);
  CHECK(rows[0].e_tau_d_analytic > 0.0);
  CHECK(std::abs(rows[0].e_tau_u_sim - rows[0].e_tau_u_analytic) < 0.08);
}

TEST_CASE("sweeps are reproducible for a fixed seed") {
  SystemParams params;
  SweepOptions opts;
  opts.trials = 800;
  opts.seed = 5;
  const std::vector<double> grid = log_spaced_grid(2e-3, 2e-2, 3);
  const auto a = sweep_zeta(params, UserDistribution::uniform(), grid, opts);
  opts.workers = 2;
  const auto b = sweep_zeta(params, UserDistribution::uniform(), grid, opts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].e_tau_u_sim == b[i].e_tau_u_sim);
    CHECK(a[i].e_tau_d_sim == b[i].e_tau_d_sim);
    CHECK(a[i].mean_n == b[i].mean_n);
  }
}

TEST_CASE("bisection finds a synthetic crossing") {
  // u and d cross exactly at zeta = 0.01 where both equal 1/2
  auto evaluate = [](double zeta) {
    const double u = -std::log10(zeta) / 4.0;
    const double d = 1.0 + std::log10(zeta) / 4.0;
    return std::make_pair(u, d);
  };
  const BalancePoint bp = find_balance_on(evaluate, 1e-4, 1e-1);
  CHECK(std::log10(bp.zeta_star) == doctest::Approx(-2.0).epsilon(1e-2));
  CHECK(bp.tau_star == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("bisection reports a missing crossing") {
  auto evaluate = [](double) { return std::make_pair(0.8, 0.2); };
  try {
    find_balance_on(evaluate, 1e-4, 1e-1);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.kind() == NumericalError::Kind::NoCrossing);
  }
}

TEST_CASE("the balance point reproduces its own throughputs") {
  SystemParams params;
  const BalancePoint bp = find_balance(params, UserDistribution::uniform(), Method::Analytic);
  CHECK(bp.zeta_star > 1e-4);
  CHECK(bp.zeta_star < 1e-1);
  SystemParams at = params;
  at.zeta = bp.zeta_star;
  const AnalyticModel model = analyze(at);
  // both throughputs near tau_star and near each other at the crossing
  CHECK(model.expected.tau_u == doctest::Approx(bp.tau_star).epsilon(0.02));
  CHECK(std::abs(model.expected.tau_u - model.expected.tau_d) < 0.02);
}

TEST_CASE("population sweep carries failures without aborting") {
  SystemParams params;
  const std::vector<int> ns = {26, 40};  // 40 users exceed the pole capacity badly
  const auto entries = sweep_n(params, UserDistribution::uniform(), ns, Method::Analytic);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].point.has_value());
  if (!entries[1].point.has_value()) CHECK_FALSE(entries[1].error.empty());
}
