#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dap/core_model.hpp"
#include "dap/errors.hpp"
#include "dap/interference.hpp"
#include "dap/rng.hpp"

using namespace dap;

namespace {

UserRealization make_user(double t_macro, double t_micro, Tier tier) {
  UserRealization u;
  u.t_macro = t_macro;
  u.t_micro = t_micro;
  u.tier = tier;
  return u;
}

}  // namespace

TEST_CASE("pole capacity") {
  CHECK(pole_capacity(128.0, 5.011872336272722) ==
        doctest::Approx(128.0 / 5.011872336272722 + 1.0).epsilon(1e-12));
  CHECK(pole_capacity(2.0, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("single-user interference ratios") {
  CHECK(interference_im(make_user(0.02, 0.5, Tier::Micro)) == doctest::Approx(0.04));
  CHECK_THROWS_AS(interference_im(make_user(0.02, 0.5, Tier::Macro)), ValidationError);

  std::vector<UserRealization> macros = {make_user(1.0, 0.25, Tier::Macro),
                                         make_user(2.0, 0.5, Tier::Macro)};
  CHECK(interference_imu(macros) == doctest::Approx(0.5));
  CHECK(interference_imu({}) == doctest::Approx(0.0));

  macros[1].tier = Tier::Micro;
  CHECK_THROWS_AS(interference_imu(macros), ValidationError);
}

TEST_CASE("max_rate direct values") {
  const double K = pole_capacity(128.0, 5.011872336272722);
  const double gmu = 6.998419960022734;
  // interference product 1: r = (K - 26 + 1) / gamma_mu
  CHECK(max_rate(K, 26, 1, gmu, 1.0, 1.0) == doctest::Approx((K - 25.0) / gmu).epsilon(1e-12));
  // weak interference caps at 1
  CHECK(max_rate(K, 26, 1, gmu, 0.001, 0.01) == doctest::Approx(1.0));
  // vanishing interference product with positive load
  CHECK(max_rate(K, 26, 26, gmu, 0.0, 0.0) == doctest::Approx(1.0));
  // infeasible load
  CHECK(max_rate(20.0, 26, 2, gmu, 0.5, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("max_rate monotonicity") {
  const double K = 26.5394;
  const double gmu = 6.998419960022734;
  double prev = -1.0;
  for (int n = 1; n <= 26; ++n) {
    const double r = max_rate(K, 26, n, gmu, 0.04, 8.0);
    CHECK(r >= prev);
    prev = r;
  }
  prev = 2.0;
  for (double i_mu : {0.5, 1.0, 4.0, 16.0, 64.0}) {
    const double r = max_rate(K, 26, 3, gmu, 0.05, i_mu);
    CHECK(r <= prev);
    prev = r;
  }
}

TEST_CASE("power-control solution values") {
  SystemParams params;
  // n_macro = 25, r chosen so the micro equation decouples weakly
  auto sol = solve_powers(params, 25, 0.2, 0.0, 0.0);
  REQUIRE(sol.has_value());
  // G S_M = gamma_M (24 S_M + etaW)  =>  S_M = gamma_M / (G - 24 gamma_M)
  CHECK(sol->s_macro == doctest::Approx(5.011872336272722 / (128.0 - 24.0 * 5.011872336272722))
                            .epsilon(1e-12));
  CHECK(sol->s_micro > 0.0);

  // N_M beyond pole capacity: macro power goes nonpositive
  CHECK_FALSE(solve_powers(params, 30, 0.2, 0.01, 1.0).has_value());
}

TEST_CASE("power-control oracle agrees with the closed-form feasibility test") {
  SystemParams params;
  const double K = params.pole_capacity();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ur(0.01, 1.0);
  std::uniform_real_distribution<double> ui(0.0, 2.0);
  std::uniform_int_distribution<int> un(1, 26);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n_macro = un(rng);
    const double r = ur(rng);
    const double i_m = ui(rng) * 0.05;
    const double i_mu = ui(rng) * 10.0;
    const bool feas = feasible(K, n_macro, r, params.gamma_micro, i_m, i_mu);
    const bool solved = solve_powers(params, n_macro, r, i_m, i_mu).has_value();
    CHECK(feas == solved);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("max_rate is the supremum of feasible rates") {
  SystemParams params;
  const double K = params.pole_capacity();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(u01(rng) * 25.0);
    const double i_m = u01(rng) * params.delta();
    const double i_mu = u01(rng) * 12.0;
    const double r = max_rate(K, params.n_total, n, params.gamma_micro, i_m, i_mu);
    const int n_macro = params.n_total - n;
    if (r > 0.0) CHECK(feasible(K, n_macro, r, params.gamma_micro, i_m, i_mu));
    if (r < 1.0 && r > 0.0) {
      CHECK_FALSE(feasible(K, n_macro, r * (1.0 + 1e-6), params.gamma_micro, i_m, i_mu));
    }
  }
}

TEST_CASE("sampled users respect the selection-rule interference bounds") {
  SystemParams params;
  params.zeta = 0.005;
  const double delta = params.delta();
  for (int t = 0; t < 4000; ++t) {
    std::mt19937_64 rng = make_trial_rng(29, static_cast<std::uint64_t>(t));
    const UserRealization u = sample_user(params, UserDistribution::uniform(), rng);
    if (u.tier == Tier::Micro) {
      CHECK(interference_im(u) <= delta);
    } else {
      CHECK(u.t_micro / u.t_macro < 1.0 / delta);
    }
  }
}
