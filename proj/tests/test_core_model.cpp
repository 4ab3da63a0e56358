#include <doctest.h>

#include <cmath>

#include "dap/core_model.hpp"
#include "dap/errors.hpp"
#include "dap/rng.hpp"

using namespace dap;

TEST_CASE("path_gain matches both branches at the breakpoint") {
  CHECK(path_gain(100.0, 100.0, 1.0, 0.0) == doctest::Approx(1.0));
  // approach from both sides
  CHECK(path_gain(100.0 - 1e-9, 100.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(path_gain(100.0 + 1e-9, 100.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("path_gain direct substitution") {
  CHECK(path_gain(200.0, 100.0, 1.0, 0.0) == doctest::Approx(0.0625));         // (1/2)^4
  CHECK(path_gain(50.0, 100.0, 2.0, 10.0) == doctest::Approx(80.0));           // 2*4*10
}

TEST_CASE("path_gain rejects non-positive inputs") {
  CHECK_THROWS_AS(path_gain(0.0, 100.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(path_gain(-5.0, 100.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(path_gain(10.0, 0.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("path_gain is strictly decreasing in d and log-linear in chi") {
  double prev = path_gain(1.0, 100.0, 1.0, 3.0);
  for (double d = 10.0; d <= 1000.0; d += 10.0) {
    const double g = path_gain(d, 100.0, 1.0, 3.0);
    CHECK(g < prev);
    prev = g;
  }
  // slope 1/10 in log10 units
  for (double chi : {-20.0, -3.0, 0.0, 7.5, 18.0}) {
    const double base = path_gain(250.0, 100.0, 2.0, 0.0);
    CHECK(std::log10(path_gain(250.0, 100.0, 2.0, chi) / base) == doctest::Approx(chi / 10.0));
  }
}

TEST_CASE("select_base rule and tie handling") {
  CHECK(select_base(1.0, 1.0, 0.5) == Tier::Macro);
  CHECK(select_base(1.0, 1.0, 2.0) == Tier::Micro);
  // exact tie goes to Micro
  CHECK(select_base(0.5 * 3.0, 3.0, 0.5) == Tier::Micro);
}

TEST_CASE("select_base depends only on the gain ratio") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double tm = u(rng), tmu = u(rng), delta = u(rng), c = u(rng);
    CHECK(select_base(tm, tmu, delta) == select_base(c * tm, c * tmu, delta));
  }
}

TEST_CASE("raising zeta never moves a user from Micro to Macro") {
  SystemParams params;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    SystemParams p = params;
    p.zeta = 0.002;
    std::mt19937_64 r1 = rng;  // same realization under both zetas
    const UserRealization lo = sample_user(p, UserDistribution::uniform(), r1);
    p.zeta = 0.02;
    std::mt19937_64 r2 = rng;
    const UserRealization hi = sample_user(p, UserDistribution::uniform(), r2);
    if (lo.tier == Tier::Micro) CHECK(hi.tier == Tier::Micro);
    rng.discard(16);
  }
}

TEST_CASE("empirical mean micro count is nondecreasing in zeta") {
  SystemParams params;
  double prev = -1.0;
  for (double zeta : {0.001, 0.005, 0.02, 0.08}) {
    SystemParams p = params;
    p.zeta = zeta;
    int micro = 0;
    for (int t = 0; t < 4000; ++t) {
      std::mt19937_64 rng = make_trial_rng(3, static_cast<std::uint64_t>(t));
      if (sample_user(p, UserDistribution::uniform(), rng).tier == Tier::Micro) ++micro;
    }
    CHECK(micro >= prev);
    prev = micro;
  }
}

TEST_CASE("uniform positions cover the square with uniform marginals") {
  SystemParams params;
  std::mt19937_64 rng(5);
  double sum_x = 0.0, sum_y = 0.0;
  int in_left_half = 0;
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    const UserRealization u = sample_user(params, UserDistribution::uniform(), rng);
    CHECK(std::abs(u.position.x) <= params.region_side_L / 2.0);
    CHECK(std::abs(u.position.y) <= params.region_side_L / 2.0);
    sum_x += u.position.x;
    sum_y += u.position.y;
    if (u.position.x < 0.0) ++in_left_half;
  }
  // mean within 5 standard errors of 0; half-count within 5 sigma of 1/2
  const double se = params.region_side_L / std::sqrt(12.0) / std::sqrt(samples);
  CHECK(std::abs(sum_x / samples) < 5.0 * se);
  CHECK(std::abs(sum_y / samples) < 5.0 * se);
  CHECK(std::abs(in_left_half - samples / 2.0) < 5.0 * std::sqrt(samples) / 2.0);
}

TEST_CASE("hotspot with fraction 1 confines positions to the disc") {
  SystemParams params;
  std::mt19937_64 rng(9);
  const UserDistribution dist = UserDistribution::hotspot(1.0, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const UserRealization u = sample_user(params, dist, rng);
    const double d = std::hypot(u.position.x - params.base_separation_D, u.position.y);
    CHECK(d <= 50.0);
  }
}

TEST_CASE("equal shadowing and distance leaves only the gain ratio") {
  // With b_M = b_mu, chi_M = chi_mu and equal distances, T_M / T_mu = h.
  const double h = 10.0;
  for (double d : {30.0, 100.0, 420.0}) {
    const double ratio = path_gain(d, 100.0, h, 4.2) / path_gain(d, 100.0, 1.0, 4.2);
    CHECK(ratio == doctest::Approx(h));
  }
}

TEST_CASE("parameter validation names the offending field") {
  SystemParams params;
  params.region_side_L = -1.0;
  CHECK_THROWS_WITH_AS(params.validate(), doctest::Contains("region_side_L"), ValidationError);

  SystemParams far = SystemParams{};
  far.base_separation_D = 600.0;  // D >= L/2
  CHECK_THROWS_AS(far.validate(), ValidationError);

  UserDistribution bad = UserDistribution::hotspot(1.5, 100.0);
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  UserDistribution no_radius = UserDistribution::hotspot(0.5, 0.0);
  CHECK_THROWS_AS(no_radius.validate(), ValidationError);
}
