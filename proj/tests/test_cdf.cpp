#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dap/cdf.hpp"
#include "dap/math.hpp"

using namespace dap;

TEST_CASE("empirical cdf step values") {
  EmpiricalCdf f({0.2, 0.5, 1.0});
  CHECK(f(0.1) == doctest::Approx(0.0));
  CHECK(f(0.2) == doctest::Approx(1.0 / 3.0));
  CHECK(f(0.5) == doctest::Approx(2.0 / 3.0));
  CHECK(f.left(0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(f(0.7) == doctest::Approx(2.0 / 3.0));
  CHECK(f(1.0) == doctest::Approx(1.0));
  CHECK(f(5.0) == doctest::Approx(1.0));
}

TEST_CASE("weights behave like sample duplication") {
  EmpiricalCdf weighted({0.1, 0.4, 0.9}, {2.0, 1.0, 1.0});
  EmpiricalCdf duplicated({0.1, 0.1, 0.4, 0.9});
  for (double x : {0.0, 0.1, 0.25, 0.4, 0.6, 0.9, 1.2}) {
    CHECK(weighted(x) == doctest::Approx(duplicated(x)));
    CHECK(weighted.left(x) == doctest::Approx(duplicated.left(x)));
  }
}

TEST_CASE("ks distance between empirical cdfs") {
  EmpiricalCdf a({0.2, 0.5, 1.0});
  CHECK(ks_distance(a, a) == doctest::Approx(0.0));

  // single atoms shifted: distributions disjoint, distance 1
  EmpiricalCdf p({0.3});
  EmpiricalCdf q({0.4});
  CHECK(ks_distance(p, q) == doctest::Approx(1.0));

  // shared support, 10% of mass moved
  std::vector<double> s1, s2;
  for (int i = 0; i < 10; ++i) {
    s1.push_back(0.1 * (i + 1));
    s2.push_back(0.1 * (i + 1));
  }
  s2[9] = 2.0;  // move the top sample far right
  CHECK(ks_distance(EmpiricalCdf(s1), EmpiricalCdf(s2)) == doctest::Approx(0.1));
}

TEST_CASE("ks distance against a functional cdf with an atom") {
  // G: uniform on [0, 1/2] with an atom of mass 1/2 at 1
  DistributionCdf g;
  g.cdf = [](double x) {
    if (x < 0.0) return 0.0;
    if (x < 0.5) return x;
    if (x < 1.0) return 0.5;
    return 1.0;
  };
  g.cdf_left = [&g](double x) { return x == 1.0 ? 0.5 : g.cdf(std::nexttoward(x, -1e300)); };
  g.atoms = {1.0};

  // empirical sample exactly matching: half at 1, half spread low
  EmpiricalCdf e({0.05, 0.15, 0.25, 0.35, 0.45, 1.0, 1.0, 1.0, 1.0, 1.0});
  // spread-low part deviates by at most 0.05 from the uniform piece
  CHECK(ks_distance(e, g) <= 0.05 + 1e-12);

  // all mass below the atom: the gap at x = 1- is the full atom mass
  EmpiricalCdf low({0.1, 0.2, 0.3, 0.4});
  CHECK(ks_distance(low, g) >= 0.5 - 1e-12);
}

TEST_CASE("empirical cdf converges to the generating normal cdf") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> s;
  for (int i = 0; i < 20000; ++i) s.push_back(nd(rng));
  EmpiricalCdf e(std::move(s));
  DistributionCdf g;
  g.cdf = [](double x) { return normal_cdf(x); };
  g.cdf_left = g.cdf;
  // DKW: P(KS > eps) <= 2 exp(-2 n eps^2); eps = 0.02 at n = 20000 is ~ 3e-7
  CHECK(ks_distance(e, g) < 0.02);
}
