#pragma once

#include <memory>
#include <vector>

#include "dap/cdf.hpp"
#include "dap/params.hpp"

namespace dap {

// (m, sigma) of ln X for a lognormal X.
struct LognormalParams {
  double m = 0.0;
  double sigma = 0.0;
};

// Moment matching: m = ln(E1^4 / E2) / 2, sigma = sqrt(ln(E2 / E1^2)).
// Requires E1 > 0 and E2 >= E1^2.
LognormalParams lognormal_from_moments(double e1, double e2);

// Integrates f(x, y) against the user-position density (uniform square, or
// the uniform/disc hotspot mixture) to an absolute tolerance.
class PositionMeasure {
 public:
  PositionMeasure(const SystemParams& params, const UserDistribution& dist);
  ~PositionMeasure();
  PositionMeasure(PositionMeasure&&) noexcept;
  PositionMeasure& operator=(PositionMeasure&&) noexcept;

  double integrate(const std::function<double(double, double)>& f, double abs_tol) const;
  // Two-pass wrapper: coarse estimate, then refine to a relative tolerance.
  double integrate_rel(const std::function<double(double, double)>& f, double rel_tol) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Probability that a single user selects the microcell:
//   q = integral over positions of Phi(10 log10(delta Tmu / TM) / sqrt(sM^2 + smu^2)),
// with deterministic (chi = 0) path gains. Absolute tolerance 1e-5.
double selection_probability(const SystemParams& params,
                             const UserDistribution& dist = UserDistribution::uniform());

struct TermMoments {
  double e1 = 0.0;
  double e2 = 0.0;
};

struct ConditionalTermMoments {
  double q = 0.0;           // single-user Micro probability
  TermMoments macro_term;   // t = T_mu/T_M | Macro (t < 1/delta)
  TermMoments i_m;          // I_M = T_M/T_mu | Micro (I_M <= delta)
};

// Truncated-lognormal partial moments of the per-user interference terms,
// integrated over position and normalized by the conditioning probability.
ConditionalTermMoments conditional_term_moments(
    const SystemParams& params, const UserDistribution& dist = UserDistribution::uniform());

// I_mu as a sum of N_M i.i.d. terms:
//   E{I_mu} = N_M E{t}, E{I_mu^2} = N_M E{t^2} + N_M (N_M - 1) E{t}^2.
TermMoments compose_imu_moments(int n_macro, const TermMoments& term);

// Binomial tier counts p_n = C(N, n) q^n (1-q)^(N-n).
struct TierCountDistribution {
  std::vector<double> p;  // index 0..N
  double q = 0.0;
};
TierCountDistribution binomial_tier_counts(int n_total, double q);

// Conditional distribution of r given n: truncated lognormal with an atom at
// 1, degenerating to point masses when interference vanishes (n = N) or the
// load is infeasible (K - N + n <= 0), and to a step when sigma_z = 0.
struct RateDistribution {
  enum class Kind { TruncatedLognormal, UnitMass, ZeroMass, Step };
  Kind kind = Kind::UnitMass;
  double mu_z = 0.0;
  double sigma_z = 0.0;

  double cdf(double r) const;
  double cdf_left(double r) const;
  double mean() const;
  double atom_at_one() const;
};

RateDistribution rate_cdf_given_n(const SystemParams& params, int n, const LognormalParams& ln_im,
                                  const LognormalParams& ln_imu);

// Weighted mixture of per-n conditional CDFs, possibly scaled per component
// (tau_u uses F(n t | n)). Exposes a DistributionCdf view for KS tests.
class MixtureCdf {
 public:
  struct Component {
    double weight;
    double scale;  // cdf contribution is weight * dist.cdf(scale * x)
    RateDistribution dist;
  };

  explicit MixtureCdf(std::vector<Component> components);
  double cdf(double x) const;
  double cdf_left(double x) const;
  std::vector<double> atoms() const;
  DistributionCdf as_distribution() const;

 private:
  std::vector<Component> components_;
};

// F(r) = sum_{n>=1} p_n F(r|n) / (1 - p_0). per_n is indexed by n - 1.
MixtureCdf mixture_rate_cdf(const TierCountDistribution& pn,
                            std::span<const RateDistribution> per_n);

// F_{tau_u}(t) = sum_{n>=1} p_n F(n t | n) / (1 - p_0).
MixtureCdf user_throughput_cdf(const TierCountDistribution& pn,
                               std::span<const RateDistribution> per_n);

struct ExpectedThroughputs {
  double tau_u = 0.0;  // E{tau_u | n >= 1}
  double tau_d = 0.0;  // E{tau_d}, unconditional
};

// E{tau_d} = sum_n p_n E{r|n}; E{tau_u} as the integral of the tau_u survival
// function over [0, 1] (adaptive, tolerance 1e-6).
ExpectedThroughputs expected_throughputs(const TierCountDistribution& pn,
                                         std::span<const RateDistribution> per_n);

// Full approximation pipeline for one operating point.
struct AnalyticModel {
  double q = 0.0;
  ConditionalTermMoments moments;
  TierCountDistribution pn;
  std::vector<RateDistribution> per_n;  // index n - 1, n = 1..N
  ExpectedThroughputs expected;

  MixtureCdf rate_cdf() const { return mixture_rate_cdf(pn, per_n); }
  MixtureCdf tau_u_cdf() const { return user_throughput_cdf(pn, per_n); }
};

AnalyticModel analyze(const SystemParams& params,
                      const UserDistribution& dist = UserDistribution::uniform());

}  // namespace dap
