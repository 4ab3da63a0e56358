#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "dap/cdf.hpp"
#include "dap/params.hpp"

namespace dap {

// One snapshot: n micro users, their per-turn rates (each computed with that
// user active against the same macro set), per-user throughputs r/n, and the
// DAP utilization tau_d = mean of the rates (0 when n == 0).
struct TrialOutcome {
  int n = 0;
  std::vector<double> rates;
  std::vector<double> tau_u;
  double tau_d = 0.0;

  // Interference bookkeeping consumed by SampleSet / moment estimation.
  double i_mu = 0.0;                // shared by all n turns of the trial
  std::vector<double> i_m;          // one per micro turn
  std::vector<double> macro_terms;  // t_k = T_mu,k / T_M,k per macro user
};

TrialOutcome run_trial(const SystemParams& params, const UserDistribution& dist,
                       std::mt19937_64& rng);

// Aggregated campaign samples. r and tau_u are pooled over the micro turns of
// trials with n >= 1 (with matching per-trial weights 1/n so that weighted
// statistics estimate the equal-weight-per-trial mixture); tau_d is one value
// per trial, unconditional.
struct SampleSet {
  std::uint64_t trials = 0;
  int n_total = 0;
  std::vector<std::uint64_t> n_hist;  // index n = 0..N_total

  std::vector<double> r;
  std::vector<double> r_weight;  // 1/n of the originating trial
  std::vector<double> tau_u;
  std::vector<double> tau_d;

  std::vector<double> i_m;          // all micro turns
  std::vector<double> macro_terms;  // all macro users
  std::vector<double> i_mu;         // one per trial

  std::map<int, std::vector<double>> r_by_n;
  std::map<int, std::vector<double>> i_m_by_n;
  std::map<int, std::vector<double>> i_mu_by_n;

  void append(const TrialOutcome& outcome);
  void merge(SampleSet&& other);

  double mean_n() const;
  // Mean of tau_d over all trials (n = 0 contributing 0).
  double mean_tau_d() const;
  // Per-trial estimator of E{tau_u | n >= 1}: mean over eligible trials of
  // the trial's average per-user throughput.
  double mean_tau_u() const;
};

// Runs `trials` independent trials with per-trial generators derived from
// (seed, trial index); the result is bit-identical for a fixed seed no matter
// how many workers execute it. workers == 0 picks a hardware default.
SampleSet run_campaign(const SystemParams& params, const UserDistribution& dist,
                       std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

// Empirical CDFs of r and tau_u that weight every eligible trial equally
// (each of a trial's n per-turn samples carries weight 1/n), estimating the
// analytic mixtures' equal-per-trial weighting.
EmpiricalCdf rate_ecdf(const SampleSet& samples);
EmpiricalCdf tau_u_ecdf(const SampleSet& samples);

struct MomentEstimate {
  double e1 = 0.0;
  double e2 = 0.0;
  double se1 = 0.0;  // standard error of e1
  double se2 = 0.0;
  std::uint64_t count = 0;
  bool available = false;  // count >= min_count
};

struct ConditionalMoments {
  MomentEstimate i_m;         // I_M | Micro, pooled over turns
  MomentEstimate macro_term;  // t_k | Macro, pooled over users
  std::map<int, MomentEstimate> i_m_by_n;
  std::map<int, MomentEstimate> i_mu_by_n;
};

ConditionalMoments estimate_conditional_moments(const SampleSet& samples,
                                                std::uint64_t min_count = 200);

}  // namespace dap
