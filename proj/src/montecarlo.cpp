#include "dap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "dap/core_model.hpp"
#include "dap/errors.hpp"
#include "dap/interference.hpp"
#include "dap/rng.hpp"

namespace dap {

TrialOutcome run_trial(const SystemParams& params, const UserDistribution& dist,
                       std::mt19937_64& rng) {
  std::vector<UserRealization> micro_users;
  TrialOutcome outcome;
  for (int i = 0; i < params.n_total; ++i) {
    UserRealization user = sample_user(params, dist, rng);
    if (user.tier == Tier::Micro) {
      micro_users.push_back(user);
    } else {
      outcome.macro_terms.push_back(user.t_micro / user.t_macro);
      outcome.i_mu += user.t_micro / user.t_macro;
    }
  }
  outcome.n = static_cast<int>(micro_users.size());
  if (outcome.n == 0) return outcome;

  const double K = params.pole_capacity();
  for (const UserRealization& user : micro_users) {
    const double im = interference_im(user);
    const double r =
        max_rate(K, params.n_total, outcome.n, params.gamma_micro, im, outcome.i_mu);
    outcome.i_m.push_back(im);
    outcome.rates.push_back(r);
    outcome.tau_u.push_back(r / outcome.n);
  }
  outcome.tau_d = std::accumulate(outcome.rates.begin(), outcome.rates.end(), 0.0) / outcome.n;
  return outcome;
}

void SampleSet::append(const TrialOutcome& outcome) {
  ++trials;
  n_hist[static_cast<std::size_t>(outcome.n)] += 1;
  tau_d.push_back(outcome.tau_d);
  i_mu.push_back(outcome.i_mu);
  macro_terms.insert(macro_terms.end(), outcome.macro_terms.begin(), outcome.macro_terms.end());
  if (outcome.n >= 1) {
    const double w = 1.0 / outcome.n;
    for (double v : outcome.rates) {
      r.push_back(v);
      r_weight.push_back(w);
    }
    tau_u.insert(tau_u.end(), outcome.tau_u.begin(), outcome.tau_u.end());
    i_m.insert(i_m.end(), outcome.i_m.begin(), outcome.i_m.end());
    auto& rbn = r_by_n[outcome.n];
    rbn.insert(rbn.end(), outcome.rates.begin(), outcome.rates.end());
    auto& ibn = i_m_by_n[outcome.n];
    ibn.insert(ibn.end(), outcome.i_m.begin(), outcome.i_m.end());
    i_mu_by_n[outcome.n].push_back(outcome.i_mu);
  }
}

void SampleSet::merge(SampleSet&& other) {
  trials += other.trials;
  for (std::size_t i = 0; i < n_hist.size(); ++i) n_hist[i] += other.n_hist[i];
  auto cat = [](std::vector<double>& dst, std::vector<double>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
  };
  cat(r, other.r);
  cat(r_weight, other.r_weight);
  cat(tau_u, other.tau_u);
  cat(tau_d, other.tau_d);
  cat(i_m, other.i_m);
  cat(macro_terms, other.macro_terms);
  cat(i_mu, other.i_mu);
  for (auto& [n, v] : other.r_by_n) cat(r_by_n[n], v);
  for (auto& [n, v] : other.i_m_by_n) cat(i_m_by_n[n], v);
  for (auto& [n, v] : other.i_mu_by_n) cat(i_mu_by_n[n], v);
}

double SampleSet::mean_n() const {
  double sum = 0.0;
  for (std::size_t k = 0; k < n_hist.size(); ++k) sum += static_cast<double>(k) * n_hist[k];
  return trials ? sum / static_cast<double>(trials) : 0.0;
}

double SampleSet::mean_tau_d() const {
  if (tau_d.empty()) return 0.0;
  return std::accumulate(tau_d.begin(), tau_d.end(), 0.0) / static_cast<double>(tau_d.size());
}

double SampleSet::mean_tau_u() const {
  // Trial-weighted: sum over eligible trials of (1/n) * sum of that trial's
  // tau_u values equals the weighted sum of (r, 1/n) pairs divided by n once
  // more; equivalently sum(w^2 * r) over pooled samples. Kept explicit here.
  double sum = 0.0;
  std::uint64_t eligible = trials - n_hist[0];
  if (eligible == 0) return 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) sum += r[i] * r_weight[i] * r_weight[i];
  return sum / static_cast<double>(eligible);
}

SampleSet run_campaign(const SystemParams& params, const UserDistribution& dist,
                       std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  params.validate();
  dist.validate();
  if (trials < 1) throw ValidationError("run_campaign requires trials >= 1");
  if (workers == 0) {
    workers = std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
  }
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

  auto make_empty = [&] {
    SampleSet s;
    s.n_total = params.n_total;
    s.n_hist.assign(static_cast<std::size_t>(params.n_total) + 1, 0);
    return s;
  };

  std::vector<SampleSet> partial(workers);
  std::vector<std::thread> threads;
  const std::uint64_t chunk = trials / workers;
  const std::uint64_t rem = trials % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < rem ? 1 : 0);
    partial[w] = make_empty();
    threads.emplace_back([&, w, begin, end] {
      for (std::uint64_t t = begin; t < end; ++t) {
        std::mt19937_64 rng = make_trial_rng(seed, t);
        partial[w].append(run_trial(params, dist, rng));
      }
    });
    begin = end;
  }
  for (std::thread& t : threads) t.join();

  SampleSet result = make_empty();
  for (SampleSet& p : partial) result.merge(std::move(p));
  return result;
}

EmpiricalCdf rate_ecdf(const SampleSet& samples) {
  return EmpiricalCdf(samples.r, samples.r_weight);
}

EmpiricalCdf tau_u_ecdf(const SampleSet& samples) {
  return EmpiricalCdf(samples.tau_u, samples.r_weight);
}

namespace {

MomentEstimate moments_of(const std::vector<double>& samples, std::uint64_t min_count) {
  MomentEstimate est;
  est.count = samples.size();
  est.available = est.count >= min_count && est.count >= 2;
  if (samples.empty()) return est;
  const double n = static_cast<double>(samples.size());
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (double x : samples) {
    s1 += x;
    s2 += x * x;
    s4 += x * x * x * x;
  }
  est.e1 = s1 / n;
  est.e2 = s2 / n;
  if (samples.size() >= 2) {
    const double var1 = std::max(0.0, s2 / n - est.e1 * est.e1);
    const double var2 = std::max(0.0, s4 / n - est.e2 * est.e2);
    est.se1 = std::sqrt(var1 / n);
    est.se2 = std::sqrt(var2 / n);
  }
  return est;
}

}  // namespace

ConditionalMoments estimate_conditional_moments(const SampleSet& samples,
                                                std::uint64_t min_count) {
  ConditionalMoments result;
  result.i_m = moments_of(samples.i_m, min_count);
  result.macro_term = moments_of(samples.macro_terms, min_count);
  for (const auto& [n, v] : samples.i_m_by_n) result.i_m_by_n[n] = moments_of(v, min_count);
  for (const auto& [n, v] : samples.i_mu_by_n) result.i_mu_by_n[n] = moments_of(v, min_count);
  return result;
}

}  // namespace dap
