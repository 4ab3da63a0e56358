#include "dap/sweeps.hpp"

#include <cmath>

#include <fmt/format.h>

#include "dap/analytic.hpp"
#include "dap/errors.hpp"
#include "dap/montecarlo.hpp"

namespace dap {

std::vector<double> log_spaced_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > lo)) throw ValidationError("grid requires 0 < lo < hi");
  if (points < 1) throw ValidationError("grid requires at least one point");
  std::vector<double> grid(static_cast<std::size_t>(points));
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        std::pow(10.0, llo + (lhi - llo) * i / static_cast<double>(points - 1));
  }
  return grid;
}

std::vector<SweepRow> sweep_zeta(const SystemParams& params, const UserDistribution& dist,
                                 std::span<const double> zeta_grid, const SweepOptions& opts) {
  for (std::size_t i = 0; i < zeta_grid.size(); ++i) {
    if (!(zeta_grid[i] > 0.0 && zeta_grid[i] <= 1.0) ||
        (i > 0 && !(zeta_grid[i] > zeta_grid[i - 1]))) {
      throw ValidationError("zeta grid must be strictly increasing within (0, 1]");
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(zeta_grid.size());
  for (double zeta : zeta_grid) {
    SystemParams p = params;
    p.zeta = zeta;
    SweepRow row;
    row.zeta = zeta;
    row.n_total = p.n_total;
    try {
      const SampleSet samples = run_campaign(p, dist, opts.trials, opts.seed, opts.workers);
      row.e_tau_u_sim = samples.mean_tau_u();
      row.e_tau_d_sim = samples.mean_tau_d();
      row.mean_n = samples.mean_n();
      const AnalyticModel model = analyze(p, dist);
      row.q = model.q;
      row.e_tau_u_analytic = model.expected.tau_u;
      row.e_tau_d_analytic = model.expected.tau_d;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

BalancePoint find_balance_on(const std::function<std::pair<double, double>(double)>& evaluate,
                             double zeta_lo, double zeta_hi) {
  if (!(zeta_lo > 0.0 && zeta_hi > zeta_lo)) {
    throw ValidationError("find_balance requires 0 < zeta_lo < zeta_hi");
  }
  constexpr double kDecadeTol = 1e-2;
  constexpr double kDiffTol = 1e-3;

  auto diff_at = [&](double zeta) {
    const auto [tau_u, tau_d] = evaluate(zeta);
    return std::tuple<double, double, double>(tau_u - tau_d, tau_u, tau_d);
  };

  double lo = std::log10(zeta_lo);
  double hi = std::log10(zeta_hi);
  auto [d_lo, u_lo, t_lo] = diff_at(zeta_lo);
  auto [d_hi, u_hi, t_hi] = diff_at(zeta_hi);
  if (d_lo == 0.0) return {zeta_lo, 0.5 * (u_lo + t_lo), 0, Method::Analytic};
  if (d_hi == 0.0) return {zeta_hi, 0.5 * (u_hi + t_hi), 0, Method::Analytic};
  if ((d_lo > 0.0) == (d_hi > 0.0)) {
    throw NumericalError(
        NumericalError::Kind::NoCrossing,
        fmt::format("no sign change of E{{tau_u}} - E{{tau_d}} over [{:g}, {:g}]: "
                    "diff({:g}) = {:.6g}, diff({:g}) = {:.6g}",
                    zeta_lo, zeta_hi, zeta_lo, d_lo, zeta_hi, d_hi));
  }

  double mid = 0.5 * (lo + hi);
  double u_mid = u_lo, t_mid = t_lo;
  while (hi - lo > kDecadeTol) {
    mid = 0.5 * (lo + hi);
    auto [d_mid, u, t] = diff_at(std::pow(10.0, mid));
    u_mid = u;
    t_mid = t;
    if (std::abs(d_mid) <= kDiffTol) break;
    if ((d_mid > 0.0) == (d_lo > 0.0)) {
      lo = mid;
      d_lo = d_mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo <= kDecadeTol) {
    mid = 0.5 * (lo + hi);
    auto [d_mid, u, t] = diff_at(std::pow(10.0, mid));
    (void)d_mid;
    u_mid = u;
    t_mid = t;
  }
  return {std::pow(10.0, mid), 0.5 * (u_mid + t_mid), 0, Method::Analytic};
}

namespace {

std::function<std::pair<double, double>(double)> make_evaluator(const SystemParams& params,
                                                                const UserDistribution& dist,
                                                                Method method,
                                                                const SweepOptions& opts) {
  return [=](double zeta) {
    SystemParams p = params;
    p.zeta = zeta;
    if (method == Method::Analytic) {
      const AnalyticModel model = analyze(p, dist);
      return std::pair<double, double>(model.expected.tau_u, model.expected.tau_d);
    }
    const SampleSet samples = run_campaign(p, dist, opts.trials, opts.seed, opts.workers);
    return std::pair<double, double>(samples.mean_tau_u(), samples.mean_tau_d());
  };
}

}  // namespace

BalancePoint find_balance(const SystemParams& params, const UserDistribution& dist, Method method,
                          double zeta_lo, double zeta_hi, const SweepOptions& opts) {
  BalancePoint point = find_balance_on(make_evaluator(params, dist, method, opts), zeta_lo, zeta_hi);
  point.n_total = params.n_total;
  point.method = method;
  return point;
}

std::vector<NSweepEntry> sweep_n(const SystemParams& params, const UserDistribution& dist,
                                 std::span<const int> n_values, Method method, double zeta_lo,
                                 double zeta_hi, const SweepOptions& opts) {
  std::vector<NSweepEntry> rows;
  rows.reserve(n_values.size());
  for (int n : n_values) {
    NSweepEntry entry;
    entry.n_total = n;
    SystemParams p = params;
    p.n_total = n;
    try {
      entry.point = find_balance(p, dist, method, zeta_lo, zeta_hi, opts);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    rows.push_back(std::move(entry));
  }
  return rows;
}

HotspotComparison compare_hotspot(const SystemParams& params, const UserDistribution& hotspot,
                                  Method method, double zeta_lo, double zeta_hi,
                                  const SweepOptions& opts) {
  hotspot.validate();
  HotspotComparison cmp;
  cmp.uniform = find_balance(params, UserDistribution::uniform(), method, zeta_lo, zeta_hi, opts);
  cmp.hotspot = find_balance(params, hotspot, method, zeta_lo, zeta_hi, opts);
  cmp.delta_zeta_star = cmp.hotspot.zeta_star - cmp.uniform.zeta_star;
  cmp.delta_tau_star = cmp.hotspot.tau_star - cmp.uniform.tau_star;
  return cmp;
}

}  // namespace dap
