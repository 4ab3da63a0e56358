#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dap/params.hpp"

namespace dap {

enum class Method { Simulation, Analytic };

// One zeta (or N) grid point, with throughputs from both computation paths.
struct SweepRow {
  double zeta = 0.0;
  int n_total = 0;
  double e_tau_u_sim = 0.0;
  double e_tau_d_sim = 0.0;
  double e_tau_u_analytic = 0.0;
  double e_tau_d_analytic = 0.0;
  double mean_n = 0.0;
  double q = 0.0;
  bool ok = true;
  std::string error;
};

struct BalancePoint {
  double zeta_star = 0.0;
  double tau_star = 0.0;
  int n_total = 0;
  Method method = Method::Analytic;
};

struct SweepOptions {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
};

std::vector<double> log_spaced_grid(double lo, double hi, int points);

// One row per grid point; the same seed is reused at every point (common
// random numbers) so the simulated curves differ only through zeta.
std::vector<SweepRow> sweep_zeta(const SystemParams& params, const UserDistribution& dist,
                                 std::span<const double> zeta_grid, const SweepOptions& opts = {});

// Bisection on log10(zeta) for the crossing of E{tau_u} and E{tau_d}.
// evaluate(zeta) -> (E{tau_u}, E{tau_d}). Stops when the bracket is narrower
// than 1e-2 decades or the throughput difference is below 1e-3. Throws
// NumericalError::NoCrossing with endpoint diagnostics when the difference
// does not change sign over [zeta_lo, zeta_hi].
BalancePoint find_balance_on(const std::function<std::pair<double, double>(double)>& evaluate,
                             double zeta_lo, double zeta_hi);

BalancePoint find_balance(const SystemParams& params, const UserDistribution& dist, Method method,
                          double zeta_lo = 1e-4, double zeta_hi = 1e-1,
                          const SweepOptions& opts = {});

struct NSweepEntry {
  int n_total = 0;
  std::optional<BalancePoint> point;  // empty on NoCrossing / numerical failure
  std::string error;
};

std::vector<NSweepEntry> sweep_n(const SystemParams& params, const UserDistribution& dist,
                                 std::span<const int> n_values, Method method,
                                 double zeta_lo = 1e-4, double zeta_hi = 1e-1,
                                 const SweepOptions& opts = {});

struct HotspotComparison {
  BalancePoint uniform;
  BalancePoint hotspot;
  double delta_zeta_star = 0.0;  // hotspot - uniform
  double delta_tau_star = 0.0;
};

HotspotComparison compare_hotspot(const SystemParams& params, const UserDistribution& hotspot,
                                  Method method, double zeta_lo = 1e-4, double zeta_hi = 1e-1,
                                  const SweepOptions& opts = {});

}  // namespace dap
