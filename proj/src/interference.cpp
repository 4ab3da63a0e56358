#include "dap/interference.hpp"

#include <algorithm>
#include <cmath>

#include "dap/errors.hpp"

namespace dap {

double pole_capacity(double spreading_factor_G, double gamma_macro) {
  if (!(spreading_factor_G > 0.0) || !(gamma_macro > 0.0)) {
    throw ValidationError("pole_capacity requires G > 0 and gamma_macro > 0");
  }
  return spreading_factor_G / gamma_macro + 1.0;
}

double interference_im(const UserRealization& dap_user) {
  if (dap_user.tier != Tier::Micro) {
    throw ValidationError("interference_im requires a Micro-tier user");
  }
  return dap_user.t_macro / dap_user.t_micro;
}

double interference_imu(std::span<const UserRealization> macro_users) {
  double sum = 0.0;
  for (const UserRealization& user : macro_users) {
    if (user.tier != Tier::Macro) {
      throw ValidationError("interference_imu requires Macro-tier users only");
    }
    sum += user.t_micro / user.t_macro;
  }
  return sum;
}

double max_rate(double K, int n_total, int n, double gamma_micro, double i_m, double i_mu) {
  if (n < 1 || n > n_total) throw ValidationError("max_rate requires 1 <= n <= N_total");
  if (!(gamma_micro > 0.0)) throw ValidationError("max_rate requires gamma_micro > 0");
  if (i_m < 0.0 || i_mu < 0.0) throw ValidationError("max_rate requires nonnegative interference");

  const double numerator = K - static_cast<double>(n_total) + static_cast<double>(n);
  if (numerator <= 0.0) return 0.0;  // infeasible load, outage
  const double product = i_m * i_mu;
  if (product == 0.0) return 1.0;
  return std::clamp(numerator / (gamma_micro * product), 0.0, 1.0);
}

std::optional<PowerSolution> solve_powers(const SystemParams& params, int n_macro, double r,
                                          double i_m, double i_mu) {
  if (n_macro < 1) throw ValidationError("solve_powers requires N_M >= 1");
  if (!(r > 0.0 && r <= 1.0)) throw ValidationError("solve_powers requires 0 < r <= 1");

  // Linear system in (S_M, S_mu):
  //   [G - gamma_M (N_M - 1)]   [-gamma_M I_M     ] [S_M ]   [gamma_M  etaW  ]
  //   [-r gamma_mu I_mu      ]  [ 1               ] [S_mu] = [r gamma_mu etaW]
  const double a11 = params.spreading_factor_G - params.gamma_macro * (n_macro - 1);
  const double a12 = -params.gamma_macro * i_m;
  const double a21 = -r * params.gamma_micro * i_mu;
  const double b1 = params.gamma_macro * params.noise_power_etaW;
  const double b2 = r * params.gamma_micro * params.noise_power_etaW;

  const double det = a11 - a12 * a21;
  if (!(std::abs(det) > 1e-300)) return std::nullopt;  // singular: boundary of feasibility

  PowerSolution sol;
  sol.s_macro = (b1 - a12 * b2) / det;
  sol.s_micro = (a11 * b2 - a21 * b1) / det;
  if (sol.s_macro > 0.0 && sol.s_micro > 0.0) return sol;
  return std::nullopt;
}

bool feasible(double K, int n_macro, double r, double gamma_micro, double i_m, double i_mu) {
  if (!(r > 0.0)) throw ValidationError("feasible requires r > 0");
  return (1.0 / r) * (K - static_cast<double>(n_macro)) - gamma_micro * i_m * i_mu >= 0.0;
}

}  // namespace dap
