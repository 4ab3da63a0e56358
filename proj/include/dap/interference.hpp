#pragma once

#include <optional>
#include <span>

#include "dap/params.hpp"

namespace dap {

// K = G / gamma_M + 1.
double pole_capacity(double spreading_factor_G, double gamma_macro);

// I_M = T_M / T_mu of the active DAP user. Requires tier == Micro; the
// selection rule bounds the result by delta.
double interference_im(const UserRealization& dap_user);

// I_mu = sum over macro users of T_mu,k / T_M,k. Every listed user must be
// Macro tier; an empty list yields 0.
double interference_imu(std::span<const UserRealization> macro_users);

// Maximum achievable normalized rate when n of N users choose the microcell:
//   r = clamp((K - N + n) / (gamma_mu * I_M * I_mu), 0, 1),
// with r = 1 when the interference product vanishes and the load term is
// positive, and r = 0 on infeasible load (K - N + n <= 0).
double max_rate(double K, int n_total, int n, double gamma_micro, double i_m, double i_mu);

struct PowerSolution {
  double s_macro = 0.0;  // normalized received power per macro user
  double s_micro = 0.0;  // normalized received power of the active DAP user
};

// Power-control oracle: solves the two SINR equations at equality,
//   G S_M = gamma_M [(N_M - 1) S_M + S_mu I_M + etaW]
//   (1/r) S_mu = gamma_mu [S_M I_mu + etaW],
// and returns the solution iff both powers are strictly positive.
std::optional<PowerSolution> solve_powers(const SystemParams& params, int n_macro, double r,
                                          double i_m, double i_mu);

// Feasibility test (1/r)(K - N_M) - gamma_mu I_M I_mu >= 0.
bool feasible(double K, int n_macro, double r, double gamma_micro, double i_m, double i_mu);

}  // namespace dap
