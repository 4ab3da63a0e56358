#pragma once

#include <random>

#include "dap/params.hpp"

namespace dap {

// Dual-slope path gain with lognormal shadowing:
//   T = H (b/d)^2 10^(chi/10) for d <= b, H (b/d)^4 10^(chi/10) for d > b.
// Continuous at d == b. d and b must be positive.
double path_gain(double d, double b, double H, double chi_db);

// Macro iff T_M > delta * T_mu; ties go to Micro.
Tier select_base(double t_macro, double t_micro, double delta);

// Draws position from dist, independent shadow fadings chi ~ N(0, sigma^2)
// per base, computes both path gains (H_mu = 1, H_M = h; distances clamped
// to at least 1 m), and applies the selection rule.
UserRealization sample_user(const SystemParams& params, const UserDistribution& dist,
                            std::mt19937_64& rng);

}  // namespace dap
