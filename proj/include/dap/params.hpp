#pragma once

#include <cstdint>

#include "dap/math.hpp"

namespace dap {

enum class Tier { Macro, Micro };

// Full deployment, propagation, and load parameterization. SINR requirements
// are stored linear; dB inputs are converted once at the config boundary.
struct SystemParams {
  double spreading_factor_G = 128.0;          // W / R_M
  double gamma_macro = 5.011872336272722;     // 7 dB
  double gamma_micro = 6.998419960022734;     // 8.45 dB
  double region_side_L = 1000.0;              // m
  double base_separation_D = 300.0;           // m, micro base offset along +x
  double breakpoint_macro_bM = 100.0;         // m
  double breakpoint_micro_bmu = 100.0;        // m
  double shadow_sigma_macro = 8.0;            // dB
  double shadow_sigma_micro = 4.0;            // dB
  double gain_ratio_h = 10.0;                 // H_M / H_mu
  double zeta = 0.005;                        // normalized desensitivity
  int n_total = 26;
  double noise_power_etaW = 1.0;              // normalized, linear

  // delta = zeta * h, the raw desensitivity of the selection rule.
  double delta() const { return zeta * gain_ratio_h; }

  // Single-cell macrocell pole capacity K = G / gamma_M + 1.
  double pole_capacity() const { return spreading_factor_G / gamma_macro + 1.0; }

  // Throws ValidationError naming the offending field.
  void validate() const;
};

struct Position {
  double x = 0.0;  // m, origin at the macrocell base
  double y = 0.0;
};

// One user: position, per-base shadow fadings (dB), linear path gains, tier.
struct UserRealization {
  Position position;
  double chi_macro = 0.0;  // dB
  double chi_micro = 0.0;  // dB
  double t_macro = 0.0;    // linear path gain to the macro base
  double t_micro = 0.0;    // linear path gain to the micro base
  Tier tier = Tier::Macro;
};

struct UserDistribution {
  enum class Kind { Uniform, Hotspot };
  Kind kind = Kind::Uniform;
  double hotspot_fraction = 0.0;  // probability of drawing from the disc
  double hotspot_radius = 0.0;    // m, disc centered on the micro base

  static UserDistribution uniform() { return {}; }
  static UserDistribution hotspot(double fraction, double radius) {
    return {Kind::Hotspot, fraction, radius};
  }

  void validate() const;
};

}  // namespace dap
