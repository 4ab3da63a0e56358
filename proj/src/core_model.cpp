#include "dap/core_model.hpp"

#include <cmath>
#include <string>

#include "dap/errors.hpp"

namespace dap {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw ValidationError(std::string(name) + " must be strictly positive");
  }
}

}  // namespace

void SystemParams::validate() const {
  require_positive(spreading_factor_G, "spreading_factor_G");
  require_positive(gamma_macro, "gamma_macro");
  require_positive(gamma_micro, "gamma_micro");
  require_positive(region_side_L, "region_side_L");
  require_positive(base_separation_D, "base_separation_D");
  require_positive(breakpoint_macro_bM, "breakpoint_macro_bM");
  require_positive(breakpoint_micro_bmu, "breakpoint_micro_bmu");
  require_positive(shadow_sigma_macro, "shadow_sigma_macro");
  require_positive(shadow_sigma_micro, "shadow_sigma_micro");
  require_positive(gain_ratio_h, "gain_ratio_h");
  require_positive(zeta, "zeta");
  require_positive(noise_power_etaW, "noise_power_etaW");
  if (n_total < 1) throw ValidationError("N_total must be >= 1");
  if (!(base_separation_D < region_side_L / 2.0)) {
    throw ValidationError("base_separation_D must satisfy D < L/2 (micro base inside region)");
  }
}

void UserDistribution::validate() const {
  if (kind == Kind::Hotspot) {
    if (!(hotspot_fraction >= 0.0 && hotspot_fraction <= 1.0)) {
      throw ValidationError("hotspot_fraction must lie in [0, 1]");
    }
    // fraction == 0 degenerates to the uniform distribution; only then may
    // the radius be left unset.
    if (hotspot_fraction > 0.0 && !(hotspot_radius > 0.0)) {
      throw ValidationError("hotspot_radius must be strictly positive");
    }
  }
}

double path_gain(double d, double b, double H, double chi_db) {
  require_positive(d, "distance d");
  require_positive(b, "breakpoint b");
  require_positive(H, "gain constant H");
  const double ratio = b / d;
  const double slope = (d <= b) ? ratio * ratio : ratio * ratio * ratio * ratio;
  return H * slope * std::pow(10.0, chi_db / 10.0);
}

Tier select_base(double t_macro, double t_micro, double delta) {
  return t_macro > delta * t_micro ? Tier::Macro : Tier::Micro;
}

namespace {

Position sample_position(const SystemParams& params, const UserDistribution& dist,
                         std::mt19937_64& rng) {
  const double half = params.region_side_L / 2.0;
  std::uniform_real_distribution<double> coord(-half, half);
  if (dist.kind == UserDistribution::Kind::Hotspot) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) < dist.hotspot_fraction) {
      // Uniform on the disc around the micro base, clipped to the square
      // by rejection.
      std::uniform_real_distribution<double> offs(-dist.hotspot_radius, dist.hotspot_radius);
      for (;;) {
        const double dx = offs(rng);
        const double dy = offs(rng);
        if (dx * dx + dy * dy > dist.hotspot_radius * dist.hotspot_radius) continue;
        const double x = params.base_separation_D + dx;
        const double y = dy;
        if (std::abs(x) <= half && std::abs(y) <= half) return {x, y};
      }
    }
  }
  return {coord(rng), coord(rng)};
}

}  // namespace

UserRealization sample_user(const SystemParams& params, const UserDistribution& dist,
                            std::mt19937_64& rng) {
  UserRealization user;
  user.position = sample_position(params, dist, rng);

  std::normal_distribution<double> shadow_macro(0.0, params.shadow_sigma_macro);
  std::normal_distribution<double> shadow_micro(0.0, params.shadow_sigma_micro);
  user.chi_macro = shadow_macro(rng);
  user.chi_micro = shadow_micro(rng);

  // Eq-style gains with the micro base at (D, 0); a user sitting exactly on a
  // base would make the model singular, so distances are clamped to 1 m.
  const double d_macro = std::max(1.0, std::hypot(user.position.x, user.position.y));
  const double d_micro =
      std::max(1.0, std::hypot(user.position.x - params.base_separation_D, user.position.y));

  user.t_macro = path_gain(d_macro, params.breakpoint_macro_bM, params.gain_ratio_h, user.chi_macro);
  user.t_micro = path_gain(d_micro, params.breakpoint_micro_bmu, 1.0, user.chi_micro);
  user.tier = select_base(user.t_macro, user.t_micro, params.delta());
  return user;
}

}  // namespace dap
