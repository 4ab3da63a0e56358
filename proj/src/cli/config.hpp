#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dap/params.hpp"
#include "dap/sweeps.hpp"

namespace dap::cli {

// Fully resolved run configuration. SINR requirements are accepted in dB and
// converted to linear exactly once, here.
struct RunConfig {
  SystemParams params;
  UserDistribution dist;

  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0 = hardware default

  double zeta_grid_min = 1e-4;
  double zeta_grid_max = 1e-1;
  int zeta_grid_points = 25;

  int n_sweep_min = 10;
  int n_sweep_max = 26;
  int n_sweep_step = 4;

  Method method = Method::Analytic;

  std::string out_dir = "out";
  int cdf_grid_points = 200;

  // Exact key = value echo of the resolved configuration, for the manifest.
  std::map<std::string, std::string> echo() const;

  std::vector<double> zeta_grid() const;
  std::vector<int> n_values() const;

  // Cross-field checks beyond per-module validation.
  void validate() const;
};

// Parses the flat dotted-key config format ("key = value" lines, '#'
// comments). Omitted keys keep their defaults; unknown keys, type mismatches,
// and constraint violations raise ValidationError naming key and line.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<double> zeta;
  std::optional<int> n_users;
  std::optional<std::string> out_dir;
  std::optional<unsigned> workers;
};

void apply_overrides(RunConfig& config, const Overrides& overrides);

}  // namespace dap::cli
