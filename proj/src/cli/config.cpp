#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "dap/errors.hpp"
#include "dap/math.hpp"

namespace dap::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, int line, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(v)) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(fmt::format("line {}: key '{}': expected a number, got '{}'", line, key, value));
  }
}

std::int64_t parse_int(const std::string& key, int line, const std::string& value) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ValidationError(fmt::format("line {}: key '{}': expected an integer, got '{}'", line, key, value));
  }
  return v;
}

// dB values round-trip through the stored linear quantity for the echo.
struct KeyHandler {
  std::function<void(RunConfig&, const std::string& key, int line, const std::string& value)> set;
};

const std::map<std::string, KeyHandler>& key_table() {
  static const std::map<std::string, KeyHandler> table = {
      {"system.spreading_factor",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.spreading_factor_G = parse_double(k, l, v);
       }}},
      {"system.gamma_macro_db",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.gamma_macro = db_to_linear(parse_double(k, l, v));
       }}},
      {"system.gamma_micro_db",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.gamma_micro = db_to_linear(parse_double(k, l, v));
       }}},
      {"system.noise_power",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.noise_power_etaW = parse_double(k, l, v);
       }}},
      {"geometry.region_side_m",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.region_side_L = parse_double(k, l, v);
       }}},
      {"geometry.base_separation_m",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.base_separation_D = parse_double(k, l, v);
       }}},
      {"propagation.breakpoint_macro_m",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.breakpoint_macro_bM = parse_double(k, l, v);
       }}},
      {"propagation.breakpoint_micro_m",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.breakpoint_micro_bmu = parse_double(k, l, v);
       }}},
      {"propagation.sigma_macro_db",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.shadow_sigma_macro = parse_double(k, l, v);
       }}},
      {"propagation.sigma_micro_db",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.shadow_sigma_micro = parse_double(k, l, v);
       }}},
      {"propagation.gain_ratio",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.gain_ratio_h = parse_double(k, l, v);
       }}},
      {"load.n_users",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.n_total = static_cast<int>(parse_int(k, l, v));
       }}},
      {"load.zeta",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.params.zeta = parse_double(k, l, v);
       }}},
      {"users.distribution",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         if (v == "uniform") {
           c.dist.kind = UserDistribution::Kind::Uniform;
         } else if (v == "hotspot") {
           c.dist.kind = UserDistribution::Kind::Hotspot;
         } else {
           throw ValidationError(
               fmt::format("line {}: key '{}': expected 'uniform' or 'hotspot', got '{}'", l, k, v));
         }
       }}},
      {"users.hotspot_fraction",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.dist.hotspot_fraction = parse_double(k, l, v);
       }}},
      {"users.hotspot_radius_m",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.dist.hotspot_radius = parse_double(k, l, v);
       }}},
      {"run.trials",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.trials = static_cast<std::uint64_t>(parse_int(k, l, v));
       }}},
      {"run.seed",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.seed = static_cast<std::uint64_t>(parse_int(k, l, v));
       }}},
      {"run.workers",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.workers = static_cast<unsigned>(parse_int(k, l, v));
       }}},
      {"sweep.zeta_min",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.zeta_grid_min = parse_double(k, l, v);
       }}},
      {"sweep.zeta_max",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.zeta_grid_max = parse_double(k, l, v);
       }}},
      {"sweep.zeta_points",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.zeta_grid_points = static_cast<int>(parse_int(k, l, v));
       }}},
      {"sweep.n_min",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.n_sweep_min = static_cast<int>(parse_int(k, l, v));
       }}},
      {"sweep.n_max",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.n_sweep_max = static_cast<int>(parse_int(k, l, v));
       }}},
      {"sweep.n_step",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.n_sweep_step = static_cast<int>(parse_int(k, l, v));
       }}},
      {"sweep.method",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         if (v == "analytic") {
           c.method = Method::Analytic;
         } else if (v == "simulation") {
           c.method = Method::Simulation;
         } else {
           throw ValidationError(
               fmt::format("line {}: key '{}': expected 'analytic' or 'simulation', got '{}'", l, k, v));
         }
       }}},
      {"output.dir",
       {[](RunConfig& c, const std::string&, int, const std::string& v) { c.out_dir = v; }}},
      {"output.cdf_grid_points",
       {[](RunConfig& c, const std::string& k, int l, const std::string& v) {
         c.cdf_grid_points = static_cast<int>(parse_int(k, l, v));
       }}},
  };
  return table;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::istringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string content = trim(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(fmt::format("line {}: expected 'key = value', got '{}'", line, content));
    }
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    const auto it = key_table().find(key);
    if (it == key_table().end()) {
      throw ValidationError(fmt::format("line {}: unknown key '{}'", line, key));
    }
    it->second.set(config, key, line, value);
  }
  config.validate();
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ValidationError(fmt::format("cannot open config file '{}'", path));
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_overrides(RunConfig& config, const Overrides& overrides) {
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.trials) config.trials = *overrides.trials;
  if (overrides.zeta) config.params.zeta = *overrides.zeta;
  if (overrides.n_users) config.params.n_total = *overrides.n_users;
  if (overrides.out_dir) config.out_dir = *overrides.out_dir;
  if (overrides.workers) config.workers = *overrides.workers;
  config.validate();
}

void RunConfig::validate() const {
  params.validate();
  dist.validate();
  if (trials < 1) throw ValidationError("run.trials must be >= 1");
  if (cdf_grid_points < 2) throw ValidationError("output.cdf_grid_points must be >= 2");
  if (!(zeta_grid_min > 0.0 && zeta_grid_max > zeta_grid_min && zeta_grid_max <= 1.0)) {
    throw ValidationError("sweep zeta bounds must satisfy 0 < zeta_min < zeta_max <= 1");
  }
  if (zeta_grid_points < 1) throw ValidationError("sweep.zeta_points must be >= 1");
  if (n_sweep_min < 2 || n_sweep_max < n_sweep_min || n_sweep_step < 1) {
    throw ValidationError("sweep N range must satisfy 2 <= n_min <= n_max, n_step >= 1");
  }
}

std::vector<double> RunConfig::zeta_grid() const {
  return log_spaced_grid(zeta_grid_min, zeta_grid_max, zeta_grid_points);
}

std::vector<int> RunConfig::n_values() const {
  std::vector<int> values;
  for (int n = n_sweep_min; n <= n_sweep_max; n += n_sweep_step) values.push_back(n);
  return values;
}

std::map<std::string, std::string> RunConfig::echo() const {
  auto num = [](double v) { return fmt::format("{}", v); };
  std::map<std::string, std::string> out;
  out["system.spreading_factor"] = num(params.spreading_factor_G);
  out["system.gamma_macro_db"] = num(linear_to_db(params.gamma_macro));
  out["system.gamma_micro_db"] = num(linear_to_db(params.gamma_micro));
  out["system.noise_power"] = num(params.noise_power_etaW);
  out["geometry.region_side_m"] = num(params.region_side_L);
  out["geometry.base_separation_m"] = num(params.base_separation_D);
  out["propagation.breakpoint_macro_m"] = num(params.breakpoint_macro_bM);
  out["propagation.breakpoint_micro_m"] = num(params.breakpoint_micro_bmu);
  out["propagation.sigma_macro_db"] = num(params.shadow_sigma_macro);
  out["propagation.sigma_micro_db"] = num(params.shadow_sigma_micro);
  out["propagation.gain_ratio"] = num(params.gain_ratio_h);
  out["load.n_users"] = fmt::format("{}", params.n_total);
  out["load.zeta"] = num(params.zeta);
  out["users.distribution"] =
      dist.kind == UserDistribution::Kind::Hotspot ? "hotspot" : "uniform";
  out["users.hotspot_fraction"] = num(dist.hotspot_fraction);
  out["users.hotspot_radius_m"] = num(dist.hotspot_radius);
  out["run.trials"] = fmt::format("{}", trials);
  out["run.seed"] = fmt::format("{}", seed);
  out["run.workers"] = fmt::format("{}", workers);
  out["sweep.zeta_min"] = num(zeta_grid_min);
  out["sweep.zeta_max"] = num(zeta_grid_max);
  out["sweep.zeta_points"] = fmt::format("{}", zeta_grid_points);
  out["sweep.n_min"] = fmt::format("{}", n_sweep_min);
  out["sweep.n_max"] = fmt::format("{}", n_sweep_max);
  out["sweep.n_step"] = fmt::format("{}", n_sweep_step);
  out["sweep.method"] = method == Method::Analytic ? "analytic" : "simulation";
  out["output.dir"] = out_dir;
  out["output.cdf_grid_points"] = fmt::format("{}", cdf_grid_points);
  return out;
}

}  // namespace dap::cli
