#include "cli/run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cli/outputs.hpp"
#include "dap/analytic.hpp"
#include "dap/errors.hpp"
#include "dap/montecarlo.hpp"
#include "dap/rng.hpp"
#include "dap/sweeps.hpp"

namespace dap::cli {

namespace {

std::string num(double v) { return fmt::format("{}", v); }

std::vector<double> linear_grid(int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  }
  return grid;
}

// All CSV numbers are shortest-round-trip decimals so reruns are byte-stable.
class OutputBundle {
 public:
  explicit OutputBundle(const RunConfig& config) : config_(config) {}

  void add(const std::string& name, const std::string& contents) {
    files_[name] = contents;
  }

  void commit(const std::string& subcommand, double wall_seconds) {
    nlohmann::json manifest;
    manifest["schema_version"] = kManifestSchemaVersion;
    manifest["tool_version"] = kToolVersion;
    manifest["subcommand"] = subcommand;
    manifest["seed"] = config_.seed;
    manifest["trials"] = config_.trials;
    manifest["wall_clock_seconds"] = wall_seconds;
    manifest["config"] = config_.echo();
    nlohmann::json sums = nlohmann::json::object();
    for (const auto& [name, contents] : files_) {
      write_file((std::filesystem::path(config_.out_dir) / name).string(), contents);
      sums[name] = fmt::format("{:016x}", fnv1a64(contents));
    }
    manifest["outputs"] = sums;
    write_file((std::filesystem::path(config_.out_dir) / "manifest.json").string(),
               manifest.dump(2) + "\n");
  }

 private:
  const RunConfig& config_;
  std::map<std::string, std::string> files_;
};

std::string cdf_overlay_csv(const std::vector<double>& grid, const EmpiricalCdf& sim,
                            const DistributionCdf& analytic) {
  std::string csv = "value,F_sim,F_analytic\n";
  for (double v : grid) {
    csv += fmt::format("{},{},{}\n", num(v), num(sim(v)), num(analytic.cdf(v)));
  }
  return csv;
}

std::string cdf_csv(const std::vector<double>& grid, const DistributionCdf& analytic) {
  std::string csv = "value,F_analytic\n";
  for (double v : grid) csv += fmt::format("{},{}\n", num(v), num(analytic.cdf(v)));
  return csv;
}

void cmd_simulate(const RunConfig& config, OutputBundle& out) {
  // Trials are re-run sequentially here so samples.csv can stream per-trial
  // rows; the per-trial RNG derivation keeps this identical to run_campaign.
  SampleSet samples;
  samples.n_total = config.params.n_total;
  samples.n_hist.assign(static_cast<std::size_t>(config.params.n_total) + 1, 0);
  std::string rows = "trial,n,turn,i_m,i_mu,r,tau_u,tau_d\n";
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    std::mt19937_64 rng = make_trial_rng(config.seed, t);
    const TrialOutcome outcome = run_trial(config.params, config.dist, rng);
    if (outcome.n == 0) {
      rows += fmt::format("{},0,,,{},,,0\n", t, num(outcome.i_mu));
    } else {
      for (int turn = 0; turn < outcome.n; ++turn) {
        rows += fmt::format("{},{},{},{},{},{},{},{}\n", t, outcome.n, turn,
                            num(outcome.i_m[static_cast<std::size_t>(turn)]), num(outcome.i_mu),
                            num(outcome.rates[static_cast<std::size_t>(turn)]),
                            num(outcome.tau_u[static_cast<std::size_t>(turn)]),
                            num(outcome.tau_d));
      }
    }
    samples.append(outcome);
  }
  out.add("samples.csv", rows);

  const AnalyticModel model = analyze(config.params, config.dist);
  const std::vector<double> grid = linear_grid(config.cdf_grid_points);
  out.add("cdf_r.csv",
          cdf_overlay_csv(grid, rate_ecdf(samples), model.rate_cdf().as_distribution()));
  out.add("cdf_tau_u.csv",
          cdf_overlay_csv(grid, tau_u_ecdf(samples), model.tau_u_cdf().as_distribution()));
}

void cmd_analyze(const RunConfig& config, OutputBundle& out) {
  const AnalyticModel model = analyze(config.params, config.dist);
  const std::vector<double> grid = linear_grid(config.cdf_grid_points);
  out.add("analytic_cdf_r.csv", cdf_csv(grid, model.rate_cdf().as_distribution()));
  out.add("analytic_cdf_tau_u.csv", cdf_csv(grid, model.tau_u_cdf().as_distribution()));

  std::string moments = "name,value\n";
  moments += fmt::format("q,{}\n", num(model.q));
  moments += fmt::format("E_im_1,{}\n", num(model.moments.i_m.e1));
  moments += fmt::format("E_im_2,{}\n", num(model.moments.i_m.e2));
  moments += fmt::format("E_term_1,{}\n", num(model.moments.macro_term.e1));
  moments += fmt::format("E_term_2,{}\n", num(model.moments.macro_term.e2));
  moments += fmt::format("E_tau_u,{}\n", num(model.expected.tau_u));
  moments += fmt::format("E_tau_d,{}\n", num(model.expected.tau_d));
  for (int n = 0; n <= config.params.n_total; ++n) {
    moments += fmt::format("p[{}],{}\n", n, num(model.pn.p[static_cast<std::size_t>(n)]));
  }
  for (int n = 1; n <= config.params.n_total; ++n) {
    const RateDistribution& d = model.per_n[static_cast<std::size_t>(n - 1)];
    moments += fmt::format("mu_z[{}],{}\n", n, num(d.mu_z));
    moments += fmt::format("sigma_z[{}],{}\n", n, num(d.sigma_z));
    moments += fmt::format("E_r[{}],{}\n", n, num(d.mean()));
  }
  out.add("moments.csv", moments);
}

void cmd_sweep_zeta(const RunConfig& config, OutputBundle& out) {
  const std::vector<double> grid = config.zeta_grid();
  const std::vector<SweepRow> rows = sweep_zeta(
      config.params, config.dist, grid, {config.trials, config.seed, config.workers});

  std::string csv =
      "zeta,N,E_tau_u_sim,E_tau_d_sim,E_tau_u_analytic,E_tau_d_analytic,mean_n,q,ok,error\n";
  Series su{"E{tau_u} sim", {}, {}}, sd{"E{tau_d} sim", {}, {}};
  Series au{"E{tau_u} analytic", {}, {}}, ad{"E{tau_d} analytic", {}, {}};
  for (const SweepRow& row : rows) {
    csv += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", num(row.zeta), row.n_total,
                       num(row.e_tau_u_sim), num(row.e_tau_d_sim), num(row.e_tau_u_analytic),
                       num(row.e_tau_d_analytic), num(row.mean_n), num(row.q), row.ok ? 1 : 0,
                       row.error);
    if (row.ok) {
      su.x.push_back(row.zeta);
      su.y.push_back(row.e_tau_u_sim);
      sd.x.push_back(row.zeta);
      sd.y.push_back(row.e_tau_d_sim);
      au.x.push_back(row.zeta);
      au.y.push_back(row.e_tau_u_analytic);
      ad.x.push_back(row.zeta);
      ad.y.push_back(row.e_tau_d_analytic);
    }
  }
  out.add("sweep_zeta.csv", csv);
  out.add("fig4.svg", line_chart_svg("Average throughputs vs zeta", "zeta", "normalized throughput",
                                     /*log_x=*/true, {su, sd, au, ad}));
}

void cmd_sweep_n(const RunConfig& config, OutputBundle& out) {
  const std::vector<int> n_values = config.n_values();
  const std::vector<NSweepEntry> entries =
      sweep_n(config.params, config.dist, n_values, config.method, config.zeta_grid_min,
              config.zeta_grid_max, {config.trials, config.seed, config.workers});

  std::string csv = "N,zeta_star,tau_star,method,ok,error\n";
  Series zs{"zeta_star", {}, {}}, ts{"tau_star", {}, {}};
  const char* method_name = config.method == Method::Analytic ? "analytic" : "simulation";
  for (const NSweepEntry& entry : entries) {
    if (entry.point) {
      csv += fmt::format("{},{},{},{},1,\n", entry.n_total, num(entry.point->zeta_star),
                         num(entry.point->tau_star), method_name);
      zs.x.push_back(entry.n_total);
      zs.y.push_back(entry.point->zeta_star);
      ts.x.push_back(entry.n_total);
      ts.y.push_back(entry.point->tau_star);
    } else {
      csv += fmt::format("{},,,{},0,{}\n", entry.n_total, method_name, entry.error);
    }
  }
  out.add("sweep_n.csv", csv);
  out.add("fig5.svg", line_chart_svg("Balance point vs N", "N", "zeta* / tau*",
                                     /*log_x=*/false, {zs, ts}));
}

void cmd_hotspot(const RunConfig& config, OutputBundle& out) {
  UserDistribution hotspot = config.dist;
  if (hotspot.kind != UserDistribution::Kind::Hotspot) {
    throw ValidationError("hotspot subcommand requires users.distribution = hotspot");
  }
  const HotspotComparison cmp =
      compare_hotspot(config.params, hotspot, config.method, config.zeta_grid_min,
                      config.zeta_grid_max, {config.trials, config.seed, config.workers});
  std::string csv = "label,zeta_star,tau_star\n";
  csv += fmt::format("uniform,{},{}\n", num(cmp.uniform.zeta_star), num(cmp.uniform.tau_star));
  csv += fmt::format("hotspot,{},{}\n", num(cmp.hotspot.zeta_star), num(cmp.hotspot.tau_star));
  csv += fmt::format("delta,{},{}\n", num(cmp.delta_zeta_star), num(cmp.delta_tau_star));
  out.add("hotspot.csv", csv);
}

void cmd_report(const RunConfig& config, OutputBundle& out) {
  const std::vector<double> zetas = {0.001, 0.005, 0.05};
  const std::vector<double> grid = linear_grid(config.cdf_grid_points);
  std::vector<Series> r_series, tau_series;
  for (double zeta : zetas) {
    SystemParams p = config.params;
    p.zeta = zeta;
    const SampleSet samples =
        run_campaign(p, config.dist, config.trials, config.seed, config.workers);
    const AnalyticModel model = analyze(p, config.dist);
    const EmpiricalCdf sim_r = rate_ecdf(samples);
    const EmpiricalCdf sim_tau = tau_u_ecdf(samples);
    const DistributionCdf ana_r = model.rate_cdf().as_distribution();
    const DistributionCdf ana_tau = model.tau_u_cdf().as_distribution();
    Series sr{fmt::format("sim z={}", zeta), grid, {}};
    Series ar{fmt::format("analytic z={}", zeta), grid, {}};
    Series st = sr, at = ar;
    for (double v : grid) {
      sr.y.push_back(sim_r(v));
      ar.y.push_back(ana_r.cdf(v));
      st.y.push_back(sim_tau(v));
      at.y.push_back(ana_tau.cdf(v));
    }
    r_series.push_back(sr);
    r_series.push_back(ar);
    tau_series.push_back(st);
    tau_series.push_back(at);
  }
  out.add("fig2.svg",
          line_chart_svg("CDF of r", "r", "F(r)", /*log_x=*/false, r_series));
  out.add("fig3.svg",
          line_chart_svg("CDF of tau_u", "tau_u", "F(tau_u)", /*log_x=*/false, tau_series));
}

}  // namespace

int run_subcommand(const std::string& name, const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  try {
    config.validate();
    OutputBundle out(config);
    if (name == "simulate") {
      cmd_simulate(config, out);
    } else if (name == "analyze") {
      cmd_analyze(config, out);
    } else if (name == "sweep-zeta") {
      cmd_sweep_zeta(config, out);
    } else if (name == "sweep-n") {
      cmd_sweep_n(config, out);
    } else if (name == "hotspot") {
      cmd_hotspot(config, out);
    } else if (name == "report") {
      cmd_report(config, out);
    } else {
      throw ValidationError(fmt::format("unknown subcommand '{}'", name));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.commit(name, seconds);
    return 0;
  } catch (const NumericalError& e) {
    const char* kind = "numerical";
    switch (e.kind()) {
      case NumericalError::Kind::NoCrossing: kind = "NoCrossing"; break;
      case NumericalError::Kind::QuadratureNonConvergence: kind = "QuadratureNonConvergence"; break;
      case NumericalError::Kind::NoDapUsers: kind = "NoDapUsers"; break;
      case NumericalError::Kind::Degenerate: kind = "Degenerate"; break;
    }
    std::cerr << fmt::format("error ({}): {}\n", kind, e.what());
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << fmt::format("error (validation): {}\n", e.what());
    return 1;
  }
}

}  // namespace dap::cli
