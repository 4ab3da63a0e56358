#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/run.hpp"
#include "dap/errors.hpp"

namespace {

struct Cli {
  std::string config_path;
  dap::cli::Overrides overrides;
};

void add_common_options(CLI::App* sub, Cli& cli) {
  sub->add_option("--config", cli.config_path, "Config file (flat dotted keys)");
  auto opt = [&](const char* name, auto& slot, const char* help) {
    sub->add_option_function<std::remove_reference_t<decltype(*slot)>>(
        name, [&slot](const auto& v) { slot = v; }, help);
  };
  opt("--seed", cli.overrides.seed, "Master RNG seed");
  opt("--trials", cli.overrides.trials, "Monte Carlo trials");
  opt("--zeta", cli.overrides.zeta, "Normalized desensitivity");
  opt("--n", cli.overrides.n_users, "Total user count N");
  opt("--out", cli.overrides.out_dir, "Output directory");
  opt("--workers", cli.overrides.workers, "Worker threads (0 = auto)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-tier CDMA uplink throughput simulator and analyzer"};
  app.require_subcommand(1);

  const std::vector<std::string> names = {"simulate", "analyze", "sweep-zeta",
                                          "sweep-n",  "hotspot", "report"};
  const std::vector<std::string> descriptions = {
      "Monte Carlo campaign: samples.csv, cdf_r.csv, cdf_tau_u.csv",
      "Approximation path: analytic CDFs and moments.csv",
      "Sweep zeta: sweep_zeta.csv, fig4.svg",
      "Balance point vs N: sweep_n.csv, fig5.svg",
      "Uniform vs hotspot balance points: hotspot.csv",
      "Overlay CDF figures: fig2.svg, fig3.svg"};

  Cli cli;
  for (std::size_t i = 0; i < names.size(); ++i) {
    add_common_options(app.add_subcommand(names[i], descriptions[i]), cli);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    dap::cli::RunConfig config = cli.config_path.empty()
                                     ? dap::cli::RunConfig{}
                                     : dap::cli::parse_config_file(cli.config_path);
    dap::cli::apply_overrides(config, cli.overrides);
    return dap::cli::run_subcommand(app.get_subcommands().front()->get_name(), config);
  } catch (const dap::ValidationError& e) {
    std::cerr << "error (validation): " << e.what() << "\n";
    return 1;
  }
}
