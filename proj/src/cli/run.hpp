#pragma once

#include <string>

#include "cli/config.hpp"

namespace dap::cli {

// Dispatches one of {simulate, analyze, sweep-zeta, sweep-n, hotspot, report}.
// Writes the subcommand's CSV/SVG outputs plus manifest.json under
// config.out_dir. Returns 0 on success, 1 on validation error, 2 on
// numerical failure; diagnostics go to stderr.
int run_subcommand(const std::string& name, const RunConfig& config);

}  // namespace dap::cli
