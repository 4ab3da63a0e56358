#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dap::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kManifestSchemaVersion = 1;

// FNV-1a 64-bit, used for the manifest's per-output checksums.
std::uint64_t fnv1a64(const std::string& bytes);

// Writes bytes atomically-ish (whole string, binary) creating parent dirs.
void write_file(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

// Minimal SVG line chart; deterministic output for fixed inputs.
struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, bool log_x,
                           const std::vector<Series>& series);

}  // namespace dap::cli
