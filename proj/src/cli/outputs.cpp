#include "cli/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "dap/errors.hpp"

namespace dap::cli {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream file(p, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError(fmt::format("cannot open '{}' for writing", path));
  file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!file) throw ValidationError(fmt::format("short write to '{}'", path));
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ValidationError(fmt::format("cannot open '{}'", path));
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 160.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, bool log_x,
                           const std::vector<Series>& series) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = 0.0, y_max = -std::numeric_limits<double>::infinity();
  for (const Series& s : series) {
    for (double v : s.x) {
      const double t = log_x ? std::log10(v) : v;
      x_min = std::min(x_min, t);
      x_max = std::max(x_max, t);
    }
    for (double v : s.y) y_max = std::max(y_max, v);
  }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  if (!(y_max > y_min)) y_max = y_min + 1.0;
  y_max *= 1.05;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double v) {
    const double t = log_x ? std::log10(v) : v;
    return kMarginLeft + (t - x_min) / (x_max - x_min) * plot_w;
  };
  auto sy = [&](double v) { return kMarginTop + (1.0 - (v - y_min) / (y_max - y_min)) * plot_h; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight, kWidth, kHeight);
  svg += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  svg += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                     kMarginLeft + plot_w / 2.0, title);

  // frame + ticks
  svg += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
      kMarginLeft, kMarginTop, plot_w, plot_h);
  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / ticks;
    const double px = kMarginLeft + plot_w * i / ticks;
    const double label = log_x ? std::pow(10.0, fx) : fx;
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", px,
                       kMarginTop + plot_h, kMarginTop + plot_h + 5.0);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.4g}</text>\n", px,
                       kMarginTop + plot_h + 20.0, label);
    const double fy = y_min + (y_max - y_min) * i / ticks;
    const double py = kMarginTop + plot_h * (1.0 - static_cast<double>(i) / ticks);
    svg += fmt::format("<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"black\"/>\n", py,
                       kMarginLeft - 5.0, kMarginLeft);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.4g}</text>\n",
                       kMarginLeft - 8.0, py + 4.0, fy);
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                     kMarginLeft + plot_w / 2.0, kHeight - 12.0, x_label);
  svg += fmt::format(
      "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>\n",
      kMarginTop + plot_h / 2.0, kMarginTop + plot_h / 2.0, y_label);

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string path;
    for (std::size_t j = 0; j < series[i].x.size(); ++j) {
      path += fmt::format("{}{:.2f},{:.2f} ", j == 0 ? "M" : "L", sx(series[i].x[j]),
                          sy(series[i].y[j]));
    }
    svg += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", path,
                       color);
    const double ly = kMarginTop + 15.0 + 18.0 * static_cast<double>(i);
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" "
                       "stroke-width=\"2\"/>\n",
                       kMarginLeft + plot_w + 10.0, ly, kMarginLeft + plot_w + 30.0, color);
    svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", kMarginLeft + plot_w + 35.0, ly + 4.0,
                       series[i].name);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace dap::cli
