#include "dap/cdf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dap/errors.hpp"

namespace dap {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : EmpiricalCdf(std::move(samples), {}) {}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples, std::vector<double> weights) {
  if (samples.empty()) throw ValidationError("EmpiricalCdf requires a nonempty sample");
  if (!weights.empty() && weights.size() != samples.size()) {
    throw ValidationError("EmpiricalCdf weights must match samples in length");
  }
  sample_count_ = samples.size();

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return samples[i] < samples[j]; });

  const double total = weights.empty()
                           ? static_cast<double>(samples.size())
                           : std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw ValidationError("EmpiricalCdf weights must sum to a positive value");

  double cum = 0.0;
  for (std::size_t idx : order) {
    const double w = weights.empty() ? 1.0 : weights[idx];
    cum += w / total;
    if (!points_.empty() && points_.back() == samples[idx]) {
      cumulative_.back() = cum;
    } else {
      points_.push_back(samples[idx]);
      cumulative_.push_back(cum);
    }
  }
  cumulative_.back() = 1.0;  // kill accumulated rounding at the top
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(points_.begin(), points_.end(), x);
  if (it == points_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - points_.begin()) - 1];
}

double EmpiricalCdf::left(double x) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it == points_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - points_.begin()) - 1];
}

namespace {

template <class FA, class FAL, class FB, class FBL>
double sup_at_points(const std::vector<double>& pts, FA fa, FAL fal, FB fb, FBL fbl) {
  double sup = 0.0;
  for (double p : pts) {
    sup = std::max(sup, std::abs(fa(p) - fb(p)));
    sup = std::max(sup, std::abs(fal(p) - fbl(p)));
  }
  return sup;
}

}  // namespace

double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  std::vector<double> pts = a.points();
  pts.insert(pts.end(), b.points().begin(), b.points().end());
  return sup_at_points(
      pts, [&](double x) { return a(x); }, [&](double x) { return a.left(x); },
      [&](double x) { return b(x); }, [&](double x) { return b.left(x); });
}

double ks_distance(const EmpiricalCdf& a, const DistributionCdf& b) {
  std::vector<double> pts = a.points();
  pts.insert(pts.end(), b.atoms.begin(), b.atoms.end());
  return sup_at_points(
      pts, [&](double x) { return a(x); }, [&](double x) { return a.left(x); },
      [&](double x) { return b.cdf(x); }, [&](double x) { return b.cdf_left(x); });
}

}  // namespace dap
