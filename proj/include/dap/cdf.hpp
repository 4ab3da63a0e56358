#pragma once

#include <functional>
#include <span>
#include <vector>

namespace dap {

// Right-continuous empirical distribution of a finite sample, with optional
// per-sample weights (normalized internally). Unweighted samples give the
// usual step function with jumps 1/n.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);
  EmpiricalCdf(std::vector<double> samples, std::vector<double> weights);

  double operator()(double x) const;  // F(x), right-continuous
  double left(double x) const;        // F(x-)

  // Distinct jump locations in increasing order.
  const std::vector<double>& points() const { return points_; }
  std::size_t sample_count() const { return sample_count_; }

 private:
  std::vector<double> points_;
  std::vector<double> cumulative_;  // F at each point
  std::size_t sample_count_ = 0;
};

// A CDF given by callables, with its atom locations listed so the sup norm
// can be evaluated on both sides of every discontinuity.
struct DistributionCdf {
  std::function<double(double)> cdf;
  std::function<double(double)> cdf_left;
  std::vector<double> atoms;
};

// Kolmogorov-Smirnov sup-norm distance evaluated at all step points of both
// arguments (both one-sided limits at each point).
double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b);
double ks_distance(const EmpiricalCdf& a, const DistributionCdf& b);

}  // namespace dap
