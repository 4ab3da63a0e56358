#pragma once

#include <cmath>

namespace dap {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Natural-log scale factor of a dB-valued Gaussian: ln(10^(chi/10)) = chi * LN10_OVER_10.
inline constexpr double kLn10Over10 = 0.23025850929940457;

// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Partial moment of a lognormal X with ln X ~ N(m, s^2):
//   E{ X^k * 1[X < c] } = exp(k m + k^2 s^2 / 2) * Phi((ln c - m - k s^2) / s).
// s == 0 degenerates to a point mass at e^m.
inline double lognormal_partial_moment(int k, double m, double s, double c) {
  if (c <= 0.0) return 0.0;
  const double full = std::exp(k * m + 0.5 * k * k * s * s);
  if (s == 0.0) return std::exp(m) < c ? full : 0.0;
  return full * normal_cdf((std::log(c) - m - k * s * s) / s);
}

}  // namespace dap
