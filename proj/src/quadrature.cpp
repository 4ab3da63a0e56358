#include "dap/quadrature.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "dap/errors.hpp"

namespace dap {

namespace {

// Kronrod-15 nodes/weights on [-1, 1]; odd-indexed nodes are the Gauss-7 set.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEstimate {
  double kronrod;
  double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_gauss = kWg[3] * fc;
  double result_kronrod = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double lo = f(center - half * kXgk[j]);
    const double hi = f(center + half * kXgk[j]);
    result_kronrod += kWgk[j] * (lo + hi);
    if (j % 2 == 1) result_gauss += kWg[j / 2] * (lo + hi);
  }
  return {result_kronrod * half, std::abs(result_kronrod - result_gauss) * half};
}

void refine(const std::function<double(double)>& f, double a, double b,
            const PanelEstimate& est, double tol, int depth, double& value, double& error) {
  if (est.error <= tol || depth <= 0) {
    value += est.kronrod;
    error += est.error;
    return;
  }
  const double mid = 0.5 * (a + b);
  const PanelEstimate left = gk15(f, a, mid);
  const PanelEstimate right = gk15(f, mid, b);
  refine(f, a, mid, left, tol / 2.0, depth - 1, value, error);
  refine(f, mid, b, right, tol / 2.0, depth - 1, value, error);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_depth) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  const PanelEstimate whole = gk15(f, a, b);
  refine(f, a, b, whole, abs_tol, max_depth, result.value, result.error);
  result.converged = result.error <= abs_tol;
  return result;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
  const QuadratureResult result = integrate_adaptive(f, a, b, abs_tol, max_depth);
  if (!result.converged) {
    throw NumericalError(
        NumericalError::Kind::QuadratureNonConvergence,
        fmt::format("quadrature on [{}, {}] reached error {:.3e}, requested {:.3e}", a, b,
                    result.error, abs_tol));
  }
  return result.value;
}

}  // namespace dap
