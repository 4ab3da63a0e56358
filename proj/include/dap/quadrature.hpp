#pragma once

#include <functional>

namespace dap {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  bool converged = false;
};

// Adaptive Gauss-Kronrod (G7/K15) on [a, b] to an absolute tolerance.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_depth = 22);

// As above, but throws NumericalError::QuadratureNonConvergence reporting the
// achieved error when the tolerance is not met.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 22);

}  // namespace dap
