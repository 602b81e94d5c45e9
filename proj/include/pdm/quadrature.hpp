#pragma once

#include <functional>

namespace pdm {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod on [a, b]; either bound may be infinite.
/// Throws QuadratureError when the error estimate exceeds both
/// `rel_tol` times the L1 norm and `abs_tol`.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10, double abs_tol = 1e-300);

}  // namespace pdm
