#include "pdm/antiderivative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pdm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RealRoots {
  double plus;   // (-b + s) / 2a
  double minus;  // (-b - s) / 2a
};

// Roots of a y^2 + b y + c (a != 0, positive discriminant) without
// cancellation.
RealRoots stable_roots(double a, double b, double c, double s) {
  const double q = -0.5 * (b + (b >= 0.0 ? s : -s));
  const double r1 = q / a;
  const double r2 = q != 0.0 ? c / q : 0.0;
  return b >= 0.0 ? RealRoots{r2, r1} : RealRoots{r1, r2};
}

// log |a y^2 + b y + c|, factored through the roots when they are real.
double log_abs_quadratic(double a, double b, double c, double y) {
  const double disc = b * b - 4.0 * a * c;
  if (disc > 0.0) {
    const RealRoots r = stable_roots(a, b, c, std::sqrt(disc));
    return std::log(std::abs(a)) + std::log(std::abs(y - r.plus)) +
           std::log(std::abs(y - r.minus));
  }
  return std::log(std::abs((a * y + b) * y + c));
}

// Integral of 1 / (a y^2 + b y + c) with a != 0.
double inverse_quadratic(double a, double b, double c, double y) {
  const double disc = b * b - 4.0 * a * c;
  const double scale = std::max({b * b, std::abs(4.0 * a * c), 1e-300});
  if (std::abs(disc) <= 1e-14 * scale) {
    if (std::isinf(y)) return 0.0;
    return -2.0 / (2.0 * a * y + b);
  }
  if (disc < 0.0) {
    const double s = std::sqrt(-disc);
    if (std::isinf(y)) return (y * a > 0 ? 1.0 : -1.0) * std::numbers::pi / s;
    return 2.0 / s * std::atan((2.0 * a * y + b) / s);
  }
  const double s = std::sqrt(disc);
  if (std::isinf(y)) return 0.0;
  // (2ay + b - s) / (2ay + b + s) = (y - r_plus) / (y - r_minus)
  const RealRoots r = stable_roots(a, b, c, s);
  return (std::log(std::abs(y - r.plus)) - std::log(std::abs(y - r.minus))) / s;
}

}  // namespace

double rational_antiderivative(double p, double q, double a, double b, double c, double y) {
  if (a != 0.0) {
    // p y + q = (p / 2a)(2 a y + b) + (q - p b / 2a)
    const double k1 = p / (2.0 * a);
    const double k2 = q - p * b / (2.0 * a);
    double out = 0.0;
    if (k1 != 0.0) {
      out += std::isinf(y) ? (k1 > 0 ? kInf : -kInf)
                           : k1 * log_abs_quadratic(a, b, c, y);
    }
    if (k2 != 0.0) out += k2 * inverse_quadratic(a, b, c, y);
    return out;
  }
  if (b != 0.0) {
    const double k1 = p / b;
    const double k2 = (q - p * c / b) / b;
    if (std::isinf(y)) {
      if (k1 != 0.0) return (k1 > 0) == (y > 0) ? kInf : -kInf;
      if (k2 != 0.0) return k2 > 0 ? kInf : -kInf;
      return 0.0;
    }
    return k1 * y + k2 * std::log(std::abs(b * y + c));
  }
  if (std::isinf(y)) {
    if (p != 0.0) return (p / c) > 0 ? kInf : -kInf;
    if (q != 0.0) return (q / c > 0) == (y > 0) ? kInf : -kInf;
    return 0.0;
  }
  return (0.5 * p * y * y + q * y) / c;
}

double rational_antiderivative_linear_quadratic(double p, double q, double r, double s,
                                                double a, double c, double y) {
  if (r == 0.0) return rational_antiderivative(p / s, q / s, a, 0.0, c, y);
  // (p y + q) = K (a y^2 + c) + (L y + M)(r y + s)
  const double y0 = -s / r;
  const double K = (p * y0 + q) / (a * y0 * y0 + c);
  const double L = -K * a / r;
  const double M = (p - L * s) / r;
  double lin = 0.0;
  if (K != 0.0) {
    lin = std::isinf(y) ? ((K / r) > 0 ? kInf : -kInf)
                        : (K / r) * std::log(std::abs(r * y + s));
  }
  return lin + rational_antiderivative(L, M, a, 0.0, c, y);
}

}  // namespace pdm
