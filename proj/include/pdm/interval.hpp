#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace pdm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Real interval with open/closed flags; infinite ends use ±kInf.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool lo_closed = false;
  bool hi_closed = false;

  bool lo_infinite() const { return std::isinf(lo); }
  bool hi_infinite() const { return std::isinf(hi); }
  bool finite() const { return !lo_infinite() && !hi_infinite(); }

  bool interior(double x) const { return x > lo && x < hi; }
  bool contains(double x) const {
    if (std::isnan(x)) return false;
    if (interior(x)) return true;
    return (x == lo && lo_closed && !lo_infinite()) ||
           (x == hi && hi_closed && !hi_infinite());
  }

  /// Compactification t in (0, 1) <-> x, used only by numeric code.
  double to_compact(double x) const;
  double from_compact(double t) const;

  /// Interior sample window: finite ends pulled in by `margin` times the
  /// length, infinite ends replaced by ±`radius`.
  Interval truncated(double margin, double radius) const;
};

/// `count` Chebyshev-distributed points strictly inside [a, b].
std::vector<double> chebyshev_points(double a, double b, int count);

/// Verification grid: Chebyshev points on the truncated interior.
std::vector<double> verification_grid(const Interval& domain, int count = 513,
                                      double margin = 1e-3,
                                      double radius = 20.0);

std::vector<double> uniform_points(double a, double b, int count);

}  // namespace pdm
