#include "pdm/interval.hpp"

#include <numbers>
#include <stdexcept>

namespace pdm {

double Interval::to_compact(double x) const {
  if (finite()) return (x - lo) / (hi - lo);
  if (lo_infinite() && hi_infinite()) return 0.5 + std::atan(x) / std::numbers::pi;
  if (lo_infinite()) {
    const double s = hi - x;  // s in (0, inf)
    return 1.0 - s / (1.0 + s);
  }
  const double s = x - lo;
  return s / (1.0 + s);
}

double Interval::from_compact(double t) const {
  if (finite()) return lo + t * (hi - lo);
  if (lo_infinite() && hi_infinite()) return std::tan(std::numbers::pi * (t - 0.5));
  if (lo_infinite()) {
    const double r = 1.0 - t;
    return hi - r / (1.0 - r);
  }
  return lo + t / (1.0 - t);
}

Interval Interval::truncated(double margin, double radius) const {
  Interval out = *this;
  double a = lo_infinite() ? -radius : lo;
  double b = hi_infinite() ? radius : hi;
  if (lo_infinite() && !hi_infinite()) a = hi - radius;
  if (hi_infinite() && !lo_infinite()) b = lo + radius;
  const double len = b - a;
  if (!lo_infinite()) a += margin * len;
  if (!hi_infinite()) b -= margin * len;
  out.lo = a;
  out.hi = b;
  out.lo_closed = out.hi_closed = true;
  return out;
}

std::vector<double> chebyshev_points(double a, double b, int count) {
  if (count < 1) throw std::invalid_argument("chebyshev_points: count < 1");
  std::vector<double> pts(static_cast<std::size_t>(count));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int k = 0; k < count; ++k) {
    // Chebyshev nodes of the first kind, ascending.
    const double theta = std::numbers::pi * (2.0 * (count - 1 - k) + 1.0) / (2.0 * count);
    pts[static_cast<std::size_t>(k)] = mid + half * std::cos(theta);
  }
  return pts;
}

std::vector<double> verification_grid(const Interval& domain, int count,
                                      double margin, double radius) {
  const Interval t = domain.truncated(margin, radius);
  return chebyshev_points(t.lo, t.hi, count);
}

std::vector<double> uniform_points(double a, double b, int count) {
  if (count < 2) throw std::invalid_argument("uniform_points: count < 2");
  std::vector<double> pts(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    pts[static_cast<std::size_t>(k)] = a + (b - a) * k / (count - 1);
  return pts;
}

}  // namespace pdm
