#include "pdm/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pdm/errors.hpp"

namespace pdm {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  // Finite ranges are mapped onto [-1, 1] so the error estimate is in the
  // same units as the value.
  std::function<double(double)> g = f;
  double ga = a, gb = b;
  if (std::isfinite(a) && std::isfinite(b)) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    g = [&f, mid, half](double t) { return half * f(mid + half * t); };
    ga = -1.0;
    gb = 1.0;
  }
  double err = 0.0;
  double l1 = 0.0;
  const double coarse = gauss_kronrod<double, 61>::integrate(g, ga, gb, 0, 0.0, &err, &l1);
  if (std::isfinite(coarse) && err <= std::max({rel_tol * l1, abs_tol, 1e3 * kEps * l1}))
    return {coarse, err};
  const double v = gauss_kronrod<double, 61>::integrate(g, ga, gb, 20, std::max(rel_tol * 1e-2, 1e-13), &err, &l1);
  if (!std::isfinite(v) || err > std::max({rel_tol * l1, abs_tol, 1e5 * kEps * l1})) {
    std::ostringstream os;
    os << "quadrature did not converge on [" << a << ", " << b << "]: value " << v
       << ", error estimate " << err;
    throw QuadratureError(os.str());
  }
  return {v, err};
}

}  // namespace pdm
