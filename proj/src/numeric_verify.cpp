#include "pdm/numeric_verify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "pdm/antiderivative.hpp"
#include "pdm/errors.hpp"
#include "pdm/quadrature.hpp"

namespace pdm {

namespace {

constexpr double kWallOffset = 1e-6;
constexpr double kVClamp = 1e200;

double clamp_potential(double v) {
  if (std::isnan(v) || v > kVClamp) return kVClamp;
  return v;
}

// x at increasing u nodes, continuing Newton from the previous node and
// falling back to bisection when a step misbehaves.
std::vector<double> x_nodes_of(const CoordinateMap& cm, double u0, double h, int count) {
  std::vector<double> xs(static_cast<std::size_t>(count));
  double x = cm.x_of_u(u0);
  xs[0] = x;
  for (int j = 1; j < count; ++j) {
    const double u = u0 + j * h;
    bool done = false;
    double y = x;
    for (int it = 0; it < 6 && !done; ++it) {
      const double du = u - cm.u_of_x(y);
      const double step = cm.f(y) * du;
      if (!std::isfinite(step) || !cm.x_domain.interior(y + step)) break;
      y += step;
      done = std::abs(step) <= 1e-14 * std::max(1.0, std::abs(y));
    }
    x = done ? y : cm.x_of_u(u);
    xs[static_cast<std::size_t>(j)] = x;
  }
  return xs;
}

double center_of(const Interval& d) {
  if (d.finite()) return 0.5 * (d.lo + d.hi);
  if (!d.lo_infinite()) return d.lo + 1.0;
  if (!d.hi_infinite()) return d.hi - 1.0;
  return 0.0;
}

}  // namespace

double CoordinateMap::x_of_u(double u) const {
  if (!(u > u_range.lo && u < u_range.hi)) {
    std::ostringstream os;
    os << "u = " << u << " outside the mapped range";
    throw DomainError(os.str());
  }
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 64; ++it) {
    const double t = 0.5 * (lo + hi);
    const double x = x_domain.from_compact(t);
    if (!x_domain.interior(x)) {
      (t < 0.5 ? lo : hi) = t;
      continue;
    }
    (u_of_x(x) < u ? lo : hi) = t;
  }
  double x = x_domain.from_compact(0.5 * (lo + hi));
  if (!x_domain.interior(x)) x = x_domain.from_compact(lo > 0.5 ? lo : hi);
  if (!x_domain.interior(x)) throw DomainError("u lies beyond the representable x range");
  // Newton polish, du/dx = 1/f.
  for (int it = 0; it < 3; ++it) {
    const double step = f(x) * (u - u_of_x(x));
    if (!std::isfinite(step) || !x_domain.interior(x + step)) break;
    x += step;
  }
  return x;
}

std::function<double(double)> closed_form_u(const PhiSpec& phi, const PrimedConstants& primed) {
  const ClassConstants q = deformed_constants(phi.k, primed);
  auto fn = phi.phi;
  switch (phi.cls) {
    case SIClass::one:
      return [q, fn](double x) { return rational_antiderivative(0.0, 1.0, q.A, q.B, q.C, fn(x)); };
    case SIClass::two:
      return [q, fn](double x) { return rational_antiderivative(0.0, 1.0, q.A, 0.0, q.B, fn(x)); };
    case SIClass::three:
      return {};
  }
  return {};
}

namespace {

// Cumulative table of u at points uniform in the compact coordinate.
struct UTable {
  Interval domain;
  std::function<double(double)> inv_f;
  std::vector<double> x;
  std::vector<double> u;
  int cells = 0;

  double eval(double xv) const {
    const double t = domain.to_compact(xv);
    std::size_t i = static_cast<std::size_t>(std::clamp(std::lround(t * cells), 1L, static_cast<long>(cells - 1))) - 1;
    if (xv == x[i]) return u[i];
    const double a = std::min(x[i], xv), b = std::max(x[i], xv);
    const double part = integrate(inv_f, a, b, 1e-12, 1e-15).value;
    return u[i] + (xv > x[i] ? part : -part);
  }
};

double end_integral(const std::function<double(double)>& inv_f, double a, double b) {
  try {
    const double v = integrate(inv_f, a, b, 1e-10).value;
    return std::abs(v) > 1e12 ? kInf : v;
  } catch (const QuadratureError&) {
    return kInf;
  }
}

}  // namespace

CoordinateMap map_coordinate(const DeformationSpec& f, std::function<double(double)> closed) {
  CoordinateMap cm;
  cm.x_domain = f.domain();
  const Interval& d = cm.x_domain;
  cm.f = [f](double x) { return eval_f(f, x); };
  cm.u_range.lo_closed = cm.u_range.hi_closed = false;
  if (closed) {
    cm.closed_form = true;
    cm.u_of_x = closed;
    cm.u_range.lo = closed(d.lo);
    cm.u_range.hi = closed(d.hi);
    if (!(cm.u_range.lo < cm.u_range.hi))
      throw InternalConsistencyError("closed-form u map is not increasing");
    return cm;
  }
  auto table = std::make_shared<UTable>();
  table->domain = d;
  table->inv_f = [f](double x) { return 1.0 / eval_f(f, x); };
  table->cells = 2048;
  for (int i = 1; i < table->cells; ++i) {
    const double x = d.from_compact(static_cast<double>(i) / table->cells);
    if (!table->x.empty() && !(x > table->x.back())) throw InternalConsistencyError("u table");
    const double u = table->x.empty()
                         ? 0.0
                         : table->u.back() + integrate(table->inv_f, table->x.back(), x, 1e-12).value;
    table->x.push_back(x);
    table->u.push_back(u);
  }
  cm.u_of_x = [table](double x) { return table->eval(x); };
  cm.u_range.lo = table->u.front() - end_integral(table->inv_f, d.lo, table->x.front());
  cm.u_range.hi = table->u.back() + end_integral(table->inv_f, table->x.back(), d.hi);
  return cm;
}

MappedProblem mapped_problem(const PotentialModel& m, const ParamMap& p) {
  const ClassBinding b = m.binding(p);
  MappedProblem prob;
  prob.cmap = map_coordinate(model_deformation(m, p), closed_form_u(b.phi, b.primed));
  prob.v_eff = [&m, p](double x) { return m.v_eff(p, x); };
  prob.singular_ends = m.singular_ends;
  prob.threshold = m.continuum(p);
  return prob;
}

namespace {

// Outward march from the center until the WKB exponent of a state at
// `energy` accumulated beyond the last classically allowed point reaches
// `decay`.
double wkb_cut(const MappedProblem& prob, double energy, double decay, bool upper,
               std::string& note) {
  const CoordinateMap& cm = prob.cmap;
  const double dir = upper ? 1.0 : -1.0;
  const double uc = cm.u_of_x(center_of(cm.x_domain));
  double u = uc;
  double s = 0.0;
  for (int it = 0; it < 200000; ++it) {
    const double v = prob.v_eff(cm.x_of_u(u));
    if (v < -1e8) throw VerificationUnsupportedError("potential unbounded below on the truncated grid");
    const double gap = v - energy;
    double du = std::min(0.05 * std::max(1.0, std::abs(u - uc)),
                         0.1 / std::sqrt(std::max(std::abs(gap), 1e-12)));
    du = std::max(du, 1e-4);
    if (gap <= 0.0) {
      s = 0.0;
    } else {
      s += std::sqrt(gap) * du;
      if (s >= decay) return u;
    }
    const double next = u + dir * du;
    if (!(next > cm.u_range.lo && next < cm.u_range.hi)) break;
    u = next;
  }
  note += upper ? " hi:capped" : " lo:capped";
  return u;
}

}  // namespace

UWindow u_window(const MappedProblem& prob, double energy, double decay) {
  const CoordinateMap& cm = prob.cmap;
  const Interval& d = cm.x_domain;
  UWindow w;
  std::ostringstream note;
  std::string capped;
  for (int side = 0; side < 2; ++side) {
    const bool upper = side == 1;
    const bool x_inf = upper ? d.hi_infinite() : d.lo_infinite();
    const double u_end = upper ? cm.u_range.hi : cm.u_range.lo;
    double u;
    if (!x_inf && prob.singular_ends[static_cast<std::size_t>(side)]) {
      const double x = upper ? d.hi - kWallOffset : d.lo + kWallOffset;
      u = cm.u_of_x(x);
      note << (upper ? " hi:x=end-1e-6" : " lo:x=end+1e-6");
    } else if (std::isfinite(u_end)) {
      u = u_end;
      note << (upper ? " hi:exact" : " lo:exact");
    } else {
      u = wkb_cut(prob, energy, decay, upper, capped);
      note << (upper ? " hi:u=" : " lo:u=") << u;
    }
    (upper ? w.hi : w.lo) = u;
  }
  w.truncation = note.str().substr(1) + capped;
  return w;
}

TridiagonalSystem build_operator(const MappedProblem& prob, const UWindow& w, int N) {
  if (N < 64) throw std::invalid_argument("build_operator: N < 64");
  TridiagonalSystem sys;
  sys.h = (w.hi - w.lo) / N;
  const double inv_h2 = 1.0 / (sys.h * sys.h);
  sys.diag.resize(static_cast<std::size_t>(N - 1));
  sys.off.assign(static_cast<std::size_t>(N - 2), -inv_h2);
  sys.u_nodes.resize(sys.diag.size());
  sys.x_nodes = x_nodes_of(prob.cmap, w.lo + sys.h, sys.h, N - 1);
  for (int j = 1; j < N; ++j) {
    const std::size_t i = static_cast<std::size_t>(j - 1);
    const double u = w.lo + j * sys.h;
    const double x = sys.x_nodes[i];
    const double v = clamp_potential(prob.v_eff(x));
    if (v == -kInf) throw VerificationUnsupportedError("potential is -inf on the grid");
    sys.u_nodes[i] = u;
    sys.diag[i] = 2.0 * inv_h2 + v;
  }
  return sys;
}

int sturm_count(const TridiagonalSystem& sys, double lambda) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < sys.diag.size(); ++i) {
    const double b2 = i == 0 ? 0.0 : sys.off[i - 1] * sys.off[i - 1];
    q = sys.diag[i] - lambda - (i == 0 ? 0.0 : b2 / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

DiscreteSpectrum eigen_solve(const TridiagonalSystem& sys, int k) {
  if (k < 1) throw std::invalid_argument("eigen_solve: k < 1");
  if (static_cast<std::size_t>(k) > sys.diag.size())
    throw std::invalid_argument("eigen_solve: k exceeds the matrix dimension");
  double gmin = kInf;
  for (std::size_t i = 0; i < sys.diag.size(); ++i) {
    const double r = (i > 0 ? std::abs(sys.off[i - 1]) : 0.0) +
                     (i < sys.off.size() ? std::abs(sys.off[i]) : 0.0);
    gmin = std::min(gmin, sys.diag[i] - r);
  }
  DiscreteSpectrum out;
  out.grid_size = static_cast<int>(sys.diag.size()) + 1;
  double floor = gmin;
  for (int i = 0; i < k; ++i) {
    double lo = floor;
    double width = std::max(1.0, std::abs(lo));
    double hi = lo + width;
    while (sturm_count(sys, hi) <= i) {
      width *= 2.0;
      hi = lo + width;
      if (!std::isfinite(hi)) throw InternalConsistencyError("eigen_solve: no upper bracket");
    }
    for (int it = 0; it < 4000; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (hi - lo <= 1e-15 * std::max(std::abs(lo), std::abs(hi))) break;
      (sturm_count(sys, mid) <= i ? lo : hi) = mid;
    }
    const double e = 0.5 * (lo + hi);
    out.eigenvalues.push_back(e);
    floor = lo;
  }
  return out;
}

NumericSpectrum numeric_spectrum(const MappedProblem& prob, int k, const VerifyOptions& opt) {
  if (k < 1) throw std::invalid_argument("numeric_spectrum: k < 1");
  NumericSpectrum ns;
  // Provisional window, then refined from the top requested level.
  const CoordinateMap& cm = prob.cmap;
  const double uc = cm.u_of_x(center_of(cm.x_domain));
  UWindow w = u_window(prob, 0.0, 0.0);
  if (!std::isfinite(cm.u_range.lo) && cm.x_domain.lo_infinite()) w.lo = uc - 40.0;
  if (!std::isfinite(cm.u_range.hi) && cm.x_domain.hi_infinite()) w.hi = uc + 40.0;
  const bool needs_wkb = (!std::isfinite(cm.u_range.lo) && cm.x_domain.lo_infinite()) ||
                         (!std::isfinite(cm.u_range.hi) && cm.x_domain.hi_infinite());
  if (needs_wkb) {
    for (int pass = 0; pass < 2; ++pass) {
      const DiscreteSpectrum pre = eigen_solve(build_operator(prob, w, opt.grid), k);
      double top = pre.eigenvalues.back();
      if (prob.threshold && top >= *prob.threshold) top = *prob.threshold - 1e-6;
      w = u_window(prob, top);
    }
  }
  ns.window = w;
  int N = opt.grid;
  for (int level = 0; level < std::max(1, opt.richardson_levels); ++level, N *= 2) {
    const TridiagonalSystem sys = build_operator(prob, w, N);
    ns.raw.push_back(eigen_solve(sys, k).eigenvalues);
    ns.grids.push_back(N);
    if (prob.threshold) ns.bound_below_threshold = sturm_count(sys, *prob.threshold);
  }
  const std::size_t L = ns.raw.size();
  ns.extrapolated.resize(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < ns.extrapolated.size(); ++i) {
    if (L == 1) {
      ns.extrapolated[i] = ns.raw[0][i];
    } else if (L == 2) {
      ns.extrapolated[i] = (4.0 * ns.raw[1][i] - ns.raw[0][i]) / 3.0;
    } else {
      const double r1 = (4.0 * ns.raw[L - 2][i] - ns.raw[L - 3][i]) / 3.0;
      const double r2 = (4.0 * ns.raw[L - 1][i] - ns.raw[L - 2][i]) / 3.0;
      ns.extrapolated[i] = (16.0 * r2 - r1) / 15.0;
    }
  }
  return ns;
}

ComparisonReport compare_spectra(const SpectrumResult& analytic, const NumericSpectrum& numeric,
                                 double tol) {
  ComparisonReport r;
  r.tol = tol;
  r.analytic = analytic.energies;
  const std::size_t n = std::min(analytic.energies.size(), numeric.extrapolated.size());
  r.numeric.assign(numeric.extrapolated.begin(),
                   numeric.extrapolated.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double a = analytic.energies[i];
    const double e = std::abs(numeric.extrapolated[i] - a) / std::max(std::abs(a), 1e-300);
    r.rel_error.push_back(e);
    r.max_rel_error = std::max(r.max_rel_error, e);
  }
  r.levels_ok = n == analytic.energies.size() && r.max_rel_error <= tol;
  if (!analytic.count.is_infinite() && numeric.bound_below_threshold >= 0) {
    r.numeric_count = numeric.bound_below_threshold;
    const int expected = analytic.count.kind == BoundStateCount::Kind::finite ? analytic.count.value : 0;
    r.count_ok = *r.numeric_count == expected;
  }
  r.pass = r.levels_ok && r.count_ok;
  return r;
}

ComparisonReport verify_model(const PotentialModel& m, const ParamMap& p, int levels,
                              const VerifyOptions& opt) {
  const SpectrumResult analytic = spectrum_table(m, p, levels);
  const MappedProblem prob = mapped_problem(m, p);
  const int k = std::max<int>(1, static_cast<int>(analytic.energies.size()));
  return compare_spectra(analytic, numeric_spectrum(prob, k, opt), opt.tol);
}

double eigen_residual(const MappedProblem& prob, const Wavefunction& psi, double energy, int N) {
  const UWindow w = u_window(prob, energy);
  const double h = (w.hi - w.lo) / N;
  std::vector<double> x(static_cast<std::size_t>(N) + 1);
  {
    // Interior nodes; the end nodes are filled below when inside the range.
    const std::vector<double> xi = x_nodes_of(prob.cmap, w.lo + h, h, N - 1);
    std::copy(xi.begin(), xi.end(), x.begin() + 1);
  }
  std::vector<double> logchi(x.size());
  std::vector<int> sign(x.size());
  double peak = -kInf;
  for (int j = 0; j <= N; ++j) {
    const std::size_t i = static_cast<std::size_t>(j);
    const double u = w.lo + j * h;
    const bool inside = u > prob.cmap.u_range.lo && u < prob.cmap.u_range.hi;
    if (!inside) {
      logchi[i] = -kInf;
      sign[i] = 0;
      continue;
    }
    if (j == 0 || j == N) x[i] = prob.cmap.x_of_u(u);
    const Wavefunction::LogValue lv = psi.log_psi(x[i]);
    logchi[i] = lv.log_abs + 0.5 * std::log(prob.cmap.f(x[i]));
    sign[i] = lv.sign;
    if (std::isfinite(logchi[i])) peak = std::max(peak, logchi[i]);
  }
  auto chi = [&](std::size_t i) {
    return std::isfinite(logchi[i]) ? sign[i] * std::exp(logchi[i] - peak) : 0.0;
  };
  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i < static_cast<std::size_t>(N); ++i) {
    const double c = chi(i);
    const double v = clamp_potential(prob.v_eff(x[i]));
    const double r = (2.0 * c - chi(i - 1) - chi(i + 1)) / (h * h) + (v - energy) * c;
    num += r * r;
    den += c * c;
  }
  return std::sqrt(num / den);
}

}  // namespace pdm
