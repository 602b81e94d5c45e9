#include "pdm/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "pdm/antiderivative.hpp"
#include "pdm/errors.hpp"
#include "pdm/quadrature.hpp"

namespace pdm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

const LambdaSet& at(const SIParameterTrack& t, int i) {
  if (i < 0 || i >= t.size()) throw std::out_of_range("track index out of range");
  return t.lambdas[static_cast<std::size_t>(i)];
}

}  // namespace

Polynomial poly_step(SIClass cls, int n, const Polynomial& pn, const SIParameterTrack& track,
                     int shift, const ClassConstants& k, const PrimedConstants& primed) {
  if (pn.degree() != n) {
    std::ostringstream os;
    os << "poly_step: expected degree " << n << ", got " << pn.degree();
    throw InternalConsistencyError(os.str());
  }
  const ClassConstants q = deformed_constants(k, primed);
  const LambdaSet& base = at(track, shift);
  const LambdaSet& top = at(track, shift + n + 1);
  const double ls = top.lambda + base.lambda;
  const double ms = top.mu + base.mu;
  const Polynomial dp = pn.derivative();
  Polynomial out;
  switch (cls) {
    case SIClass::one:
      out = Polynomial{-q.C, -q.B, -q.A} * dp + Polynomial{ms, ls} * pn;
      break;
    case SIClass::two:
      out = Polynomial{0.0, 2.0 * q.A, 2.0 * q.B} * dp +
            Polynomial{ls - n * q.A, ms - n * q.B} * pn;
      break;
    case SIClass::three:
      out = Polynomial{q.D, q.C} *
                (Polynomial{-k.B, 0.0, -k.A} * dp + Polynomial{0.0, n * k.A} * pn) +
            Polynomial{ms, ls} * pn;
      break;
  }
  if (out.degree() != n + 1) {
    std::ostringstream os;
    os << "poly_step: P_" << n + 1 << " came out with degree " << out.degree();
    throw InternalConsistencyError(os.str());
  }
  return out;
}

const Polynomial& PolynomialTable::get(int n, int shift) {
  const auto key = std::make_pair(n, shift);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  Polynomial p;
  if (n == 0) {
    p = Polynomial::constant(1.0);
  } else {
    const Polynomial& prev = get(n - 1, shift + 1);
    p = poly_step(track_->cls(), n - 1, prev, *track_, shift, track_->phi.k, track_->primed);
  }
  return cache_.emplace(key, std::move(p)).first->second;
}

double transform_variable(SIClass cls, const ClassConstants&, double phi) {
  if (cls == SIClass::two) {
    if (phi == 0.0) throw DomainError("class 2 transform y = phi^-2 is singular at phi = 0");
    return 1.0 / (phi * phi);
  }
  return phi;
}

namespace {

// log|prefactor| of phi_n in terms of phi.
double log_prefactor(SIClass cls, const ClassConstants& k, int n, double phi) {
  switch (cls) {
    case SIClass::one:
      return 0.0;
    case SIClass::two:
      return n * std::log(std::abs(phi));  // y^{-n/2} with y = phi^-2
    case SIClass::three:
      return -0.5 * n * std::log(k.A * phi * phi + k.B);
  }
  return 0.0;
}

double prefactor_sign(SIClass cls, int n, double phi) {
  // y^{-n/2} = |phi|^n, which is phi^n up to (-1)^n on phi < 0.
  if (cls == SIClass::two && phi < 0.0 && (n % 2) == 1) return -1.0;
  return 1.0;
}

}  // namespace

double phi_n(const SIParameterTrack& track, int n, double x) {
  PolynomialTable table(track);
  const double phi = eval_phi(track.phi, x);
  const double y = transform_variable(track.cls(), track.phi.k, phi);
  return prefactor_sign(track.cls(), n, phi) *
         std::exp(log_prefactor(track.cls(), track.phi.k, n, phi)) * table.get(n)(y);
}

namespace {

double closed_exponent(const SIParameterTrack& track, int n, double x) {
  const LambdaSet& lam = at(track, n);
  const ClassConstants& k = track.phi.k;
  const ClassConstants q = deformed_constants(k, track.primed);
  const double phi = eval_phi(track.phi, x);
  switch (track.cls()) {
    case SIClass::one:
      // W/f dx = (lambda phi + mu) / (A~ phi^2 + B~ phi + C~) dphi
      return rational_antiderivative(lam.lambda, lam.mu, q.A, q.B, q.C, phi);
    case SIClass::two: {
      // W/f dx = (lambda s + mu) / (2 s (A~ s + B~)) ds, s = phi^2
      const double s = phi * phi;
      const double l = lam.lambda, m = lam.mu;
      if (q.B != 0.0) {
        double out = (m / q.B) * std::log(s);
        const double c2 = l - m * q.A / q.B;
        out += q.A != 0.0 ? c2 / q.A * std::log(std::abs(q.A * s + q.B)) : c2 * s / q.B;
        return 0.5 * out;
      }
      if (q.A == 0.0) throw SIUnsolvableError("class 2 with A~ = B~ = 0 has f = 0");
      return 0.5 * ((l / q.A) * std::log(s) - m / (q.A * s));
    }
    case SIClass::three:
      // W/f dx = (lambda phi + mu) / ((C~ phi + D~)(A phi^2 + B)) dphi
      return rational_antiderivative_linear_quadratic(lam.lambda, lam.mu, q.C, q.D, k.A, k.B,
                                                      phi);
  }
  return 0.0;
}

// Where phi tends to a nonzero root of its closure at an infinite end, the
// closed form divides by phi - phi_end and loses digits. Past the point where
// that gap drops below 1e-6 |phi_end| the exponent is continued by quadrature.
// Skipped when f vanishes at that end (Eckart at alpha = -2): f then carries
// the same cancellation.
std::optional<double> tail_cut(const SIParameterTrack& track, int end) {
  const PhiSpec& s = track.phi;
  const Interval& d = s.domain;
  const bool infinite = end == 0 ? d.lo_infinite() : d.hi_infinite();
  const double limit = end == 0 ? s.phi_at_lo : s.phi_at_hi;
  if (!infinite || !std::isfinite(limit) || limit == 0.0) return std::nullopt;
  const std::optional<double> f_end = end == 0 ? track.deformation.f_limit_lo : track.deformation.f_limit_hi;
  if (f_end && !(*f_end > 0.0)) return std::nullopt;
  const double gap = 1e-6 * std::abs(limit);
  auto near = [&](double t) { return std::abs(eval_phi(s, d.from_compact(t)) - limit) < gap; };
  double inner = 0.5, outer = end == 0 ? 0.0 : 1.0;
  if (near(inner)) return std::nullopt;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (inner + outer);
    (near(mid) ? outer : inner) = mid;
  }
  return d.from_compact(inner);
}

bool beyond(int end, double cut, double x) { return end == 0 ? x < cut : x > cut; }

// integral of W/f from `cut` to x, in pieces of doubling width
std::optional<double> tail_integral(const SIParameterTrack& track, int n, double cut, double x) {
  const LambdaSet lam = at(track, n);
  auto w_over_f = [&](double t) {
    return eval_W(track.cls(), lam, track.phi, t) / eval_f(track.deformation, t);
  };
  const double dir = x > cut ? 1.0 : -1.0;
  double v = 0.0, from = cut, width = 1.0;
  try {
    while (dir * (x - from) > 0.0) {
      const double to = dir * (x - from) > width ? from + dir * width : x;
      v += integrate(w_over_f, std::min(from, to), std::max(from, to), 1e-10, 1e-15).value;
      from = to;
      width *= 2.0;
    }
  } catch (const QuadratureError&) {
    return std::nullopt;
  }
  return dir * v;
}

}  // namespace

double integrating_exponent(const SIParameterTrack& track, int n, double x) {
  for (int end = 0; end < 2; ++end) {
    const std::optional<double> cut = tail_cut(track, end);
    if (!cut || !beyond(end, *cut, x)) continue;
    if (const auto v = tail_integral(track, n, *cut, x)) return closed_exponent(track, n, *cut) + *v;
  }
  return closed_exponent(track, n, x);
}

double integrating_factor(const SIParameterTrack& track, int n, double x, double anchor) {
  return std::exp(-(integrating_exponent(track, n, x) - integrating_exponent(track, n, anchor)));
}

double integrating_factor_quadrature(const SIParameterTrack& track, int n, double x,
                                     double anchor) {
  const LambdaSet lam = at(track, n);
  auto integrand = [&](double t) {
    return eval_W(track.cls(), lam, track.phi, t) / eval_f(track.deformation, t);
  };
  if (x == anchor) return 1.0;
  const double a = std::min(x, anchor), b = std::max(x, anchor);
  const double v = integrate(integrand, a, b, 1e-10).value;
  return std::exp(x > anchor ? -v : v);
}

Wavefunction::Wavefunction(const SIParameterTrack& track, int n) : track_(track), n_(n) {
  if (n < 0 || n >= track.size()) throw std::out_of_range("Wavefunction: level outside track");
  PolynomialTable table(track_);
  p_ = table.get(n);
  for (int end = 0; end < 2; ++end) {
    cut_[end] = tail_cut(track_, end);
    if (cut_[end]) cut_exponent_[end] = closed_exponent(track_, n_, *cut_[end]);
  }
}

double Wavefunction::exponent(double x) const {
  for (int end = 0; end < 2; ++end) {
    if (!cut_[end] || !beyond(end, *cut_[end], x)) continue;
    if (const auto v = tail_integral(track_, n_, *cut_[end], x)) return cut_exponent_[end] + *v;
  }
  return closed_exponent(track_, n_, x);
}

Wavefunction::LogValue Wavefunction::log_psi(double x) const {
  const SIClass cls = track_.cls();
  const double phi = eval_phi(track_.phi, x);
  const double y = transform_variable(cls, track_.phi.k, phi);
  const double pv = p_(y);
  LogValue out;
  if (pv == 0.0) {
    out.log_abs = kNegInf;
    return out;
  }
  const double f = eval_f(track_.deformation, x);
  out.sign = (pv > 0 ? 1 : -1) * static_cast<int>(prefactor_sign(cls, n_, phi));
  out.log_abs = -0.5 * std::log(f) + log_prefactor(cls, track_.phi.k, n_, phi) +
                std::log(std::abs(pv)) - exponent(x);
  return out;
}

double Wavefunction::psi(double x, double shift) const {
  const LogValue v = log_psi(x);
  if (v.sign == 0 || !std::isfinite(v.log_abs)) return 0.0;
  return v.sign * std::exp(v.log_abs - shift);
}

double Wavefunction::log_density_f(double x) const {
  return 2.0 * log_psi(x).log_abs + std::log(eval_f(track_.deformation, x));
}

namespace {

double safe_exp(double v) { return std::isfinite(v) ? std::exp(v) : 0.0; }

// Center used to anchor approach sequences toward infinite ends.
double center(const Interval& d) {
  if (d.finite()) return 0.5 * (d.lo + d.hi);
  if (!d.lo_infinite()) return d.lo + 1.0;
  if (!d.hi_infinite()) return d.hi - 1.0;
  return 0.0;
}

// k-th point of the approach sequence toward one end: the distance to a
// finite end shrinks by 4 per step, the distance to an infinite end doubles.
double approach_point(const Interval& d, bool upper, int k) {
  const double dir = upper ? 1.0 : -1.0;
  if (upper ? d.hi_infinite() : d.lo_infinite())
    return center(d) + dir * std::ldexp(1.0, k + 1);
  const double end = upper ? d.hi : d.lo;
  const double len = d.finite() ? d.hi - d.lo : 1.0;
  return end - dir * 0.05 * len * std::ldexp(1.0, -2 * k);
}

constexpr int kMaxApproach = 60;

// Extrapolated limit from the last three points, with the convergence
// ratio estimated from the points themselves (Aitken delta-squared).
double extrapolate3(double a, double b, double c) {
  const double d1 = b - a;
  const double d2 = c - b;
  const double den = d2 - d1;
  if (den == 0.0 || !std::isfinite(den)) return c;
  return c - d2 * d2 / den;
}

bool tail_decays_below(const std::vector<double>& s, double tol) {
  const std::size_t m = s.size();
  if (m < 3) return false;
  return s[m - 1] <= tol && s[m - 2] <= tol * 1e3 && s[m - 1] <= s[m - 2] && s[m - 2] <= s[m - 3];
}

struct EndLimit {
  std::optional<double> value;
  double spread = kInf;
};

// Limit of value(x) along the approach sequence toward one end. NaN values
// stop the sequence.
EndLimit approach_limit(const std::function<double(double)>& value, const Interval& d,
                        bool upper, double tol) {
  std::vector<double> seq;
  EndLimit out;
  for (int k = 0; k < kMaxApproach; ++k) {
    const double x = approach_point(d, upper, k);
    if (!d.interior(x)) break;
    const double v = value(x);
    if (std::isnan(v)) break;
    seq.push_back(v);
    if (tail_decays_below(seq, tol)) {
      out.value = seq.back();
      return out;
    }
    if (seq.size() >= 4) {
      const std::size_t m = seq.size();
      const double e_new = extrapolate3(seq[m - 3], seq[m - 2], seq[m - 1]);
      const double e_old = extrapolate3(seq[m - 4], seq[m - 3], seq[m - 2]);
      out.spread = std::abs(e_new - e_old);
      if (out.spread <= std::max(tol, 1e-6 * std::abs(e_new))) {
        out.value = std::max(0.0, e_new);
        return out;
      }
    }
  }
  return out;
}

double interior_log_max(const Wavefunction& psi) {
  const Interval& d = psi.track().phi.domain;
  const Interval t = d.truncated(0.01, 8.0);
  double out = kNegInf;
  for (double x : uniform_points(t.lo, t.hi, 801)) out = std::max(out, psi.log_density_f(x));
  return out;
}

}  // namespace

double truncation_radius(const Wavefunction& psi, const Interval& domain) {
  if (domain.finite()) return 0.0;
  const Interval probe = domain.truncated(0.0, 4.0);
  double peak = kNegInf;
  for (double x : uniform_points(probe.lo + 1e-9, probe.hi - 1e-9, 401))
    peak = std::max(peak, 2.0 * psi.log_psi(x).log_abs);
  const double cut = peak + std::log(1e-14);
  auto below = [&](double x) { return !(2.0 * psi.log_psi(x).log_abs > cut); };
  double radius = 4.0;
  for (int iter = 0; iter < 50; ++iter) {
    const Interval t = domain.truncated(0.0, radius);
    const bool lo_ok = !domain.lo_infinite() || below(t.lo);
    const bool hi_ok = !domain.hi_infinite() || below(t.hi);
    if (lo_ok && hi_ok) return radius;
    radius *= 2.0;
  }
  return radius;
}

BoundaryLimits boundary_limits(const Wavefunction& psi, double tol) {
  const Interval& d = psi.track().phi.domain;
  const double interior_max = interior_log_max(psi);
  auto density = [&](double x) { return safe_exp(psi.log_density_f(x) - interior_max); };
  BoundaryLimits out;
  for (int side = 0; side < 2; ++side) {
    const bool upper = side == 1;
    const EndLimit e = approach_limit(density, d, upper, tol);
    if (!e.value) {
      std::ostringstream os;
      os << "boundary limit of |psi|^2 f at the " << (upper ? "upper" : "lower")
         << " end did not settle (spread " << e.spread << ")";
      throw InconclusiveLimitError(os.str());
    }
    (upper ? out.hi : out.lo) = *e.value;
  }
  return out;
}

bool hermiticity_boundary_check(const WavefunctionBundle& bundle, double tol) {
  return bundle.l2_ok && bundle.boundary_values.lo <= tol && bundle.boundary_values.hi <= tol;
}

int count_sign_changes(const std::vector<std::pair<double, double>>& samples) {
  int changes = 0;
  int last = 0;
  for (const auto& [x, v] : samples) {
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

namespace {

// (x - a) psi^2 -> 0 at finite ends and |x| psi^2 -> 0 at infinite ends.
bool square_integrable(const Wavefunction& psi, const Interval& d, double log_scale) {
  for (int side = 0; side < 2; ++side) {
    const bool upper = side == 1;
    const bool inf = upper ? d.hi_infinite() : d.lo_infinite();
    const double end = upper ? d.hi : d.lo;
    auto weighted = [&](double x) {
      const double l = psi.log_psi(x).log_abs;
      if (std::isnan(l)) return l;
      const double w = inf ? std::abs(x) : std::abs(x - end);
      return w * safe_exp(2.0 * (l - log_scale));
    };
    const EndLimit e = approach_limit(weighted, d, upper, 1e-10);
    if (!e.value || *e.value > 1e-8) return false;
  }
  return true;
}

// Integral over the truncated domain, split geometrically toward infinite
// ends so long tails are resolved.
double piecewise_integral(const std::function<double(double)>& fn, const Interval& d,
                          double radius) {
  std::vector<double> cuts;
  const Interval t = d.truncated(0.0, radius);
  const double c = center(d);
  cuts.push_back(t.lo);
  if (d.lo_infinite())
    for (double r = radius / 2; r > 4.0; r /= 2) cuts.push_back(c - r);
  if (!d.finite()) cuts.push_back(c);
  if (d.hi_infinite()) {
    std::vector<double> up;
    for (double r = radius / 2; r > 4.0; r /= 2) up.push_back(c + r);
    cuts.insert(cuts.end(), up.rbegin(), up.rend());
  }
  cuts.push_back(t.hi);
  // The piece starting or ending at the center first, so the tail pieces
  // get an absolute floor.
  std::vector<double> parts(cuts.size() - 1, 0.0);
  std::size_t main = 0;
  while (main + 2 < cuts.size() && cuts[main + 1] < c) ++main;
  parts[main] = integrate(fn, cuts[main], cuts[main + 1], 1e-10).value;
  const double floor = 1e-13 * std::abs(parts[main]);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (i != main && cuts[i + 1] > cuts[i])
      parts[i] = integrate(fn, cuts[i], cuts[i + 1], 1e-10, floor).value;
    total += parts[i];
  }
  return total;
}

std::vector<double> default_grid(const Interval& d, double radius, int count) {
  const Interval t = d.truncated(0.0, radius);
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) pts.push_back(t.lo + (t.hi - t.lo) * i / (count + 1));
  return pts;
}

// Sign changes on a dense grid uniform in the compact coordinate, so the
// far tails of slowly decaying states are covered.
// Points where psi is below exp(-300) of its peak are skipped.
int count_nodes(const Wavefunction& psi, const Interval& d, double log_scale) {
  constexpr int kPoints = 20000;
  std::vector<std::pair<double, double>> s;
  s.reserve(kPoints);
  for (int k = 1; k < kPoints; ++k) {
    const double x = d.from_compact(static_cast<double>(k) / kPoints);
    if (!d.interior(x)) continue;
    const Wavefunction::LogValue v = psi.log_psi(x);
    if (!std::isfinite(v.log_abs) || v.log_abs < log_scale - 300.0) continue;
    s.emplace_back(x, static_cast<double>(v.sign));
  }
  return count_sign_changes(s);
}

}  // namespace

double psi_norm_squared(const Wavefunction& psi, double log_scale, double radius) {
  auto integrand = [&](double x) {
    const double v = psi.psi(x, log_scale);
    return std::isfinite(v) ? v * v : 0.0;
  };
  return piecewise_integral(integrand, psi.track().phi.domain, radius);
}

WavefunctionBundle assemble_psi(const SIParameterTrack& track, int n, std::vector<double> grid,
                                int samples) {
  const Wavefunction psi(track, n);
  const Interval& d = track.phi.domain;
  WavefunctionBundle b;
  b.n = n;
  double radius = 8.0;
  if (!d.finite()) {
    radius = truncation_radius(psi, d);
    b.truncation_radius = radius;
  }
  if (grid.empty()) grid = default_grid(d, std::min(radius, 40.0), samples);

  double log_scale = kNegInf;
  for (double x : grid) log_scale = std::max(log_scale, psi.log_psi(x).log_abs);
  b.log_scale = log_scale;
  b.samples.reserve(grid.size());
  for (double x : grid) b.samples.emplace_back(x, psi.psi(x, log_scale));
  b.node_count = count_nodes(psi, d, log_scale);

  b.l2_ok = square_integrable(psi, d, log_scale);
  if (b.l2_ok) {
    try {
      b.norm = std::sqrt(psi_norm_squared(psi, log_scale, radius));
      b.l2_ok = std::isfinite(b.norm) && b.norm > 0.0;
    } catch (const QuadratureError&) {
      b.l2_ok = false;
    }
  }
  try {
    b.boundary_values = boundary_limits(psi);
    b.hermiticity_ok = hermiticity_boundary_check(b);
  } catch (const InconclusiveLimitError&) {
    b.boundary_values = {std::nan(""), std::nan("")};
    b.hermiticity_ok = false;
  }
  return b;
}

}  // namespace pdm
