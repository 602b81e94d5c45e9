#include "pdm/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pdm/errors.hpp"
#include "pdm/polynomial.hpp"

namespace pdm {

namespace {

using std::numbers::pi;

double get(const ParamMap& p, const char* name) {
  auto it = p.find(name);
  if (it == p.end()) throw UnknownParameterError(std::string("missing parameter ") + name);
  return it->second;
}

double sec(double x) { return 1.0 / std::cos(x); }

PhiSpec make_phi(SIClass cls, ClassConstants k, std::function<double(double)> fn, Interval dom,
                 std::string name, double lo, double hi,
                 std::function<double(double)> dfn = {}) {
  PhiSpec s;
  s.phi_prime = std::move(dfn);
  s.cls = cls;
  s.k = k;
  s.phi = std::move(fn);
  s.domain = dom;
  s.name = std::move(name);
  s.phi_at_lo = lo;
  s.phi_at_hi = hi;
  return s;
}

BasisExpansion basis(SIClass cls, double c0, double c1, double c2) {
  BasisExpansion e;
  e.cls = cls;
  e.c = {c0, c1, c2};
  return e;
}

bool is_integer(double v) { return v >= 0.0 && std::floor(v) == v; }

const Interval kHalfPi{-pi / 2, pi / 2, true, true};
const Interval kReal{-kInf, kInf, false, false};
const Interval kHalfLine{0.0, kInf, true, false};
const Interval kZeroPi{0.0, pi, true, true};

std::optional<double> no_continuum(const ParamMap&) { return std::nullopt; }

// P_n of the tan/tanh models: P_{n+1}(lam) = -(1 + At y^2) P_n'(lam + At)
// + (2 lam + (n+1) At) y P_n(lam + At).
Polynomial tangent_polynomial(int n, double lam, double At) {
  if (n == 0) return Polynomial::constant(1.0);
  const Polynomial prev = tangent_polynomial(n - 1, lam + At, At);
  return Polynomial{-1.0, 0.0, -At} * prev.derivative() +
         Polynomial{0.0, 2.0 * lam + n * At} * prev;
}

// ---------------------------------------------------------------------------

PotentialModel make_box() {
  PotentialModel m;
  m.id = "box";
  m.title = "particle in a box";
  m.domain = kHalfPi;
  m.parameters = {{"alpha", "α", 0.5, true}};
  m.constraints = {{"α > −1", [](const ParamMap& p) { return get(p, "alpha") > -1.0; }}};
  m.count_rule_kind = "infinite";
  m.v_eff = [](const ParamMap&, double) { return 0.0; };
  m.g = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    return DeformationSpec::JetFn([=](double x) {
      return Jet{a * std::sin(x) * std::sin(x), a * std::sin(2 * x), 2 * a * std::cos(2 * x)};
    });
  };
  m.binding = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    return ClassBinding{
        make_phi(SIClass::one, {1, 0, 1, 0}, [](double x) { return std::tan(x); }, kHalfPi,
                 "tan x", -kInf, kInf, [](double x) { return sec(x) * sec(x); }),
        {a, 0, 0, 0}, basis(SIClass::one, 0, 0, 0), {+1, +1}};
  };
  m.energy = [](const ParamMap& p, int n) { return (1 + get(p, "alpha")) * (n + 1.0) * (n + 1.0); };
  m.undeformed_energy = [](const ParamMap&, int n) { return (n + 1.0) * (n + 1.0); };
  m.count = [](const ParamMap&) { return BoundStateCount::infinite(); };
  m.v_tilde = [](const ParamMap& p, AmbiguityCoefficients c, double x) {
    const double a = get(p, "alpha");
    const double c2 = std::cos(2 * x);
    return -(c.rho + c.sigma) * a * a * c2 * c2 + c.rho * a * (2 + a) * c2 + c.sigma * a * a;
  };
  m.derived = [](const ParamMap& p) { return ParameterList{{"lambda0", 1 + get(p, "alpha")}}; };
  m.f_limits = [](const ParamMap& p) {
    const double f = 1 + get(p, "alpha");
    return std::array<double, 2>{f, f};
  };
  m.continuum = no_continuum;
  m.reference_psi = [](const ParamMap& p, int n, double x) {
    const double a = get(p, "alpha");
    const double s = std::sin(x);
    return std::pow(std::cos(x), n + 1) * std::pow(1 + a * s * s, -(n + 2) / 2.0) *
           tangent_polynomial(n, 1 + a, 1 + a)(std::tan(x));
  };
  return m;
}

double trig_delta(double A, double a) { return std::sqrt((1 + a) * (1 + a) + 4 * A * (A - 1)); }

PotentialModel make_trig_pt() {
  PotentialModel m;
  m.id = "trig_pt";
  m.title = "trigonometric Pöschl-Teller";
  m.domain = kHalfPi;
  m.parameters = {{"A", "A", 2.0, false}, {"alpha", "α", 0.3, true}};
  m.constraints = {{"A > 1", [](const ParamMap& p) { return get(p, "A") > 1.0; }},
                   {"α > −1", [](const ParamMap& p) { return get(p, "alpha") > -1.0; }}};
  m.count_rule_kind = "infinite";
  m.v_eff = [](const ParamMap& p, double x) {
    const double A = get(p, "A");
    return A * (A - 1) * sec(x) * sec(x);
  };
  m.g = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    return DeformationSpec::JetFn([=](double x) {
      return Jet{a * std::sin(x) * std::sin(x), a * std::sin(2 * x), 2 * a * std::cos(2 * x)};
    });
  };
  m.binding = [](const ParamMap& p) {
    const double A = get(p, "A"), a = get(p, "alpha");
    const double v = A * (A - 1);
    return ClassBinding{
        make_phi(SIClass::one, {1, 0, 1, 0}, [](double x) { return std::tan(x); }, kHalfPi,
                 "tan x", -kInf, kInf, [](double x) { return sec(x) * sec(x); }),
        {a, 0, 0, 0}, basis(SIClass::one, v, 0, v), {+1, +1}};
  };
  m.energy = [](const ParamMap& p, int n) {
    const double A = get(p, "A"), a = get(p, "alpha");
    const double d = trig_delta(A, a);
    const double t = 0.5 * (d + 1) + n;
    return t * t + a * n * (n + 1) - 0.25 * a * a;
  };
  m.undeformed_energy = [](const ParamMap& p, int n) {
    const double t = get(p, "A") + n;
    return t * t;
  };
  m.count = [](const ParamMap&) { return BoundStateCount::infinite(); };
  m.v_tilde = [](const ParamMap& p, AmbiguityCoefficients c, double x) {
    const double a = get(p, "alpha");
    const double c2 = std::cos(2 * x);
    return -(c.rho + c.sigma) * a * a * c2 * c2 + c.rho * a * (2 + a) * c2 + c.sigma * a * a;
  };
  m.derived = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    const double d = trig_delta(get(p, "A"), a);
    return ParameterList{{"Delta", d}, {"lambda", 0.5 * (1 + a + d)}};
  };
  m.f_limits = [](const ParamMap& p) {
    const double f = 1 + get(p, "alpha");
    return std::array<double, 2>{f, f};
  };
  m.continuum = no_continuum;
  m.reference_psi = [](const ParamMap& p, int n, double x) {
    const double a = get(p, "alpha");
    const double lam = 0.5 * (1 + a + trig_delta(get(p, "A"), a));
    const double e = lam / (1 + a);
    const double s = std::sin(x);
    return std::pow(std::cos(x), e + n) * std::pow(1 + a * s * s, -0.5 * (e + n + 1)) *
           tangent_polynomial(n, lam, 1 + a)(std::tan(x));
  };
  m.singular_ends = {true, true};
  return m;
}

double hyp_delta(double A, double a) { return std::sqrt((1 - a) * (1 - a) + 4 * A * (A + 1)); }

PotentialModel make_hyperbolic_pt() {
  PotentialModel m;
  m.id = "hyperbolic_pt";
  m.title = "hyperbolic Pöschl-Teller";
  m.domain = kReal;
  m.parameters = {{"A", "A", 2.0, false}, {"alpha", "α", 0.5, true}};
  m.constraints = {{"A > 0", [](const ParamMap& p) { return get(p, "A") > 0.0; }},
                   {"0 < α < 1", [](const ParamMap& p) {
                      const double a = get(p, "alpha");
                      return a >= 0.0 && a < 1.0;
                    }}};
  m.count_rule_kind = "zero";
  m.v_eff = [](const ParamMap& p, double x) {
    const double A = get(p, "A");
    const double s = 1.0 / std::cosh(x);
    return -A * (A + 1) * s * s;
  };
  m.g = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    return DeformationSpec::JetFn([=](double x) {
      if (a == 0.0) return Jet{};  // 0 * inf once sinh overflows
      return Jet{a * std::sinh(x) * std::sinh(x), a * std::sinh(2 * x), 2 * a * std::cosh(2 * x)};
    });
  };
  m.binding = [](const ParamMap& p) {
    const double A = get(p, "A"), a = get(p, "alpha");
    const double v = A * (A + 1);
    return ClassBinding{
        make_phi(SIClass::one, {-1, 0, 1, 0}, [](double x) { return std::tanh(x); }, kReal,
                 "tanh x", -1.0, 1.0,
                 [](double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); }),
        {a, 0, 0, 0}, basis(SIClass::one, v, 0, -v), {+1, +1}};
  };
  m.energy = [](const ParamMap& p, int n) {
    const double A = get(p, "A"), a = get(p, "alpha");
    const double t = 0.5 * (hyp_delta(A, a) - 1) - n;
    return -t * t + a * n * (n + 1) + 0.25 * a * a;
  };
  m.undeformed_energy = [](const ParamMap& p, int n) {
    const double t = get(p, "A") - n;
    return -t * t;
  };
  m.count = [](const ParamMap& p) {
    if (get(p, "alpha") != 0.0) return BoundStateCount::zero();
    const double A = get(p, "A");
    int k = 0;
    while (k < A) ++k;
    return BoundStateCount::finite(k);
  };
  m.v_tilde = [](const ParamMap& p, AmbiguityCoefficients c, double x) {
    const double a = get(p, "alpha");
    const double s = std::sinh(x);
    const double s2 = std::sinh(2 * x);
    return c.rho * (1 + a * s * s) * 2 * a * std::cosh(2 * x) + c.sigma * a * a * s2 * s2;
  };
  m.derived = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    const double d = hyp_delta(get(p, "A"), a);
    return ParameterList{{"Delta", d}, {"lambda", 0.5 * (a - 1 + d)}};
  };
  m.f_limits = [](const ParamMap& p) {
    const double f = get(p, "alpha") > 0 ? kInf : 1.0;
    return std::array<double, 2>{f, f};
  };
  m.continuum = [](const ParamMap&) { return std::optional<double>(0.0); };
  m.reference_psi = [](const ParamMap& p, int n, double x) {
    const double a = get(p, "alpha");
    const double lam = 0.5 * (a - 1 + hyp_delta(get(p, "A"), a));
    const double e = lam / (1 - a);
    const double s = std::sinh(x);
    return std::pow(1.0 / std::cosh(x), e - n) * std::pow(1 + a * s * s, 0.5 * (e - n - 1)) *
           tangent_polynomial(n, lam, a - 1)(std::tanh(x));
  };
  return m;
}

PotentialModel make_shifted_osc() {
  PotentialModel m;
  m.id = "shifted_osc";
  m.title = "shifted oscillator";
  m.domain = kReal;
  m.parameters = {{"omega", "ω", 1.0, false},
                  {"b", "b", 0.5, false},
                  {"alpha", "α", 0.2, true},
                  {"beta", "β", 0.3, true}};
  m.constraints = {{"ω > 0", [](const ParamMap& p) { return get(p, "omega") > 0.0; }},
                   {"α > β² ≥ 0", [](const ParamMap& p) {
                      const double a = get(p, "alpha"), b = get(p, "beta");
                      return a > b * b || (a == 0.0 && b == 0.0);
                    }}};
  m.count_rule_kind = "infinite";
  m.v_eff = [](const ParamMap& p, double x) {
    const double w = get(p, "omega"), b = get(p, "b");
    const double t = x - 2 * b / w;
    return 0.25 * w * w * t * t;
  };
  m.g = [](const ParamMap& p) {
    const double a = get(p, "alpha"), be = get(p, "beta");
    return DeformationSpec::JetFn([=](double x) {
      return Jet{a * x * x + 2 * be * x, 2 * a * x + 2 * be, 2 * a};
    });
  };
  m.binding = [](const ParamMap& p) {
    const double w = get(p, "omega"), b = get(p, "b");
    const double a = get(p, "alpha"), be = get(p, "beta");
    return ClassBinding{
        make_phi(SIClass::one, {0, 0, 1, 0}, [](double x) { return x; }, kReal, "x", -kInf, kInf),
        {a, 2 * be, 0, 0}, basis(SIClass::one, 0.25 * w * w, -b * w, b * b), {+1, +1}};
  };
  m.energy = [](const ParamMap& p, int n) {
    const double w = get(p, "omega"), b = get(p, "b");
    const double a = get(p, "alpha"), be = get(p, "beta");
    const double d = std::sqrt(w * w + a * a);
    const double q = (((2 * n + 1) * d + (2.0 * n * n + 2 * n + 1) * a) * be - b * w) /
                     (d + (2 * n + 1) * a);
    return (n + 0.5) * d + (n * n + n + 0.5) * a + b * b - q * q;
  };
  m.undeformed_energy = [](const ParamMap& p, int n) { return (n + 0.5) * get(p, "omega"); };
  m.count = [](const ParamMap&) { return BoundStateCount::infinite(); };
  m.v_tilde = [](const ParamMap& p, AmbiguityCoefficients c, double x) {
    const double a = get(p, "alpha"), be = get(p, "beta");
    return 2 * (c.rho + 2 * c.sigma) * a * x * (a * x + 2 * be) + 2 * c.rho * a +
           4 * c.sigma * be * be;
  };
  m.derived = [](const ParamMap& p) {
    const double w = get(p, "omega"), a = get(p, "alpha");
    return ParameterList{{"Delta", std::sqrt(w * w + a * a)}};
  };
  m.f_limits = [](const ParamMap& p) {
    const double a = get(p, "alpha"), be = get(p, "beta");
    if (a > 0) return std::array<double, 2>{kInf, kInf};
    if (be == 0) return std::array<double, 2>{1.0, 1.0};
    return std::array<double, 2>{be > 0 ? -kInf : kInf, be > 0 ? kInf : -kInf};
  };
  m.continuum = no_continuum;
  return m;
}

PotentialModel make_osc3d() {
  PotentialModel m;
  m.id = "osc3d";
  m.title = "three-dimensional oscillator";
  m.domain = kHalfLine;
  m.parameters = {{"omega", "ω", 1.0, false}, {"l", "l", 1.0, false}, {"alpha", "α", 0.2, true}};
  m.constraints = {{"ω > 0", [](const ParamMap& p) { return get(p, "omega") > 0.0; }},
                   {"l ∈ {0, 1, 2, …}", [](const ParamMap& p) { return is_integer(get(p, "l")); }},
                   {"α > 0", [](const ParamMap& p) { return get(p, "alpha") >= 0.0; }}};
  m.count_rule_kind = "infinite";
  m.v_eff = [](const ParamMap& p, double x) {
    const double w = get(p, "omega"), l = get(p, "l");
    return 0.25 * w * w * x * x + l * (l + 1) / (x * x);
  };
  m.g = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    return DeformationSpec::JetFn([=](double x) {
      return Jet{a * x * x, 2 * a * x, 2 * a};
    });
  };
  m.binding = [](const ParamMap& p) {
    const double w = get(p, "omega"), l = get(p, "l"), a = get(p, "alpha");
    return ClassBinding{
        make_phi(SIClass::two, {0, 1, 0, 0}, [](double x) { return x; }, kHalfLine, "x", 0.0,
                 kInf),
        {a, 0, 0, 0}, basis(SIClass::two, 0.25 * w * w, 0, l * (l + 1)), {+1, -1}};
  };
  m.energy = [](const ParamMap& p, int n) {
    const double w = get(p, "omega"), l = get(p, "l"), a = get(p, "alpha");
    const double d = std::sqrt(w * w + a * a);
    return d * (2 * n + l + 1.5) + a * (2 * (n + l + 1) * (2 * n + 1) + 0.5);
  };
  m.undeformed_energy = [](const ParamMap& p, int n) {
    return get(p, "omega") * (2 * n + get(p, "l") + 1.5);
  };
  m.count = [](const ParamMap&) { return BoundStateCount::infinite(); };
  m.v_tilde = [](const ParamMap& p, AmbiguityCoefficients c, double x) {
    const double a = get(p, "alpha");
    return 2 * (c.rho + 2 * c.sigma) * a * a * x * x + 2 * c.rho * a;
  };
  m.derived = [](const ParamMap& p) {
    const double w = get(p, "omega"), a = get(p, "alpha");
    return ParameterList{{"Delta", std::sqrt(w * w + a * a)}};
  };
  m.f_limits = [](const ParamMap& p) {
    return std::array<double, 2>{1.0, get(p, "alpha") > 0 ? kInf : 1.0};
  };
  m.continuum = no_continuum;
  m.singular_ends = {true, false};
  return m;
}

PotentialModel make_coulomb() {
  PotentialModel m;
  m.id = "coulomb";
  m.title = "Coulomb";
  m.domain = kHalfLine;
  m.parameters = {{"e2", "e²", 1.0, false}, {"l", "l", 0.0, false}, {"alpha", "α", 0.1, true}};
  m.constraints = {{"e² > 0", [](const ParamMap& p) { return get(p, "e2") > 0.0; }},
                   {"l ≥ 0", [](const ParamMap& p) { return get(p, "l") >= 0.0; }},
                   {"α > 0", [](const ParamMap& p) { return get(p, "alpha") >= 0.0; }}};
  m.count_rule_kind = "finite";
  m.v_eff = [](const ParamMap& p, double x) {
    const double e2 = get(p, "e2"), l = get(p, "l");
    return -e2 / x + l * (l + 1) / (x * x);
  };
  m.g = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    return DeformationSpec::JetFn([=](double x) {
      return Jet{a * x, a, 0.0};
    });
  };
  m.binding = [](const ParamMap& p) {
    const double e2 = get(p, "e2"), l = get(p, "l"), a = get(p, "alpha");
    return ClassBinding{
        make_phi(SIClass::one, {-1, 0, 0, 0}, [](double x) { return 1.0 / x; }, kHalfLine, "1/x",
                 kInf, 0.0, [](double x) { return -1.0 / (x * x); }),
        {0, -a, 0, 0}, basis(SIClass::one, l * (l + 1), -e2, 0), {-1, -1}};
  };
  m.energy = [](const ParamMap& p, int n) {
    const double e2 = get(p, "e2"), l = get(p, "l"), a = get(p, "alpha");
    const double t = (e2 - a * (n * n + (l + 1) * (2 * n + 1))) / (2 * (n + l + 1));
    return -t * t;
  };
  m.undeformed_energy = [](const ParamMap& p, int n) {
    const double t = get(p, "e2") / (2 * (n + get(p, "l") + 1));
    return -t * t;
  };
  m.count = [](const ParamMap& p) {
    const double e2 = get(p, "e2"), l = get(p, "l"), a = get(p, "alpha");
    if (a == 0.0) return BoundStateCount::infinite();
    // k = #{n >= 0 : n^2 + (l+1)(2n+1) < e2/a}; start at the real root, then settle.
    const double bound = e2 / a;
    auto admitted = [&](double n) { return n * n + (l + 1) * (2 * n + 1) < bound; };
    const double root = -(l + 1) + std::sqrt((l + 1) * (l + 1) - (l + 1) + bound);
    if (!(root < 2e9)) throw DomainError("coulomb: bound-state count exceeds the integer range");
    double k = std::max(0.0, std::ceil(root));
    while (k > 0 && !admitted(k - 1)) --k;
    while (admitted(k)) ++k;
    return BoundStateCount::finite(static_cast<int>(k));
  };
  m.v_tilde = [](const ParamMap& p, AmbiguityCoefficients c, double) {
    const double a = get(p, "alpha");
    return c.sigma * a * a;
  };
  m.derived = [](const ParamMap&) { return ParameterList{}; };
  m.f_limits = [](const ParamMap& p) {
    return std::array<double, 2>{1.0, get(p, "alpha") > 0 ? kInf : 1.0};
  };
  m.continuum = [](const ParamMap&) { return std::optional<double>(0.0); };
  m.singular_ends = {true, false};
  return m;
}

}  // namespace

double morse_alpha_max(double A, double B, int n) {
  if (n == 0) return 4 * A * (A + 1) * B / (2 * A + 1);
  const double q = 2.0 * n * n * (n + 1.0) * (n + 1.0);
  const double m = 4.0 * n * n * (n + 1.0) * (n + 1.0);
  return B * (2 * A + 1) * (2.0 * n * n + 2 * n + 1) / q -
         B * (2 * n + 1) * std::sqrt((2 * A + 1) * (2 * A + 1) + m) / q;
}

namespace {

PotentialModel make_morse() {
  PotentialModel m;
  m.id = "morse";
  m.title = "Morse";
  m.domain = kReal;
  m.parameters = {{"A", "A", 3.0, false}, {"B", "B", 2.0, false}, {"alpha", "α", 0.3, true}};
  m.constraints = {{"A > 0", [](const ParamMap& p) { return get(p, "A") > 0.0; }},
                   {"B > 0", [](const ParamMap& p) { return get(p, "B") > 0.0; }},
                   {"α > 0", [](const ParamMap& p) { return get(p, "alpha") >= 0.0; }}};
  m.count_rule_kind = "finite";
  m.v_eff = [](const ParamMap& p, double x) {
    const double A = get(p, "A"), B = get(p, "B");
    const double e = std::exp(-x);
    return B * B * e * e - B * (2 * A + 1) * e;
  };
  m.g = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    return DeformationSpec::JetFn([=](double x) {
      const double ae = a * std::exp(-x);
      return Jet{ae, -ae, ae};
    });
  };
  m.binding = [](const ParamMap& p) {
    const double A = get(p, "A"), B = get(p, "B"), a = get(p, "alpha");
    return ClassBinding{
        make_phi(SIClass::one, {0, -1, 0, 0}, [](double x) { return std::exp(-x); }, kReal,
                 "exp(-x)", kInf, 0.0, [](double x) { return -std::exp(-x); }),
        {-a, 0, 0, 0}, basis(SIClass::one, B * B, -B * (2 * A + 1), 0), {-1, -1}};
  };
  m.energy = [](const ParamMap& p, int n) {
    const double A = get(p, "A"), B = get(p, "B"), a = get(p, "alpha");
    const double d = std::sqrt(4 * B * B + a * a);
    const double t = (2 * B * (2 * A + 1) - ((2 * n + 1) * d + (2.0 * n * n + 2 * n + 1) * a)) /
                     (d + (2 * n + 1) * a);
    return -0.25 * t * t;
  };
  m.undeformed_energy = [](const ParamMap& p, int n) {
    const double t = get(p, "A") - n;
    return -t * t;
  };
  m.count = [](const ParamMap& p) {
    const double A = get(p, "A"), B = get(p, "B"), a = get(p, "alpha");
    int n_max = -1;
    for (int n = 0; n < A; ++n)
      if (a == 0.0 || a < morse_alpha_max(A, B, n)) n_max = n;
    return BoundStateCount::finite(n_max + 1);
  };
  m.v_tilde = [](const ParamMap& p, AmbiguityCoefficients c, double x) {
    const double a = get(p, "alpha");
    const double e = std::exp(-x);
    return (c.rho + c.sigma) * a * a * e * e + c.rho * a * e;
  };
  m.derived = [](const ParamMap& p) {
    const double A = get(p, "A"), B = get(p, "B"), a = get(p, "alpha");
    return ParameterList{{"Delta", std::sqrt(4 * B * B + a * a)},
                         {"alpha_max0", morse_alpha_max(A, B, 0)}};
  };
  m.f_limits = [](const ParamMap& p) {
    return std::array<double, 2>{get(p, "alpha") > 0 ? kInf : 1.0, 1.0};
  };
  m.continuum = [](const ParamMap&) { return std::optional<double>(0.0); };
  return m;
}

PotentialModel make_eckart() {
  PotentialModel m;
  m.id = "eckart";
  m.title = "Eckart";
  m.domain = Interval{0.0, kInf, false, false};
  m.parameters = {{"A", "A", 2.0, false}, {"B", "B", 9.0, false}, {"alpha", "α", 0.5, true}};
  m.constraints = {{"A ≥ 3/2", [](const ParamMap& p) { return get(p, "A") >= 1.5; }},
                   {"B > A²",
                    [](const ParamMap& p) {
                      const double A = get(p, "A");
                      return get(p, "B") > A * A;
                    }},
                   {"α ≥ −2", [](const ParamMap& p) { return get(p, "alpha") >= -2.0; }}};
  m.count_rule_kind = "finite|infinite";
  m.v_eff = [](const ParamMap& p, double x) {
    const double A = get(p, "A"), B = get(p, "B");
    const double cs = 1.0 / std::sinh(x);
    return A * (A - 1) * cs * cs - 2 * B / std::tanh(x);
  };
  m.g = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    return DeformationSpec::JetFn([=](double x) {
      const double e = std::exp(-2 * x);
      return Jet{0.5 * a * (1 - e), a * e, -2 * a * e};
    });
  };
  m.binding = [](const ParamMap& p) {
    const double A = get(p, "A"), B = get(p, "B"), a = get(p, "alpha");
    const double v = A * (A - 1);
    return ClassBinding{
        make_phi(SIClass::one, {-1, 0, 1, 0}, [](double x) { return 1.0 / std::tanh(x); },
                 Interval{0.0, kInf, false, false}, "coth x", kInf, 1.0,
                 [](double x) { return -1.0 / (std::sinh(x) * std::sinh(x)); }),
        {0, -a, a, 0}, basis(SIClass::one, v, -2 * B, -v), {-1, -1}};
  };
  m.energy = [](const ParamMap& p, int n) {
    const double A = get(p, "A"), B = get(p, "B"), a = get(p, "alpha");
    const double s = (2 * n + 1) * A + n * n;
    const double t = (B - 0.5 * a * s) / (A + n);
    return -(A + n) * (A + n) - t * t - a * s;
  };
  m.undeformed_energy = [](const ParamMap& p, int n) {
    const double A = get(p, "A"), B = get(p, "B");
    const double t = B / (A + n);
    return -(A + n) * (A + n) - t * t;
  };
  m.count = [](const ParamMap& p) {
    const double A = get(p, "A"), B = get(p, "B"), a = get(p, "alpha");
    if (a == -2.0) return BoundStateCount::infinite();
    const double bound = (2 * B + a * A * (A - 1)) / (2 + a);
    int k = 0;
    while ((A + k) * (A + k) < bound) ++k;
    return BoundStateCount::finite(k);
  };
  m.v_tilde = [](const ParamMap& p, AmbiguityCoefficients c, double x) {
    const double a = get(p, "alpha");
    return (c.rho + c.sigma) * a * a * std::exp(-4 * x) - c.rho * a * (2 + a) * std::exp(-2 * x);
  };
  m.derived = [](const ParamMap&) { return ParameterList{}; };
  m.f_limits = [](const ParamMap& p) {
    return std::array<double, 2>{1.0, 1.0 + 0.5 * get(p, "alpha")};
  };
  m.continuum = [](const ParamMap& p) { return std::optional<double>(-2 * get(p, "B")); };
  m.singular_ends = {true, false};
  return m;
}

std::array<double, 2> scarf_deltas(double A, double B, double a) {
  return {std::sqrt(0.25 * (1 - a) * (1 - a) + (A + B) * (A + B - 1)),
          std::sqrt(0.25 * (1 + a) * (1 + a) + (A - B) * (A - B - 1))};
}

PotentialModel make_scarf1() {
  PotentialModel m;
  m.id = "scarf1";
  m.title = "Scarf I";
  m.domain = kHalfPi;
  m.parameters = {{"A", "A", 3.0, false}, {"B", "B", 1.2, false}, {"alpha", "α", 0.4, true}};
  m.constraints = {{"0 < B < A − 1",
                    [](const ParamMap& p) {
                      const double B = get(p, "B");
                      return B > 0.0 && B < get(p, "A") - 1.0;
                    }},
                   {"0 < |α| < 1", [](const ParamMap& p) { return std::abs(get(p, "alpha")) < 1.0; }}};
  m.count_rule_kind = "infinite";
  m.v_eff = [](const ParamMap& p, double x) {
    const double A = get(p, "A"), B = get(p, "B");
    const double s = sec(x);
    return (B * B + A * A - A) * s * s - B * (2 * A - 1) * std::tan(x) * s;
  };
  m.g = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    return DeformationSpec::JetFn([=](double x) {
      return Jet{a * std::sin(x), a * std::cos(x), -a * std::sin(x)};
    });
  };
  m.binding = [](const ParamMap& p) {
    const double A = get(p, "A"), B = get(p, "B"), a = get(p, "alpha");
    return ClassBinding{
        make_phi(SIClass::three, {-1, 1, 0, 1}, [](double x) { return std::sin(x); }, kHalfPi,
                 "sin x", -1.0, 1.0, [](double x) { return std::cos(x); }),
        {0, 0, a, 0}, basis(SIClass::three, 0, -B * (2 * A - 1), B * B + A * A - A), {+1, -1}};
  };
  m.energy = [](const ParamMap& p, int n) {
    const double a = get(p, "alpha");
    const auto d = scarf_deltas(get(p, "A"), get(p, "B"), a);
    const double t = 2 * n + 1 + d[0] + d[1];
    return 0.25 * t * t + a * (n + 0.5) * (d[0] - d[1]) - a * a * (n * n + n + 0.5);
  };
  m.undeformed_energy = [](const ParamMap& p, int n) {
    const double t = get(p, "A") + n;
    return t * t;
  };
  m.count = [](const ParamMap&) { return BoundStateCount::infinite(); };
  m.v_tilde = [](const ParamMap& p, AmbiguityCoefficients c, double x) {
    const double a = get(p, "alpha");
    const double s = std::sin(x);
    return -(c.rho + c.sigma) * a * a * s * s - c.rho * a * s + c.sigma * a * a;
  };
  m.derived = [](const ParamMap& p) {
    const auto d = scarf_deltas(get(p, "A"), get(p, "B"), get(p, "alpha"));
    return ParameterList{{"Delta_plus", d[0]}, {"Delta_minus", d[1]}};
  };
  m.f_limits = [](const ParamMap& p) {
    const double a = get(p, "alpha");
    return std::array<double, 2>{1 - a, 1 + a};
  };
  m.continuum = no_continuum;
  m.singular_ends = {true, true};
  return m;
}

PotentialModel make_rosen_morse1() {
  PotentialModel m;
  m.id = "rosen_morse1";
  m.title = "Rosen-Morse I";
  m.domain = Interval{0.0, pi, true, true};
  m.parameters = {{"A", "A", 2.0, false},
                  {"B", "B", 1.5, false},
                  {"alpha", "α", 0.4, true},
                  {"beta", "β", 0.3, true}};
  m.constraints = {{"A ≥ 3/2", [](const ParamMap& p) { return get(p, "A") >= 1.5; }},
                   {"β > −1", [](const ParamMap& p) { return get(p, "beta") > -1.0; }},
                   {"|α|/2 < √(1+β)", [](const ParamMap& p) {
                      return std::abs(get(p, "alpha")) / 2 < std::sqrt(1 + get(p, "beta"));
                    }}};
  m.count_rule_kind = "infinite";
  m.v_eff = [](const ParamMap& p, double x) {
    const double A = get(p, "A"), B = get(p, "B");
    const double cs = 1.0 / std::sin(x);
    return A * (A - 1) * cs * cs + 2 * B / std::tan(x);
  };
  m.g = [](const ParamMap& p) {
    const double a = get(p, "alpha"), be = get(p, "beta");
    return DeformationSpec::JetFn([=](double x) {
      const double s = std::sin(x);
      return Jet{s * (a * std::cos(x) + be * s), a * std::cos(2 * x) + be * std::sin(2 * x),
                 -2 * a * std::sin(2 * x) + 2 * be * std::cos(2 * x)};
    });
  };
  m.binding = [](const ParamMap& p) {
    const double A = get(p, "A"), B = get(p, "B");
    const double a = get(p, "alpha"), be = get(p, "beta");
    const double v = A * (A - 1);
    return ClassBinding{
        make_phi(SIClass::one, {-1, 0, -1, 0}, [](double x) { return 1.0 / std::tan(x); },
                 kZeroPi, "cot x", kInf, -kInf,
                 [](double x) { return -1.0 / (std::sin(x) * std::sin(x)); }),
        {0, -a, -be, 0}, basis(SIClass::one, v, 2 * B, v), {-1, -1}};
  };
  m.energy = [](const ParamMap& p, int n) {
    const double A = get(p, "A"), B = get(p, "B");
    const double a = get(p, "alpha"), be = get(p, "beta");
    const double s = (2 * n + 1) * A + n * n;
    const double t = (B + 0.5 * a * s) / (A + n);
    return (A + n) * (A + n) - t * t + be * s;
  };
  m.undeformed_energy = [](const ParamMap& p, int n) {
    const double A = get(p, "A"), B = get(p, "B");
    const double t = B / (A + n);
    return (A + n) * (A + n) - t * t;
  };
  m.count = [](const ParamMap&) { return BoundStateCount::infinite(); };
  m.v_tilde = [](const ParamMap& p, AmbiguityCoefficients c, double x) {
    const double a = get(p, "alpha"), be = get(p, "beta");
    return (c.rho + c.sigma) * (0.5 * (a * a - be * be) * std::cos(4 * x) + a * be * std::sin(4 * x)) +
           c.rho * (2 + be) * (-a * std::sin(2 * x) + be * std::cos(2 * x)) +
           (-c.rho + c.sigma) * 0.5 * (a * a + be * be);
  };
  m.derived = [](const ParamMap&) { return ParameterList{}; };
  m.f_limits = [](const ParamMap&) { return std::array<double, 2>{1.0, 1.0}; };
  m.continuum = no_continuum;
  m.singular_ends = {true, true};
  return m;
}

struct Registry {
  std::vector<PotentialModel> models;
  std::vector<ModelDescriptor> descriptors;

  Registry() {
    models = {make_box(),     make_trig_pt(), make_hyperbolic_pt(), make_shifted_osc(),
              make_osc3d(),   make_coulomb(), make_morse(),         make_eckart(),
              make_scarf1(),  make_rosen_morse1()};
    for (const PotentialModel& m : models) descriptors.push_back({m.id, true, std::nullopt, &m});
    descriptors.push_back({"scarf2", false, ExclusionReason::no_positive_f, nullptr});
    descriptors.push_back({"rosen_morse2", false, ExclusionReason::no_bound_states, nullptr});
    descriptors.push_back({"gen_poschl_teller", false, ExclusionReason::no_bound_states, nullptr});
  }
};

const Registry& registry() {
  static const Registry r;
  return r;
}

}  // namespace

std::string to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::no_positive_f:
      return "no_positive_f";
    case ExclusionReason::no_bound_states:
      return "no_bound_states";
  }
  return "unknown";
}

const std::vector<ModelDescriptor>& list_models() { return registry().descriptors; }

const PotentialModel& find_model(const std::string& id) {
  for (const ModelDescriptor& d : list_models()) {
    if (d.id != id) continue;
    if (!d.active)
      throw UnknownModelError("model " + id + " is excluded (" + to_string(*d.reason) + ")");
    return *d.model;
  }
  throw UnknownModelError("unknown model " + id);
}

void check_constraints(const PotentialModel& m, const ParamMap& p) {
  for (const Constraint& c : m.constraints) {
    if (c.holds(p)) continue;
    std::ostringstream os;
    os << m.id << ":";
    for (const ParameterSpec& s : m.parameters) os << ' ' << s.name << '=' << p.at(s.name);
    throw ConstraintError(c.window, os.str());
  }
}

ParamMap resolve_parameters(const PotentialModel& m, const ParamMap& given) {
  ParamMap out;
  for (const ParameterSpec& s : m.parameters) out[s.name] = s.default_value;
  for (const auto& [name, value] : given) {
    if (!out.count(name)) throw UnknownParameterError("model " + m.id + " has no parameter " + name);
    if (!std::isfinite(value)) throw ConstraintError(name + " finite", "non-finite value");
    out[name] = value;
  }
  check_constraints(m, out);
  return out;
}

DeformationSpec model_deformation(const PotentialModel& m, const ParamMap& p) {
  const ClassBinding b = m.binding(p);
  check_constraints(m, p);
  ParameterList alpha;
  for (const ParameterSpec& s : m.parameters)
    if (s.deformation) alpha.push_back({s.name, p.at(s.name)});
  DeformationSpec d(m.g(p), alpha, b.phi.domain);
  const auto lim = m.f_limits(p);
  d.f_limit_lo = lim[0];
  d.f_limit_hi = lim[1];
  return d;
}

SIParameterTrack model_track(const PotentialModel& m, const ParamMap& p, int levels) {
  SIParameterTrack t = build_track(m.binding(p), levels, m.id);
  t.deformation = model_deformation(m, p);
  return t;
}

double formal_spectrum(const PotentialModel& m, const ParamMap& p, int n) {
  if (n < 0) throw NoSuchLevelError("negative level index");
  return m.energy(p, n);
}

BoundStateCount bound_state_count(const PotentialModel& m, const ParamMap& p) {
  check_constraints(m, p);
  return m.count(p);
}

double spectrum(const PotentialModel& m, const ParamMap& p, int n) {
  const BoundStateCount c = bound_state_count(m, p);
  if (!c.admits(n)) {
    std::ostringstream os;
    os << m.id << ": level " << n << " is not bound (count " << c.to_string() << ")";
    throw NoSuchLevelError(os.str());
  }
  return m.energy(p, n);
}

SpectrumResult spectrum_table(const PotentialModel& m, const ParamMap& p, int levels) {
  SpectrumResult r;
  r.count = bound_state_count(m, p);
  r.provenance = m.id;
  for (int n = 0; n < levels && r.count.admits(n); ++n) r.energies.push_back(m.energy(p, n));
  return r;
}

double v_tilde(const PotentialModel& m, const ParamMap& p, const AmbiguityParams& amb, double x) {
  if (!m.domain.interior(x)) {
    std::ostringstream os;
    os << m.id << ": x = " << x << " is outside the open domain";
    throw DomainError(os.str());
  }
  return m.v_tilde(p, ambiguity_coefficients(amb), x);
}

}  // namespace pdm
