#include "pdm/superpotential.hpp"

#include <cmath>
#include <sstream>

#include "pdm/errors.hpp"

namespace pdm {

int class_index(SIClass c) { return static_cast<int>(c); }

SIClass class_from_index(int tag) {
  if (tag < 1 || tag > 3) throw ConstructionError("class tag must be 1, 2 or 3");
  return static_cast<SIClass>(tag);
}

ClassConstants deformed_constants(const ClassConstants& k, const PrimedConstants& p) {
  return {k.A + p.A, k.B + p.B, k.C + p.C, k.D + p.D};
}

namespace {

double radicand(const ClassConstants& k, double phi) { return k.A * phi * phi + k.B; }

double checked_radicand(const ClassConstants& k, double phi) {
  const double r = radicand(k, phi);
  if (!(r > 0.0)) {
    std::ostringstream os;
    os << "class 3 radicand A phi^2 + B = " << r << " is not positive";
    throw DomainError(os.str());
  }
  return r;
}

void require_nonzero_phi(double phi) {
  if (phi == 0.0) throw DomainError("class 2 superpotential has a pole at phi = 0");
}

}  // namespace

double eval_phi(const PhiSpec& spec, double x) {
  if (!spec.domain.contains(x)) throw DomainError("eval_phi: x outside phi domain");
  return spec.phi(x);
}

double closure_rhs(SIClass cls, const ClassConstants& k, double phi) {
  switch (cls) {
    case SIClass::one:
      return (k.A * phi + k.B) * phi + k.C;
    case SIClass::two:
      return k.A * phi * phi + k.B;
    case SIClass::three:
      return (k.C * phi + k.D) * std::sqrt(checked_radicand(k, phi));
  }
  return 0.0;
}

double closure_rhs_dphi(SIClass cls, const ClassConstants& k, double phi) {
  switch (cls) {
    case SIClass::one:
      return 2.0 * k.A * phi + k.B;
    case SIClass::two:
      return 2.0 * k.A * phi;
    case SIClass::three: {
      const double r = checked_radicand(k, phi);
      const double s = std::sqrt(r);
      return k.C * s + (k.C * phi + k.D) * k.A * phi / s;
    }
  }
  return 0.0;
}

double eval_phi_prime(const PhiSpec& spec, double x) {
  if (spec.phi_prime) {
    eval_phi(spec, x);
    return spec.phi_prime(x);
  }
  return closure_rhs(spec.cls, spec.k, eval_phi(spec, x));
}

double W_of_phi(SIClass cls, const ClassConstants& k, const LambdaSet& lam, double phi) {
  switch (cls) {
    case SIClass::one:
      return lam.lambda * phi + lam.mu;
    case SIClass::two:
      require_nonzero_phi(phi);
      return lam.lambda * phi + lam.mu / phi;
    case SIClass::three:
      return (lam.lambda * phi + lam.mu) / std::sqrt(checked_radicand(k, phi));
  }
  return 0.0;
}

double dW_dphi(SIClass cls, const ClassConstants& k, const LambdaSet& lam, double phi) {
  switch (cls) {
    case SIClass::one:
      return lam.lambda;
    case SIClass::two:
      require_nonzero_phi(phi);
      return lam.lambda - lam.mu / (phi * phi);
    case SIClass::three: {
      const double r = checked_radicand(k, phi);
      return (lam.lambda * k.B - k.A * lam.mu * phi) / (r * std::sqrt(r));
    }
  }
  return 0.0;
}

double eval_W(SIClass cls, const LambdaSet& lam, const PhiSpec& spec, double x) {
  return W_of_phi(cls, spec.k, lam, eval_phi(spec, x));
}

double eval_W_prime(SIClass cls, const LambdaSet& lam, const PhiSpec& spec, double x) {
  return dW_dphi(cls, spec.k, lam, eval_phi(spec, x)) * eval_phi_prime(spec, x);
}

namespace {

// Numerator and denominator of g as polynomials in phi, with phi-derivatives.
struct RationalJet {
  double n, n1, n2, d, d1, d2;
};

RationalJet g_parts(SIClass cls, const ClassConstants& k, const PrimedConstants& p,
                    double phi) {
  switch (cls) {
    case SIClass::one:
      return {(p.A * phi + p.B) * phi + p.C, 2.0 * p.A * phi + p.B, 2.0 * p.A,
              (k.A * phi + k.B) * phi + k.C, 2.0 * k.A * phi + k.B, 2.0 * k.A};
    case SIClass::two:
      return {p.A * phi * phi + p.B, 2.0 * p.A * phi, 2.0 * p.A,
              k.A * phi * phi + k.B, 2.0 * k.A * phi, 2.0 * k.A};
    case SIClass::three:
      return {p.C * phi + p.D, p.C, 0.0, k.C * phi + k.D, k.C, 0.0};
  }
  return {};
}

}  // namespace

DeformationSpec build_deforming(const PhiSpec& spec, const PrimedConstants& primed,
                                ParameterList alpha) {
  const SIClass cls = spec.cls;
  const ClassConstants k = spec.k;
  auto phi_fn = spec.phi;
  const bool trivial = primed.A == 0.0 && primed.B == 0.0 && primed.C == 0.0 && primed.D == 0.0;
  if (trivial) {
    DeformationSpec id([](double) { return Jet{}; }, std::move(alpha), spec.domain);
    id.f_limit_lo = id.f_limit_hi = 1.0;
    return id;
  }
  auto g = [cls, k, primed, phi_fn](double x) {
    const double phi = phi_fn(x);
    const RationalJet r = g_parts(cls, k, primed, phi);
    if (r.d == 0.0) throw ConstructionError("deforming function denominator vanishes");
    // Quotient rule in phi, then chain rule through the closure ODE.
    const double G = r.n / r.d;
    const double G1 = (r.n1 - G * r.d1) / r.d;
    const double G2 = (r.n2 - 2.0 * G1 * r.d1 - G * r.d2) / r.d;
    const double px = closure_rhs(cls, k, phi);
    const double pxx = closure_rhs_dphi(cls, k, phi) * px;
    return Jet{G, G1 * px, G2 * px * px + G1 * pxx};
  };
  // Probe the denominator once so a degenerate construction fails early.
  const Interval probe = spec.domain.truncated(1e-3, 5.0);
  for (double x : chebyshev_points(probe.lo, probe.hi, 64)) {
    const RationalJet r = g_parts(cls, k, primed, phi_fn(x));
    if (r.d == 0.0) throw ConstructionError("deforming function denominator vanishes on domain");
  }
  return DeformationSpec(std::move(g), std::move(alpha), spec.domain);
}

double BasisExpansion::evaluate(const ClassConstants& k, double phi) const {
  switch (cls) {
    case SIClass::one:
      return (c[0] * phi + c[1]) * phi + c[2];
    case SIClass::two:
      require_nonzero_phi(phi);
      return c[0] * phi * phi + c[1] + c[2] / (phi * phi);
    case SIClass::three:
      return ((c[0] * phi + c[1]) * phi + c[2]) / checked_radicand(k, phi);
  }
  return 0.0;
}

BasisExpansion& BasisExpansion::operator+=(const BasisExpansion& o) {
  for (std::size_t i = 0; i < 3; ++i) c[i] += o.c[i];
  return *this;
}

BasisExpansion& BasisExpansion::operator-=(const BasisExpansion& o) {
  for (std::size_t i = 0; i < 3; ++i) c[i] -= o.c[i];
  return *this;
}

BasisExpansion BasisExpansion::operator*(double s) const {
  BasisExpansion out = *this;
  for (double& v : out.c) v *= s;
  return out;
}

BasisExpansion expand_W_squared(SIClass cls, const LambdaSet& lam) {
  const double l = lam.lambda, m = lam.mu;
  // Same coefficients in all three bases.
  return {cls, {l * l, 2.0 * l * m, m * m}};
}

namespace {

// (lambda, mu) contracted with a constant set (plain, primed or summed).
BasisExpansion w_prime_times(SIClass cls, const ClassConstants& radical,
                             const ClassConstants& q, const LambdaSet& lam) {
  const double l = lam.lambda, m = lam.mu;
  switch (cls) {
    case SIClass::one:
      // lambda (A phi^2 + B phi + C)
      return {cls, {l * q.A, l * q.B, l * q.C}};
    case SIClass::two:
      // (A phi^2 + B)(lambda - mu phi^-2)
      return {cls, {l * q.A, l * q.B - m * q.A, -m * q.B}};
    case SIClass::three:
      // (lambda B - A mu phi)(C phi + D) / R, radicand constants unprimed
      return {cls,
              {-radical.A * m * q.C, l * radical.B * q.C - radical.A * m * q.D,
               l * radical.B * q.D}};
  }
  return {cls, {}};
}

}  // namespace

BasisExpansion expand_f_W_prime(SIClass cls, const ClassConstants& k,
                                const PrimedConstants& primed, const LambdaSet& lam) {
  return w_prime_times(cls, k, deformed_constants(k, primed), lam);
}

BasisExpansion expand_g_W_prime(SIClass cls, const ClassConstants& k,
                                const PrimedConstants& primed, const LambdaSet& lam) {
  return w_prime_times(cls, k, primed, lam);
}

BasisExpansion expand_constant(SIClass cls, const ClassConstants& k, double value) {
  switch (cls) {
    case SIClass::one:
      return {cls, {0.0, 0.0, value}};
    case SIClass::two:
      return {cls, {0.0, value, 0.0}};
    case SIClass::three:
      return {cls, {value * k.A, 0.0, value * k.B}};
  }
  return {cls, {}};
}

}  // namespace pdm
