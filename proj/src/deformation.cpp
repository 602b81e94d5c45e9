#include "pdm/deformation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pdm/errors.hpp"

namespace pdm {

AmbiguityCoefficients ambiguity_coefficients(double xi, double zeta) {
  return {0.5 * (1.0 - xi - zeta), (0.5 - xi) * (0.5 - zeta)};
}

DeformationSpec::DeformationSpec(JetFn g, ParameterList alpha, Interval domain)
    : g_(std::move(g)), alpha_(std::move(alpha)), domain_(domain) {}

DeformationSpec DeformationSpec::identity(Interval domain) {
  DeformationSpec spec([](double) { return Jet{}; }, {}, domain);
  spec.f_limit_lo = 1.0;
  spec.f_limit_hi = 1.0;
  return spec;
}

void DeformationSpec::require_domain(double x) const {
  if (!domain_.contains(x)) {
    std::ostringstream os;
    os << "x = " << x << " outside deformation domain";
    throw DomainError(os.str());
  }
}

Jet DeformationSpec::g(double x) const {
  require_domain(x);
  if (!g_) return {};
  return g_(x);
}

Jet DeformationSpec::f(double x) const {
  Jet j = g(x);
  j.value += 1.0;
  return j;
}

double eval_f(const DeformationSpec& spec, double x) { return spec.f(x).value; }

double mass_profile(const DeformationSpec& spec, double x) {
  const double f = eval_f(spec, x);
  if (!(f > 0.0)) {
    std::ostringstream os;
    os << "f(" << x << ") = " << f << " is not positive";
    throw PositivityError(os.str());
  }
  return 1.0 / (f * f);
}

double v_tilde_generic(const DeformationSpec& spec, double rho, double sigma, double x) {
  const Jet f = spec.f(x);
  return rho * f.value * f.second + sigma * f.first * f.first;
}

RecoveredPotential recover_initial_potential(const EffectivePotentialSpec& v_eff,
                                             const DeformationSpec& spec,
                                             const AmbiguityParams& amb, double x) {
  if (!spec.domain().interior(x)) throw DomainError("recover_initial_potential: x not interior");
  const AmbiguityCoefficients c = ambiguity_coefficients(amb);
  RecoveredPotential out;
  out.value = v_eff.v_eff(x) - v_tilde_generic(spec, c, x);
  out.provenance = v_eff.params_b;
  out.provenance.insert(out.provenance.end(), spec.alpha_params().begin(),
                        spec.alpha_params().end());
  out.provenance.push_back({"xi", amb.xi});
  out.provenance.push_back({"eta", amb.eta()});
  out.provenance.push_back({"zeta", amb.zeta});
  return out;
}

PositivityVerdict check_positivity(const DeformationSpec& spec, int samples) {
  if (samples < 2) throw std::invalid_argument("check_positivity: samples < 2");
  const Interval& d = spec.domain();
  PositivityVerdict v;
  if (spec.f_limit_lo && *spec.f_limit_lo < 0.0) {
    v.ok = false;
    v.x_violation = d.lo;
    v.f_violation = *spec.f_limit_lo;
    return v;
  }
  // Scan in the compact coordinate so infinite domains are covered too.
  for (int k = 1; k <= samples; ++k) {
    const double t = static_cast<double>(k) / (samples + 1);
    const double x = d.from_compact(t);
    if (!d.interior(x)) continue;
    const double f = eval_f(spec, x);
    if (!(f > 0.0)) {
      v.ok = false;
      v.x_violation = x;
      v.f_violation = f;
      return v;
    }
  }
  if (spec.f_limit_hi && *spec.f_limit_hi < 0.0) {
    v.ok = false;
    v.x_violation = d.hi;
    v.f_violation = *spec.f_limit_hi;
  }
  return v;
}

}  // namespace pdm
