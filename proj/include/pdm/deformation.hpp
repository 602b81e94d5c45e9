#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pdm/interval.hpp"

namespace pdm {

struct NamedValue {
  std::string name;
  double value = 0.0;
};

using ParameterList = std::vector<NamedValue>;

/// Value with its first two x-derivatives.
struct Jet {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

/// von Roos ambiguity parameters in the f-form (xi + eta + zeta = 2).
struct AmbiguityParams {
  double xi = 0.0;
  double zeta = 0.0;
  double eta() const { return 2.0 - xi - zeta; }
};

struct AmbiguityCoefficients {
  double rho = 0.0;
  double sigma = 0.0;
};

AmbiguityCoefficients ambiguity_coefficients(double xi, double zeta);
inline AmbiguityCoefficients ambiguity_coefficients(const AmbiguityParams& a) {
  return ambiguity_coefficients(a.xi, a.zeta);
}

/// Deforming function g(alpha; x) with analytic derivatives. f = 1 + g and
/// the mass profile is M = f^-2.
class DeformationSpec {
 public:
  using JetFn = std::function<Jet(double)>;

  DeformationSpec() = default;
  DeformationSpec(JetFn g, ParameterList alpha, Interval domain);

  /// The undeformed case g = 0 on `domain`.
  static DeformationSpec identity(Interval domain);

  const Interval& domain() const { return domain_; }
  const ParameterList& alpha_params() const { return alpha_; }

  /// g, g', g'' at x. Throws DomainError outside the domain.
  Jet g(double x) const;
  /// f, f', f'' at x.
  Jet f(double x) const;

  /// Analytic limits of f at the domain ends, when registered.
  std::optional<double> f_limit_lo;
  std::optional<double> f_limit_hi;

 private:
  void require_domain(double x) const;

  JetFn g_;
  ParameterList alpha_;
  Interval domain_;
};

double eval_f(const DeformationSpec& spec, double x);
double mass_profile(const DeformationSpec& spec, double x);
double v_tilde_generic(const DeformationSpec& spec, double rho, double sigma, double x);
inline double v_tilde_generic(const DeformationSpec& spec, AmbiguityCoefficients c, double x) {
  return v_tilde_generic(spec, c.rho, c.sigma, x);
}

struct EffectivePotentialSpec {
  std::function<double(double)> v_eff;
  ParameterList params_b;
};

/// Initial potential V = V_eff - V~ together with the parameter set
/// a = (b, alpha, xi) it depends on.
struct RecoveredPotential {
  double value = 0.0;
  ParameterList provenance;
};

RecoveredPotential recover_initial_potential(const EffectivePotentialSpec& v_eff,
                                             const DeformationSpec& spec,
                                             const AmbiguityParams& amb, double x);

struct PositivityVerdict {
  bool ok = true;
  double x_violation = 0.0;  // first offending point when !ok
  double f_violation = 0.0;
};

/// Dense interior scan of f plus the registered endpoint limits.
PositivityVerdict check_positivity(const DeformationSpec& spec, int samples = 10000);

}  // namespace pdm
