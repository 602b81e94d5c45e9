#pragma once

#include <array>
#include <functional>
#include <string>

#include "pdm/deformation.hpp"
#include "pdm/interval.hpp"

namespace pdm {

/// The three families of translationally shape-invariant superpotentials.
///   class 1: W = lambda*phi + mu,             phi' = A phi^2 + B phi + C
///   class 2: W = lambda*phi + mu/phi,         phi' = A phi^2 + B
///   class 3: W = (lambda*phi + mu)/sqrt(R),   phi' = (C phi + D) sqrt(R),
///            R = A phi^2 + B
enum class SIClass { one = 1, two = 2, three = 3 };

int class_index(SIClass c);
SIClass class_from_index(int tag);

struct ClassConstants {
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
};

/// Deformation-dependent constants A', B', C', D' (already evaluated at the
/// model's alpha). Class 2 uses A', B'; class 3 uses C', D'.
using PrimedConstants = ClassConstants;

/// Sum of the plain and primed constants (A+A', B+B', ...).
ClassConstants deformed_constants(const ClassConstants& k, const PrimedConstants& p);

struct LambdaSet {
  double lambda = 0.0;
  double mu = 0.0;
};

/// Base function phi of a class with its closure constants.
struct PhiSpec {
  SIClass cls = SIClass::one;
  ClassConstants k;
  std::function<double(double)> phi;
  /// Optional closed-form phi'(x); the closure ODE is used when empty.
  std::function<double(double)> phi_prime;
  Interval domain;
  std::string name;
  /// Limits of phi at the domain ends (may be ±inf).
  double phi_at_lo = 0.0;
  double phi_at_hi = 0.0;
};

double eval_phi(const PhiSpec& spec, double x);
/// Right-hand side of the closure ODE evaluated at phi(x).
double eval_phi_prime(const PhiSpec& spec, double x);

/// phi' as a function of phi, and its phi-derivative.
double closure_rhs(SIClass cls, const ClassConstants& k, double phi);
double closure_rhs_dphi(SIClass cls, const ClassConstants& k, double phi);

double eval_W(SIClass cls, const LambdaSet& lam, const PhiSpec& spec, double x);
double eval_W_prime(SIClass cls, const LambdaSet& lam, const PhiSpec& spec, double x);

/// W and dW/dphi written in terms of phi.
double W_of_phi(SIClass cls, const ClassConstants& k, const LambdaSet& lam, double phi);
double dW_dphi(SIClass cls, const ClassConstants& k, const LambdaSet& lam, double phi);

/// Deforming function g(x) of the class, with g', g'' from the closure ODE.
DeformationSpec build_deforming(const PhiSpec& spec, const PrimedConstants& primed,
                                ParameterList alpha = {});

/// Finite function basis of a class:
///   class 1: {phi^2, phi, 1}
///   class 2: {phi^2, 1, phi^-2}
///   class 3: {phi^2, phi, 1} / (A phi^2 + B)
struct BasisExpansion {
  SIClass cls = SIClass::one;
  std::array<double, 3> c{};

  double evaluate(const ClassConstants& k, double phi) const;
  BasisExpansion& operator+=(const BasisExpansion& o);
  BasisExpansion& operator-=(const BasisExpansion& o);
  BasisExpansion operator*(double s) const;
};

BasisExpansion expand_W_squared(SIClass cls, const LambdaSet& lam);
/// f W' with f built from `primed`.
BasisExpansion expand_f_W_prime(SIClass cls, const ClassConstants& k,
                                const PrimedConstants& primed, const LambdaSet& lam);
/// g W' alone (the extra terms brought by the deformation).
BasisExpansion expand_g_W_prime(SIClass cls, const ClassConstants& k,
                                const PrimedConstants& primed, const LambdaSet& lam);
BasisExpansion expand_constant(SIClass cls, const ClassConstants& k, double value);

}  // namespace pdm
