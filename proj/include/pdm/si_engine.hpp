#pragma once

#include <array>
#include <string>
#include <vector>

#include "pdm/deformation.hpp"
#include "pdm/superpotential.hpp"

namespace pdm {

/// Everything the engine needs to know about a model's class structure:
/// base function, primed constants, V_eff expanded in the class basis and the
/// root signs used when solving the ground-level factorization.
///
/// Branch signs: class 1 uses branch[0] for lambda; class 2 uses branch[0]
/// for lambda and branch[1] for mu; class 3 uses branch[0] at the root
/// phi = +sqrt(-B/A) of the radicand and branch[1] at phi = -sqrt(-B/A).
struct ClassBinding {
  PhiSpec phi;
  PrimedConstants primed;
  BasisExpansion v_eff;
  std::array<int, 2> branch{+1, +1};
};

struct InitialSolution {
  LambdaSet lam;
  double epsilon0 = 0.0;
};

/// Solves V_eff = W^2 - f W' + eps0 by coefficient matching in the class
/// basis. Throws SIUnsolvableError when no real root exists.
InitialSolution solve_initial(const ClassBinding& binding);

struct EpsilonZero {
  double value = 0.0;
  double spread = 0.0;  // (max - min) / scale over the grid
};

/// eps0 = V_eff - W^2 + f W' sampled on `grid`; throws SIViolationError if
/// the residual is not constant to `tol` (relative to the term magnitudes).
EpsilonZero epsilon_zero(const std::function<double(double)>& v_eff, const PhiSpec& phi,
                         const DeformationSpec& f, const LambdaSet& lam,
                         const std::vector<double>& grid, double tol = 1e-10);

struct StepResult {
  LambdaSet next;
  double epsilon = 0.0;
};

/// One shape-invariance step lambda_i -> lambda_{i+1}. The translation root
/// is selected (lambda_{i+1} = lambda_i + A + A' in class 1), which keeps the
/// ground state nodeless.
StepResult parameter_step(SIClass cls, const LambdaSet& current, const ClassConstants& k,
                          const PrimedConstants& primed);

/// lambda_i, eps_i for i = 0..levels together with the structure they came from.
struct SIParameterTrack {
  std::vector<LambdaSet> lambdas;
  std::vector<double> epsilons;
  PhiSpec phi;
  PrimedConstants primed;
  DeformationSpec deformation;
  std::string origin;

  SIClass cls() const { return phi.cls; }
  int size() const { return static_cast<int>(lambdas.size()); }
};

/// Builds the track up to index `levels` starting from the solved ground
/// factorization.
SIParameterTrack build_track(const ClassBinding& binding, int levels, std::string origin = {});

/// Same, starting from an explicit lambda_0 and eps0.
SIParameterTrack build_track(const PhiSpec& phi, const PrimedConstants& primed,
                             const InitialSolution& start, int levels, std::string origin = {});

double energy_from_track(const SIParameterTrack& track, int n);

/// max over grid of |LHS - RHS| of the step identity between i and i+1,
/// each point scaled by max(1, sum of term magnitudes).
double residual_C2(const SIParameterTrack& track, int i, const std::vector<double>& grid);

double partner_potential(const std::function<double(double)>& v_eff, const PhiSpec& phi,
                         const DeformationSpec& f, const LambdaSet& lam, double x);

/// Number of admissible levels.
struct BoundStateCount {
  enum class Kind { finite, infinite, zero };
  Kind kind = Kind::zero;
  int value = 0;

  static BoundStateCount finite(int k) {
    return k > 0 ? BoundStateCount{Kind::finite, k} : zero();
  }
  static BoundStateCount infinite() { return {Kind::infinite, 0}; }
  static BoundStateCount zero() { return {Kind::zero, 0}; }

  bool admits(int n) const {
    return n >= 0 && (kind == Kind::infinite || (kind == Kind::finite && n < value));
  }
  bool is_infinite() const { return kind == Kind::infinite; }
  std::string kind_name() const;
  /// "inf" for the infinite case, the integer otherwise.
  std::string to_string() const;

  friend bool operator==(const BoundStateCount&, const BoundStateCount&) = default;
};

struct SpectrumResult {
  std::vector<double> energies;
  BoundStateCount count;
  std::string provenance;
};

}  // namespace pdm
