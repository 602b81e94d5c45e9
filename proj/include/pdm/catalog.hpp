#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdm/deformation.hpp"
#include "pdm/si_engine.hpp"

namespace pdm {

using ParamMap = std::map<std::string, double>;

struct ParameterSpec {
  std::string name;    // token used on the command line
  std::string symbol;  // printed symbol
  double default_value = 0.0;
  bool deformation = false;  // part of alpha (as opposed to the potential parameters b)
};

/// A stated parameter window. `window` is the label reported on violation.
struct Constraint {
  std::string window;
  std::function<bool(const ParamMap&)> holds;
};

enum class ExclusionReason { no_positive_f, no_bound_states };
std::string to_string(ExclusionReason r);

struct PotentialModel {
  std::string id;
  std::string title;
  Interval domain;
  std::vector<ParameterSpec> parameters;
  std::vector<Constraint> constraints;
  /// "infinite", "finite", "finite|infinite" or "zero" (deformed case).
  std::string count_rule_kind;

  std::function<double(const ParamMap&, double)> v_eff;
  /// Deforming function g with its first two derivatives, in closed form.
  std::function<DeformationSpec::JetFn(const ParamMap&)> g;
  std::function<ClassBinding(const ParamMap&)> binding;
  /// Closed-form E_n; ignores the count rule.
  std::function<double(const ParamMap&, int)> energy;
  /// Constant-mass spectrum of the same V_eff.
  std::function<double(const ParamMap&, int)> undeformed_energy;
  std::function<BoundStateCount(const ParamMap&)> count;
  std::function<double(const ParamMap&, AmbiguityCoefficients, double)> v_tilde;
  /// Delta-type quantities entering the spectrum.
  std::function<ParameterList(const ParamMap&)> derived;
  /// Limits of f at the two domain ends.
  std::function<std::array<double, 2>(const ParamMap&)> f_limits;
  /// Threshold of the continuous spectrum when it exists.
  std::function<std::optional<double>(const ParamMap&)> continuum;
  /// Closed-form wavefunction written with the model's own recurrence (may be empty).
  std::function<double(const ParamMap&, int, double)> reference_psi;
  /// Finite ends where V_eff is singular.
  std::array<bool, 2> singular_ends{false, false};
};

struct ModelDescriptor {
  std::string id;
  bool active = true;
  std::optional<ExclusionReason> reason;
  const PotentialModel* model = nullptr;  // null for excluded entries
};

/// 10 active models followed by the 3 excluded ones, in fixed order.
const std::vector<ModelDescriptor>& list_models();
const PotentialModel& find_model(const std::string& id);

/// Defaults overridden by `given`; unknown names and window violations throw.
ParamMap resolve_parameters(const PotentialModel& m, const ParamMap& given);
void check_constraints(const PotentialModel& m, const ParamMap& p);

DeformationSpec model_deformation(const PotentialModel& m, const ParamMap& p);
/// SI track with levels 0..levels, carrying the model's deformation.
SIParameterTrack model_track(const PotentialModel& m, const ParamMap& p, int levels);

double formal_spectrum(const PotentialModel& m, const ParamMap& p, int n);
/// E_n, throwing NoSuchLevelError when n is not admitted by the count rule.
double spectrum(const PotentialModel& m, const ParamMap& p, int n);
BoundStateCount bound_state_count(const PotentialModel& m, const ParamMap& p);
/// Admissible levels among 0..levels-1.
SpectrumResult spectrum_table(const PotentialModel& m, const ParamMap& p, int levels);

double v_tilde(const PotentialModel& m, const ParamMap& p, const AmbiguityParams& amb, double x);

/// Morse alpha_max(n).
double morse_alpha_max(double A, double B, int n);

}  // namespace pdm
