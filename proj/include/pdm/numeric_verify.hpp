#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pdm/catalog.hpp"
#include "pdm/wavefunctions.hpp"

namespace pdm {

/// u = integral of dx / f, with its inverse.
struct CoordinateMap {
  std::function<double(double)> u_of_x;
  std::function<double(double)> f;
  Interval x_domain;
  Interval u_range;  // infinite ends where the integral diverges
  bool closed_form = false;

  double x_of_u(double u) const;
};

/// Closed-form u(x) for classes 1 and 2 (u = integral dphi / (phi' f));
/// empty for class 3.
std::function<double(double)> closed_form_u(const PhiSpec& phi, const PrimedConstants& primed);

/// Uses `closed` when given, otherwise tabulated adaptive quadrature of 1/f.
CoordinateMap map_coordinate(const DeformationSpec& f, std::function<double(double)> closed = {});

/// Flat Sturm-Liouville problem -chi'' + V_eff(x(u)) chi = E chi.
struct MappedProblem {
  CoordinateMap cmap;
  std::function<double(double)> v_eff;
  std::array<bool, 2> singular_ends{false, false};
  std::optional<double> threshold;  // continuum edge, when present
};

MappedProblem mapped_problem(const PotentialModel& m, const ParamMap& p);

/// Dirichlet window [u_lo, u_hi] with a note on how each end was chosen.
struct UWindow {
  double lo = 0.0;
  double hi = 0.0;
  std::string truncation;
};

/// Finite u ends are used as they are (or at x = end -/+ 1e-6 for singular
/// walls); infinite u ends are cut where the WKB exponent of a state at
/// `energy` reaches `decay`.
UWindow u_window(const MappedProblem& prob, double energy, double decay = 25.0);

struct TridiagonalSystem {
  std::vector<double> diag;
  std::vector<double> off;  // size diag.size() - 1
  double h = 0.0;
  std::vector<double> u_nodes;
  std::vector<double> x_nodes;
};

/// Uniform u grid with N intervals and Dirichlet ends, three-point stencil.
TridiagonalSystem build_operator(const MappedProblem& prob, const UWindow& w, int N);

struct DiscreteSpectrum {
  std::vector<double> eigenvalues;  // ascending
  int grid_size = 0;
  std::string truncation;
};

/// Lowest k eigenvalues by Sturm-count bisection.
DiscreteSpectrum eigen_solve(const TridiagonalSystem& sys, int k);
/// Number of eigenvalues strictly below `lambda`.
int sturm_count(const TridiagonalSystem& sys, double lambda);

struct VerifyOptions {
  int grid = 4096;
  double tol = 1e-6;
  int richardson_levels = 3;  // solves at N, 2N, 4N
};

struct NumericSpectrum {
  std::vector<double> extrapolated;
  std::vector<std::vector<double>> raw;  // per grid level
  std::vector<int> grids;
  UWindow window;
  /// Eigenvalues below the continuum edge on the finest grid (-1 without an edge).
  int bound_below_threshold = -1;
};

NumericSpectrum numeric_spectrum(const MappedProblem& prob, int k, const VerifyOptions& opt = {});

struct ComparisonReport {
  std::vector<double> analytic;
  std::vector<double> numeric;
  std::vector<double> rel_error;
  double max_rel_error = 0.0;
  double tol = 0.0;
  bool levels_ok = false;
  std::optional<int> numeric_count;  // finite-count models
  bool count_ok = true;
  bool pass = false;
};

ComparisonReport compare_spectra(const SpectrumResult& analytic, const NumericSpectrum& numeric,
                                 double tol);

/// analytic vs numeric for the lowest `levels` admissible levels of a model.
ComparisonReport verify_model(const PotentialModel& m, const ParamMap& p, int levels,
                              const VerifyOptions& opt = {});

/// ||H psi - E psi|| / ||psi|| on the mapped grid (chi = sqrt(f) psi).
double eigen_residual(const MappedProblem& prob, const Wavefunction& psi, double energy,
                      int N = 1 << 17);

}  // namespace pdm
