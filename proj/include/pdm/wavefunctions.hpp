#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pdm/polynomial.hpp"
#include "pdm/si_engine.hpp"

namespace pdm {

/// One step of the class recurrence: P_{n+1}(lambda_s; y) from
/// P_n(lambda_{s+1}; y). `shift` is the track index s of the base parameters.
Polynomial poly_step(SIClass cls, int n, const Polynomial& p_n_shifted,
                     const SIParameterTrack& track, int shift, const ClassConstants& k,
                     const PrimedConstants& primed);

/// Memoized P_n(lambda_s) over (level, shift), built for a single track.
class PolynomialTable {
 public:
  explicit PolynomialTable(const SIParameterTrack& track) : track_(&track) {}
  const Polynomial& get(int n, int shift = 0);

 private:
  const SIParameterTrack* track_;
  std::map<std::pair<int, int>, Polynomial> cache_;
};

/// Change of variable y used by the polynomial form of phi_n.
double transform_variable(SIClass cls, const ClassConstants& k, double phi);

/// phi_n(x) = prefactor(y) P_n(y).
double phi_n(const SIParameterTrack& track, int n, double x);

/// integral^x W(lambda_n)/f in closed form (up to an additive constant).
double integrating_exponent(const SIParameterTrack& track, int n, double x);
/// exp(-integral^x W(lambda_n)/f), normalized to 1 at `anchor`.
double integrating_factor(const SIParameterTrack& track, int n, double x, double anchor);
/// Same quantity by adaptive quadrature from `anchor` (relative tolerance 1e-10).
double integrating_factor_quadrature(const SIParameterTrack& track, int n, double x,
                                     double anchor);

/// Unnormalized psi_n evaluated in log form so tails do not underflow.
class Wavefunction {
 public:
  Wavefunction(const SIParameterTrack& track, int n);

  struct LogValue {
    double log_abs = 0.0;  // -inf at a node
    int sign = 0;
  };

  int level() const { return n_; }
  const SIParameterTrack& track() const { return track_; }

  LogValue log_psi(double x) const;
  /// psi(x) * exp(-shift).
  double psi(double x, double shift = 0.0) const;
  /// log(|psi|^2 f).
  double log_density_f(double x) const;

 private:
  double exponent(double x) const;

  SIParameterTrack track_;
  int n_;
  Polynomial p_;
  std::array<std::optional<double>, 2> cut_;  // start of the quadrature tails
  std::array<double, 2> cut_exponent_{};
};

struct BoundaryLimits {
  double lo = 0.0;  // lim |psi|^2 f, relative to the interior maximum
  double hi = 0.0;
};

struct WavefunctionBundle {
  int n = 0;
  std::vector<std::pair<double, double>> samples;  // (x, psi) scaled to max |psi| = 1
  double log_scale = 0.0;  // samples = psi_unnormalized * exp(-log_scale)
  double norm = 0.0;       // sqrt of integral of samples^2
  bool l2_ok = false;
  bool hermiticity_ok = false;
  BoundaryLimits boundary_values;
  int node_count = 0;
  std::optional<double> truncation_radius;
};

/// Radius R such that psi^2 < 1e-14 * peak for |x| > R (infinite ends only).
double truncation_radius(const Wavefunction& psi, const Interval& domain);

/// Richardson estimate of lim |psi|^2 f at each end, relative to the interior
/// maximum. Throws InconclusiveLimitError when the extrapolants disagree.
BoundaryLimits boundary_limits(const Wavefunction& psi, double tol = 1e-8);

/// Integral of psi^2 exp(-2 log_scale) over the domain truncated at `radius`.
double psi_norm_squared(const Wavefunction& psi, double log_scale, double radius);

bool hermiticity_boundary_check(const WavefunctionBundle& bundle, double tol = 1e-8);

/// Samples psi_n on `grid` (`samples` uniform points when empty), computes
/// the norm and runs the square-integrability and Hermiticity gates.
WavefunctionBundle assemble_psi(const SIParameterTrack& track, int n,
                                std::vector<double> grid = {}, int samples = 2001);

/// Number of sign changes along the ordered samples.
int count_sign_changes(const std::vector<std::pair<double, double>>& samples);

}  // namespace pdm
