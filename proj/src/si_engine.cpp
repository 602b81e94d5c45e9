#include "pdm/si_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

double signed_root(double a, double disc, int sign) {
  if (disc < 0.0) {
    std::ostringstream os;
    os << "factorization quadratic has no real root (discriminant " << disc << ")";
    throw SIUnsolvableError(os.str());
  }
  return 0.5 * (a + (sign >= 0 ? 1.0 : -1.0) * std::sqrt(disc));
}

// Index of the basis element that carries a constant shift.
double constant_part(const BasisExpansion& e, const ClassConstants& k) {
  switch (e.cls) {
    case SIClass::one:
      return e.c[2];
    case SIClass::two:
      return e.c[1];
    case SIClass::three:
      return k.A != 0.0 ? e.c[0] / k.A : e.c[2] / k.B;
  }
  return 0.0;
}

double magnitude(const BasisExpansion& e) {
  return std::max({std::abs(e.c[0]), std::abs(e.c[1]), std::abs(e.c[2]), 1.0});
}

void require_closed(const BasisExpansion& rest, double scale, const char* where) {
  const double r = std::max({std::abs(rest.c[0]), std::abs(rest.c[1]), std::abs(rest.c[2])});
  if (r > 1e-9 * scale) {
    std::ostringstream os;
    os << where << ": coefficient matching left residual " << r;
    throw InternalConsistencyError(os.str());
  }
}

struct RadicandRoots {
  double r1, r2;
};

RadicandRoots radicand_roots(const ClassConstants& k) {
  if (k.A == 0.0 || !(k.A * k.B < 0.0))
    throw SIUnsolvableError("class 3 radicand A phi^2 + B has no pair of real roots");
  const double r = std::sqrt(-k.B / k.A);
  return {r, -r};
}

}  // namespace

InitialSolution solve_initial(const ClassBinding& b) {
  const SIClass cls = b.phi.cls;
  const ClassConstants& k = b.phi.k;
  const ClassConstants q = deformed_constants(k, b.primed);
  const BasisExpansion& v = b.v_eff;
  InitialSolution out;
  LambdaSet& lam = out.lam;
  switch (cls) {
    case SIClass::one:
      lam.lambda = signed_root(q.A, q.A * q.A + 4.0 * v.c[0], b.branch[0]);
      if (lam.lambda == 0.0) throw AmbiguityError("lambda_0 = 0 leaves mu undetermined");
      lam.mu = (v.c[1] + lam.lambda * q.B) / (2.0 * lam.lambda);
      break;
    case SIClass::two:
      lam.lambda = signed_root(q.A, q.A * q.A + 4.0 * v.c[0], b.branch[0]);
      lam.mu = signed_root(-q.B, q.B * q.B + 4.0 * v.c[2], b.branch[1]);
      break;
    case SIClass::three: {
      // At a root r of the radicand the identity reduces to
      // v(r) = w^2 + k_r w with w = lambda r + mu, k_r = A r (C~ r + D~).
      const RadicandRoots rr = radicand_roots(k);
      const double roots[2] = {rr.r1, rr.r2};
      double w[2];
      for (int j = 0; j < 2; ++j) {
        const double r = roots[j];
        const double kr = k.A * r * (q.C * r + q.D);
        const double vr = (v.c[0] * r + v.c[1]) * r + v.c[2];
        w[j] = signed_root(-kr, kr * kr + 4.0 * vr, b.branch[static_cast<std::size_t>(j)]);
      }
      lam.lambda = (w[0] - w[1]) / (roots[0] - roots[1]);
      lam.mu = w[0] - lam.lambda * roots[0];
      break;
    }
  }
  BasisExpansion rest = v;
  rest -= expand_W_squared(cls, lam);
  rest += expand_f_W_prime(cls, k, b.primed, lam);
  out.epsilon0 = constant_part(rest, k);
  rest -= expand_constant(cls, k, out.epsilon0);
  require_closed(rest, magnitude(v) + lam.lambda * lam.lambda + lam.mu * lam.mu, "solve_initial");
  return out;
}

EpsilonZero epsilon_zero(const std::function<double(double)>& v_eff, const PhiSpec& phi,
                         const DeformationSpec& f, const LambdaSet& lam,
                         const std::vector<double>& grid, double tol) {
  if (grid.empty()) throw std::invalid_argument("epsilon_zero: empty grid");
  const SIClass cls = phi.cls;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  double scale = 1.0;
  for (double x : grid) {
    const double v = v_eff(x);
    const double w = eval_W(cls, lam, phi, x);
    const double fwp = eval_f(f, x) * eval_W_prime(cls, lam, phi, x);
    const double r = v - w * w + fwp;
    scale = std::max(scale, std::abs(v) + w * w + std::abs(fwp));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    sum += r;
  }
  EpsilonZero out{sum / static_cast<double>(grid.size()), (hi - lo) / scale};
  if (!(out.spread <= tol)) {
    std::ostringstream os;
    os << "V_eff - W^2 + f W' is not constant (relative spread " << out.spread << ")";
    throw SIViolationError(os.str());
  }
  return out;
}

StepResult parameter_step(SIClass cls, const LambdaSet& cur, const ClassConstants& k,
                          const PrimedConstants& primed) {
  const ClassConstants q = deformed_constants(k, primed);
  StepResult out;
  LambdaSet& nxt = out.next;
  switch (cls) {
    case SIClass::one:
      // phi^2: (l' + l)(l' - l - A~) = 0; translation root.
      nxt.lambda = cur.lambda + q.A;
      if (nxt.lambda == 0.0) throw AmbiguityError("lambda_{i+1} = 0 leaves mu_{i+1} undetermined");
      nxt.mu = (2.0 * cur.lambda * cur.mu + (cur.lambda + nxt.lambda) * q.B) / (2.0 * nxt.lambda);
      break;
    case SIClass::two:
      nxt.lambda = cur.lambda + q.A;
      nxt.mu = cur.mu - q.B;
      break;
    case SIClass::three: {
      const RadicandRoots rr = radicand_roots(k);
      const double roots[2] = {rr.r1, rr.r2};
      double w[2];
      for (int j = 0; j < 2; ++j) {
        const double r = roots[j];
        const double kr = k.A * r * (q.C * r + q.D);
        w[j] = cur.lambda * r + cur.mu - kr;
      }
      nxt.lambda = (w[0] - w[1]) / (roots[0] - roots[1]);
      nxt.mu = w[0] - nxt.lambda * roots[0];
      break;
    }
  }
  BasisExpansion lhs = expand_W_squared(cls, cur);
  lhs += expand_f_W_prime(cls, k, primed, cur);
  BasisExpansion rest = lhs;
  rest -= expand_W_squared(cls, nxt);
  rest += expand_f_W_prime(cls, k, primed, nxt);
  out.epsilon = constant_part(rest, k);
  rest -= expand_constant(cls, k, out.epsilon);
  require_closed(rest, magnitude(lhs) + nxt.lambda * nxt.lambda + nxt.mu * nxt.mu,
                 "parameter_step");
  return out;
}

SIParameterTrack build_track(const PhiSpec& phi, const PrimedConstants& primed,
                             const InitialSolution& start, int levels, std::string origin) {
  if (levels < 0) throw std::invalid_argument("build_track: negative level count");
  SIParameterTrack t;
  t.phi = phi;
  t.primed = primed;
  t.deformation = build_deforming(phi, primed);
  t.origin = std::move(origin);
  t.lambdas.reserve(static_cast<std::size_t>(levels) + 1);
  t.lambdas.push_back(start.lam);
  t.epsilons.push_back(start.epsilon0);
  for (int i = 0; i < levels; ++i) {
    const StepResult s = parameter_step(phi.cls, t.lambdas.back(), phi.k, primed);
    t.lambdas.push_back(s.next);
    t.epsilons.push_back(s.epsilon);
  }
  return t;
}

SIParameterTrack build_track(const ClassBinding& binding, int levels, std::string origin) {
  return build_track(binding.phi, binding.primed, solve_initial(binding), levels,
                     std::move(origin));
}

double energy_from_track(const SIParameterTrack& track, int n) {
  if (n < 0 || n >= track.size()) throw std::out_of_range("energy_from_track: level outside track");
  double e = 0.0;
  for (int i = 0; i <= n; ++i) e += track.epsilons[static_cast<std::size_t>(i)];
  return e;
}

double residual_C2(const SIParameterTrack& track, int i, const std::vector<double>& grid) {
  if (i < 0 || i + 1 >= track.size()) throw std::out_of_range("residual_C2: index outside track");
  const SIClass cls = track.cls();
  const LambdaSet& a = track.lambdas[static_cast<std::size_t>(i)];
  const LambdaSet& b = track.lambdas[static_cast<std::size_t>(i) + 1];
  const double eps = track.epsilons[static_cast<std::size_t>(i) + 1];
  double worst = 0.0;
  for (double x : grid) {
    const double f = eval_f(track.deformation, x);
    const double wa = eval_W(cls, a, track.phi, x);
    const double wb = eval_W(cls, b, track.phi, x);
    const double fa = f * eval_W_prime(cls, a, track.phi, x);
    const double fb = f * eval_W_prime(cls, b, track.phi, x);
    const double diff = (wa * wa + fa) - (wb * wb - fb + eps);
    const double scale = std::max(1.0, wa * wa + std::abs(fa) + wb * wb + std::abs(fb) + std::abs(eps));
    worst = std::max(worst, std::abs(diff) / scale);
  }
  return worst;
}

double partner_potential(const std::function<double(double)>& v_eff, const PhiSpec& phi,
                         const DeformationSpec& f, const LambdaSet& lam, double x) {
  if (!f.domain().interior(x)) throw DomainError("partner_potential: x not interior");
  return v_eff(x) + 2.0 * eval_f(f, x) * eval_W_prime(phi.cls, lam, phi, x);
}

std::string BoundStateCount::kind_name() const {
  switch (kind) {
    case Kind::finite:
      return "finite";
    case Kind::infinite:
      return "infinite";
    case Kind::zero:
      return "zero";
  }
  return "zero";
}

std::string BoundStateCount::to_string() const {
  if (kind == Kind::infinite) return "inf";
  return std::to_string(kind == Kind::finite ? value : 0);
}

}  // namespace pdm
