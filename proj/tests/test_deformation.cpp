#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdm/catalog.hpp"
#include "pdm/deformation.hpp"
#include "pdm/errors.hpp"

using namespace pdm;
using std::numbers::pi;

namespace {

const Interval kHalfPi{-pi / 2, pi / 2, true, true};
const Interval kReal{-kInf, kInf, false, false};

DeformationSpec sin2(double a) {
  return DeformationSpec(
      [a](double x) {
        return Jet{a * std::sin(x) * std::sin(x), a * std::sin(2 * x), 2 * a * std::cos(2 * x)};
      },
      {{"alpha", a}}, kHalfPi);
}

DeformationSpec sinh2(double a) {
  return DeformationSpec(
      [a](double x) {
        return Jet{a * std::sinh(x) * std::sinh(x), a * std::sinh(2 * x), 2 * a * std::cosh(2 * x)};
      },
      {{"alpha", a}}, kReal);
}

DeformationSpec linear(double a) {
  return DeformationSpec([a](double x) { return Jet{a * x, a, 0.0}; }, {{"alpha", a}},
                         Interval{0.0, kInf, true, false});
}

}  // namespace

TEST_CASE("ambiguity coefficients") {
  auto c = ambiguity_coefficients(0.5, 0.5);
  CHECK(c.rho == 0.0);
  CHECK(c.sigma == 0.0);
  c = ambiguity_coefficients(0, 0);
  CHECK(c.rho == 0.5);
  CHECK(c.sigma == 0.25);
  c = ambiguity_coefficients(1, 1);
  CHECK(c.rho == -0.5);
  CHECK(c.sigma == 0.25);
  for (double xi : {-1.0, 0.2, 0.7, 3.0}) CHECK(ambiguity_coefficients(xi, 1 - xi).rho == 0.0);
  CHECK(AmbiguityParams{0.3, 0.4}.eta() == doctest::Approx(1.3));
}

TEST_CASE("f and mass profile") {
  for (double x : {-1.2, 0.0, 0.4}) CHECK(eval_f(sin2(0.0), x) == 1.0);
  CHECK(eval_f(sin2(0.5), pi / 2) == doctest::Approx(1.5));
  CHECK(eval_f(sinh2(0.25), 0.0) == 1.0);

  CHECK(mass_profile(DeformationSpec::identity(kReal), 2.0) == 1.0);
  CHECK(mass_profile(sin2(0.5), pi / 2) == doctest::Approx(1 / 2.25));
  CHECK(mass_profile(linear(1.0), 3.0) == doctest::Approx(1.0 / 16));

  const DeformationSpec s = sin2(-0.7);
  for (double x = -1.5; x <= 1.5; x += 0.1) {
    const double f = eval_f(s, x);
    CHECK(mass_profile(s, x) * f * f == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("f outside the domain") {
  CHECK_THROWS_AS(eval_f(sin2(0.5), 2.0), DomainError);
  CHECK_THROWS_AS(eval_f(linear(1.0), -1.0), DomainError);
}

TEST_CASE("nonpositive f has no mass profile") {
  CHECK_THROWS_AS(mass_profile(linear(-1.0), 2.0), PositivityError);
}

TEST_CASE("ordering correction") {
  const DeformationSpec id = DeformationSpec::identity(kReal);
  for (double x : {-3.0, 0.0, 5.0}) CHECK(v_tilde_generic(id, 0.3, 0.7, x) == 0.0);

  const double a = 0.6, b = 0.2;
  const DeformationSpec shifted(
      [=](double x) { return Jet{a * x * x + 2 * b * x, 2 * a * x + 2 * b, 2 * a}; },
      {{"alpha", a}, {"beta", b}}, kReal);
  const DeformationSpec eckart(
      [a](double x) {
        const double e = std::exp(-2 * x);
        return Jet{a * (1 - e) / 2, a * e, -2 * a * e};
      },
      {{"alpha", a}}, Interval{0.0, kInf, true, false});
  for (auto [xi, zeta] : {std::pair{0.0, 0.0}, {1.0, 1.0}, {0.3, -0.4}, {0.5, 0.5}}) {
    const auto [rho, sigma] = ambiguity_coefficients(xi, zeta);
    for (double x : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
      const double closed = 2 * (rho + 2 * sigma) * a * x * (a * x + 2 * b) + 2 * rho * a + 4 * sigma * b * b;
      CHECK(v_tilde_generic(shifted, rho, sigma, x) == doctest::Approx(closed).epsilon(1e-13));
      if (x > 0) {
        const double e = (rho + sigma) * a * a * std::exp(-4 * x) - rho * a * (2 + a) * std::exp(-2 * x);
        CHECK(v_tilde_generic(eckart, rho, sigma, x) == doctest::Approx(e).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("catalog closed forms of the correction") {
  for (const ModelDescriptor& d : list_models()) {
    if (!d.active) continue;
    const PotentialModel& m = *d.model;
    const ParamMap p = resolve_parameters(m, {});
    const DeformationSpec f = model_deformation(m, p);
    const AmbiguityParams amb{0.2, -0.6};
    for (double x : verification_grid(m.domain, 200, 1e-3, 3.0))
      CHECK(v_tilde(m, p, amb, x) == doctest::Approx(v_tilde_generic(f, ambiguity_coefficients(amb), x))
                                         .epsilon(1e-10)
                                         .scale(1.0));
  }
}

TEST_CASE("recovering the initial potential") {
  const EffectivePotentialSpec quadratic{[](double x) { return x * x; }, {}};
  const RecoveredPotential plain =
      recover_initial_potential(quadratic, DeformationSpec::identity(kReal), {0.2, 0.3}, 1.5);
  CHECK(plain.value == 2.25);

  const PotentialModel& coulomb = find_model("coulomb");
  const ParamMap p = resolve_parameters(coulomb, {{"alpha", 0.3}});
  const DeformationSpec f = model_deformation(coulomb, p);
  const EffectivePotentialSpec veff{[&](double x) { return coulomb.v_eff(p, x); }, {{"e2", 1}, {"l", 0}}};
  const AmbiguityParams amb{0.1, 0.2};
  const double sigma = ambiguity_coefficients(amb).sigma;
  for (double x : {0.1, 1.0, 7.0}) {
    const RecoveredPotential r = recover_initial_potential(veff, f, amb, x);
    CHECK(r.value == doctest::Approx(coulomb.v_eff(p, x) - sigma * 0.09).epsilon(1e-13));
    CHECK(r.value + v_tilde_generic(f, ambiguity_coefficients(amb), x) ==
          doctest::Approx(coulomb.v_eff(p, x)).epsilon(1e-14));
  }
  const RecoveredPotential r = recover_initial_potential(veff, f, amb, 1.0);
  bool has_alpha = false, has_xi = false;
  for (const NamedValue& v : r.provenance) {
    has_alpha |= v.name == "alpha";
    has_xi |= v.name == "xi";
  }
  CHECK(has_alpha);
  CHECK(has_xi);

  const double a = 0.5;
  const auto [rho, sigma_box] = ambiguity_coefficients(0.0, 0.0);
  const EffectivePotentialSpec zero{[](double) { return 0.0; }, {}};
  const double expected = -(-(rho + sigma_box) * a * a + rho * a * (2 + a) + sigma_box * a * a);
  CHECK(recover_initial_potential(zero, sin2(a), {0.0, 0.0}, 0.0).value == doctest::Approx(expected));
}

TEST_CASE("positivity scan") {
  const DeformationSpec scarf(
      [](double x) { return Jet{1.5 * std::sin(x), 1.5 * std::cos(x), -1.5 * std::sin(x)}; },
      {{"alpha", 1.5}}, kHalfPi);
  const PositivityVerdict bad = check_positivity(scarf);
  CHECK_FALSE(bad.ok);
  CHECK(bad.x_violation < -1.2);
  CHECK(bad.f_violation == doctest::Approx(-0.5).epsilon(1e-3));

  CHECK(check_positivity(DeformationSpec::identity(kReal)).ok);
  CHECK(check_positivity(sin2(-0.9)).ok);

  DeformationSpec limits = linear(1.0);
  limits.f_limit_hi = -1.0;
  CHECK_FALSE(check_positivity(limits).ok);
  CHECK_THROWS(check_positivity(sin2(0.1), 1));
}
