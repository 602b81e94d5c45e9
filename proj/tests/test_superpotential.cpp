#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdm/catalog.hpp"
#include "pdm/errors.hpp"
#include "pdm/superpotential.hpp"

using namespace pdm;
using std::numbers::pi;

namespace {

PhiSpec tan_phi() {
  PhiSpec s;
  s.cls = SIClass::one;
  s.k = {1, 0, 1, 0};
  s.phi = [](double x) { return std::tan(x); };
  s.domain = {-pi / 2, pi / 2, false, false};
  s.name = "tan x";
  return s;
}

PhiSpec tanh_phi() {
  PhiSpec s;
  s.cls = SIClass::one;
  s.k = {-1, 0, 1, 0};
  s.phi = [](double x) { return std::tanh(x); };
  s.domain = {-kInf, kInf, false, false};
  return s;
}

PhiSpec linear_phi() {
  PhiSpec s;
  s.cls = SIClass::two;
  s.k = {0, 1, 0, 0};
  s.phi = [](double x) { return x; };
  s.domain = {0.0, kInf, false, false};
  return s;
}

}  // namespace

TEST_CASE("class indices") {
  for (int i = 1; i <= 3; ++i) CHECK(class_index(class_from_index(i)) == i);
  CHECK_THROWS(class_from_index(4));
}

TEST_CASE("base function and closure") {
  const PhiSpec t = tan_phi();
  CHECK(eval_phi(t, 0.0) == 0.0);
  CHECK(eval_phi_prime(t, pi / 4) == doctest::Approx(2.0));
  for (double x : {0.5, 1.0, 2.0, 7.0}) CHECK(eval_phi_prime(linear_phi(), x) == 1.0);
  CHECK_THROWS_AS(eval_phi(t, 2.0), DomainError);
}

TEST_CASE("superpotential values") {
  const PhiSpec t = tan_phi();
  CHECK(eval_W(SIClass::one, {2, 0}, t, pi / 4) == doctest::Approx(2.0));
  for (double x : {-1.0, 0.0, 0.3}) {
    CHECK(eval_W(SIClass::one, {0, 0}, t, x) == 0.0);
    CHECK(eval_W_prime(SIClass::one, {0, 0}, t, x) == 0.0);
  }
  CHECK(eval_W(SIClass::two, {1, -1}, linear_phi(), 2.0) == doctest::Approx(1.5));

  CHECK(eval_W_prime(SIClass::one, {1, 0}, t, 0.0) == doctest::Approx(1.0));
  CHECK(eval_W_prime(SIClass::two, {1, -1}, linear_phi(), 2.0) == doctest::Approx(1.25));
}

TEST_CASE("class 2 pole and class 3 radicand") {
  PhiSpec lin = linear_phi();
  lin.domain = {-1.0, 1.0, true, true};
  CHECK_THROWS_AS(eval_W(SIClass::two, {1, 1}, lin, 0.0), DomainError);
  CHECK_THROWS_AS(W_of_phi(SIClass::three, {-1, 1, 0, 0}, {1, 0}, 2.0), DomainError);
}

TEST_CASE("derivatives agree with finite differences") {
  const PhiSpec t = tan_phi();
  const LambdaSet lam{1.7, -0.4};
  for (double x : {-1.0, -0.2, 0.4, 1.1}) {
    const double h = 1e-6;
    const double fd = (eval_W(SIClass::one, lam, t, x + h) - eval_W(SIClass::one, lam, t, x - h)) / (2 * h);
    CHECK(eval_W_prime(SIClass::one, lam, t, x) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("deforming functions") {
  for (double a : {0.5, -0.3}) {
    const DeformationSpec box = build_deforming(tan_phi(), {a, 0, 0, 0}, {{"alpha", a}});
    const DeformationSpec hyp = build_deforming(tanh_phi(), {a, 0, 0, 0}, {{"alpha", a}});
    for (double x : {-1.2, -0.4, 0.0, 0.9}) {
      const double s = std::sin(x), sh = std::sinh(x);
      CHECK(box.g(x).value == doctest::Approx(a * s * s).epsilon(1e-13));
      CHECK(box.g(x).first == doctest::Approx(a * std::sin(2 * x)).epsilon(1e-12));
      CHECK(box.g(x).second == doctest::Approx(2 * a * std::cos(2 * x)).epsilon(1e-12));
      CHECK(hyp.g(x).value == doctest::Approx(a * sh * sh).epsilon(1e-13));
      CHECK(hyp.g(x).second == doctest::Approx(2 * a * std::cosh(2 * x)).epsilon(1e-12));
    }
  }
  const DeformationSpec zero = build_deforming(tan_phi(), {}, {});
  for (double x : {-1.0, 0.5}) CHECK(zero.g(x).value == 0.0);
}

TEST_CASE("catalog base functions obey their closure") {
  for (const ModelDescriptor& d : list_models()) {
    if (!d.active) continue;
    const PotentialModel& m = *d.model;
    const ParamMap p = resolve_parameters(m, {});
    const ClassBinding b = m.binding(p);
    for (double x : verification_grid(b.phi.domain, 1000, 1e-3, 5.0)) {
      const double phi = eval_phi(b.phi, x);
      const double rhs = closure_rhs(b.phi.cls, b.phi.k, phi);
      CHECK(eval_phi_prime(b.phi, x) == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("class deforming function matches the catalog") {
  for (const ModelDescriptor& d : list_models()) {
    if (!d.active) continue;
    const PotentialModel& m = *d.model;
    const ParamMap p = resolve_parameters(m, {});
    const ClassBinding b = m.binding(p);
    const DeformationSpec built = build_deforming(b.phi, b.primed);
    const auto g = m.g(p);
    for (double x : verification_grid(m.domain, 300, 1e-3, 5.0)) {
      INFO(m.id << " x=" << x);
      CHECK(built.g(x).value == doctest::Approx(g(x).value).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("g W' stays in the class basis") {
  for (const char* id : {"box", "osc3d", "scarf1", "rosen_morse1"}) {
    const PotentialModel& m = find_model(id);
    const ParamMap p = resolve_parameters(m, {});
    const ClassBinding b = m.binding(p);
    const DeformationSpec g = build_deforming(b.phi, b.primed);
    const LambdaSet lam{1.3, 0.7};
    const BasisExpansion e = expand_g_W_prime(b.phi.cls, b.phi.k, b.primed, lam);
    const BasisExpansion all = expand_f_W_prime(b.phi.cls, b.phi.k, b.primed, lam);
    for (double x : verification_grid(m.domain, 50, 1e-2, 3.0)) {
      INFO(id << " x=" << x);
      const double phi = eval_phi(b.phi, x);
      const double wp = eval_W_prime(b.phi.cls, lam, b.phi, x);
      CHECK(e.evaluate(b.phi.k, phi) == doctest::Approx(g.g(x).value * wp).epsilon(1e-10).scale(1.0));
      CHECK(all.evaluate(b.phi.k, phi) == doctest::Approx(g.f(x).value * wp).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("basis arithmetic") {
  BasisExpansion a{SIClass::one, {1, 2, 3}};
  const BasisExpansion b{SIClass::one, {0.5, 0.5, 0.5}};
  a += b;
  CHECK(a.c[2] == 3.5);
  a -= b * 2.0;
  CHECK(a.c[0] == 0.5);
  const ClassConstants k{1, 0, 1, 0};
  CHECK(expand_W_squared(SIClass::one, {2, 1}).evaluate(k, 3.0) == doctest::Approx(49.0));
  CHECK(expand_constant(SIClass::three, {1, 2, 0, 0}, 4.0).evaluate({1, 2, 0, 0}, 0.7) ==
        doctest::Approx(4.0));
}
