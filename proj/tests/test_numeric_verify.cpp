#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "pdm/catalog.hpp"
#include "pdm/errors.hpp"
#include "pdm/numeric_verify.hpp"

using namespace pdm;
using std::numbers::pi;

namespace {

const Interval kReal{-kInf, kInf, false, false};

MappedProblem oscillator() {
  MappedProblem prob;
  prob.cmap = map_coordinate(DeformationSpec::identity(kReal));
  prob.v_eff = [](double x) { return x * x; };
  return prob;
}

MappedProblem model_problem(const char* id, const ParamMap& given) {
  const PotentialModel& m = find_model(id);
  return mapped_problem(m, resolve_parameters(m, given));
}

}  // namespace

TEST_CASE("identity map") {
  const CoordinateMap cm = map_coordinate(DeformationSpec::identity(kReal));
  CHECK_FALSE(cm.closed_form);
  CHECK_FALSE(std::isfinite(cm.u_range.lo));
  CHECK_FALSE(std::isfinite(cm.u_range.hi));
  const double u0 = cm.u_of_x(0.0);
  for (double x : {-30.0, -2.5, 0.7, 12.0}) CHECK(cm.u_of_x(x) - u0 == doctest::Approx(x).epsilon(1e-12));
}

TEST_CASE("box map: closed form against quadrature") {
  const PotentialModel& box = find_model("box");
  const ParamMap p = resolve_parameters(box, {{"alpha", 0.5}});
  const ClassBinding b = box.binding(p);
  const DeformationSpec f = model_deformation(box, p);
  const CoordinateMap closed = map_coordinate(f, closed_form_u(b.phi, b.primed));
  const CoordinateMap table = map_coordinate(f);
  CHECK(closed.closed_form);
  CHECK(closed.u_range.hi - closed.u_range.lo == doctest::Approx(pi / std::sqrt(1.5)).epsilon(1e-12));
  CHECK(table.u_range.hi - table.u_range.lo == doctest::Approx(pi / std::sqrt(1.5)).epsilon(1e-9));
  CHECK(closed.u_range.hi - closed.u_of_x(0.0) == doctest::Approx(1.28255).epsilon(1e-5));
  const double c0 = closed.u_of_x(0.0), t0 = table.u_of_x(0.0);
  for (double x : {-1.5, -0.8, 0.3, 1.2, 1.5}) {
    const double uc = closed.u_of_x(x) - c0;
    CHECK(table.u_of_x(x) - t0 == doctest::Approx(uc).epsilon(1e-10));
    CHECK(closed.x_of_u(closed.u_of_x(x)) == doctest::Approx(x).epsilon(1e-10));
    CHECK(table.x_of_u(table.u_of_x(x)) == doctest::Approx(x).epsilon(1e-10));
  }
  CHECK_THROWS_AS(closed.x_of_u(closed.u_range.hi + 1.0), DomainError);
}

TEST_CASE("class 3 has no closed-form map") {
  const PotentialModel& m = find_model("rosen_morse1");
  const ClassBinding b = m.binding(resolve_parameters(m, {}));
  if (b.phi.cls == SIClass::three) CHECK_FALSE(closed_form_u(b.phi, b.primed));
  const PotentialModel& scarf = find_model("scarf1");
  const ClassBinding s = scarf.binding(resolve_parameters(scarf, {}));
  if (s.phi.cls == SIClass::three) CHECK_FALSE(closed_form_u(s.phi, s.primed));
}

TEST_CASE("Sturm bisection") {
  TridiagonalSystem sys;
  sys.diag = {2.0, 2.0};
  sys.off = {-1.0};
  const DiscreteSpectrum d = eigen_solve(sys, 2);
  CHECK(d.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(sturm_count(sys, 0.5) == 0);
  CHECK(sturm_count(sys, 2.0) == 1);
  CHECK(sturm_count(sys, 3.5) == 2);
  CHECK_THROWS(eigen_solve(sys, 3));
  CHECK_THROWS(eigen_solve(sys, 0));
}

TEST_CASE("harmonic oscillator") {
  const MappedProblem prob = oscillator();
  const NumericSpectrum ns = numeric_spectrum(prob, 3, {2048, 1e-6, 3});
  for (int n = 0; n < 3; ++n) CHECK(ns.extrapolated[n] == doctest::Approx(2 * n + 1.0).epsilon(1e-8));
  const double u0 = prob.cmap.u_of_x(0.0);
  CHECK(ns.window.lo < u0 - 5.0);
  CHECK(ns.window.hi > u0 + 5.0);
}

TEST_CASE("box on a single grid") {
  const MappedProblem flat = model_problem("box", {{"alpha", 0.0}});
  const UWindow w = u_window(flat, 1.0);
  CHECK(w.hi - w.lo == doctest::Approx(pi));
  const DiscreteSpectrum d0 = eigen_solve(build_operator(flat, w, 4000), 1);
  CHECK(d0.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-6));

  const MappedProblem deformed = model_problem("box", {{"alpha", 0.5}});
  const DiscreteSpectrum d = eigen_solve(build_operator(deformed, u_window(deformed, 10.0), 4000), 3);
  for (int n = 0; n < 3; ++n) CHECK(d.eigenvalues[n] == doctest::Approx(1.5 * (n + 1) * (n + 1)).epsilon(1e-5));
  CHECK_THROWS(build_operator(deformed, u_window(deformed, 10.0), 32));
}

TEST_CASE("Richardson extrapolation") {
  for (const char* id : {"box", "trig_pt"}) {
    const PotentialModel& m = find_model(id);
    const ParamMap p = resolve_parameters(m, {});
    const ComparisonReport r = verify_model(m, p, 4);
    INFO(std::string(id));
    CHECK(r.pass);
    CHECK(r.max_rel_error <= 1e-7);
    const NumericSpectrum ns = numeric_spectrum(mapped_problem(m, p), 2);
    REQUIRE(ns.raw.size() == 3);
    CHECK(std::abs(ns.raw[2][1] - m.energy(p, 1)) < std::abs(ns.raw[0][1] - m.energy(p, 1)));
  }
}

TEST_CASE("finite spectra and counts") {
  const PotentialModel& coulomb = find_model("coulomb");
  const ParamMap cp = resolve_parameters(coulomb, {{"e2", 4}, {"l", 1}, {"alpha", 0.2}});
  const ComparisonReport c = verify_model(coulomb, cp, 10);
  CHECK(c.pass);
  REQUIRE(c.numeric_count);
  CHECK(*c.numeric_count == bound_state_count(coulomb, cp).value);

  const PotentialModel& morse = find_model("morse");
  const ParamMap mp = resolve_parameters(morse, {});
  const ComparisonReport r = verify_model(morse, mp, 10);
  CHECK(r.pass);
  REQUIRE(r.numeric_count);
  CHECK(*r.numeric_count == bound_state_count(morse, mp).value);
}

TEST_CASE("count disagreement is reported") {
  SpectrumResult analytic;
  analytic.count = BoundStateCount::zero();
  NumericSpectrum numeric;
  numeric.extrapolated = {-3.0};
  numeric.bound_below_threshold = 1;
  const ComparisonReport r = compare_spectra(analytic, numeric, 1e-6);
  CHECK(r.levels_ok);
  CHECK_FALSE(r.count_ok);
  CHECK_FALSE(r.pass);

  analytic.count = BoundStateCount::infinite();
  analytic.energies = {1.0, 4.0};
  numeric.extrapolated = {1.0, 4.1};
  const ComparisonReport bad = compare_spectra(analytic, numeric, 1e-6);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_rel_error == doctest::Approx(0.025));
}

TEST_CASE("truncation does not move the levels") {
  const MappedProblem prob = oscillator();
  const UWindow w25 = u_window(prob, 3.0, 25.0), w35 = u_window(prob, 3.0, 35.0);
  CHECK(w35.hi - w35.lo > w25.hi - w25.lo);
  const double h = (w25.hi - w25.lo) / 4096;
  const int N35 = static_cast<int>(std::lround((w35.hi - w35.lo) / h));
  const auto a = eigen_solve(build_operator(prob, w25, 4096), 2).eigenvalues;
  const auto b = eigen_solve(build_operator(prob, w35, N35), 2).eigenvalues;
  for (int n = 0; n < 2; ++n) CHECK(a[n] == doctest::Approx(b[n]).epsilon(1e-9));
}

TEST_CASE("eigen residual of a smooth state") {
  const PotentialModel& box = find_model("box");
  const ParamMap p = resolve_parameters(box, {});
  const SIParameterTrack t = model_track(box, p, 2);
  const MappedProblem prob = mapped_problem(box, p);
  for (int n = 0; n < 2; ++n) {
    const Wavefunction psi(t, n);
    CHECK(eigen_residual(prob, psi, box.energy(p, n)) <= 1e-5);
    CHECK(eigen_residual(prob, psi, box.energy(p, n) + 0.5) > 0.1);
  }
}
