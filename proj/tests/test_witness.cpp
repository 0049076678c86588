#include <doctest.h>

#include <cmath>

#include "lorentz/witness.hpp"

using namespace lorentz;

namespace {

SampleGrid box(double half, int per_axis, int dim = 2) {
  Vec lo = Vec::Constant(dim, -half), hi = Vec::Constant(dim, half);
  return SampleGrid{Point(lo), Point(hi), std::vector<int>(dim, per_axis)};
}

PerturbationSpec minkowski_spec(double Rc) {
  return PerturbationSpec{minkowski(1), de_sitter_patch(Rc, -1.5, 1), bump_cutoff(Point{0.0, 0.0}, 0.2, 0.5),
                          diamond_region(2.0, 1)};
}

}  // namespace

TEST_CASE("sample grid decoding: axis 0 varies slowest") {
  const SampleGrid g{Point{0.0, 0.0}, Point{1.0, 2.0}, {3, 5}};
  CHECK(g.size() == 15);
  CHECK(g.spacing(0) == doctest::Approx(0.5));
  CHECK(g.spacing(1) == doctest::Approx(0.5));
  CHECK(g.node(0)[0] == 0.0);
  CHECK(g.node(1)[1] == doctest::Approx(0.5));
  CHECK(g.node(5)[0] == doctest::Approx(0.5));
  CHECK(g.node(14)[1] == doctest::Approx(2.0));
}

TEST_CASE("curvature scan of de Sitter is constant with vanishing gradient") {
  const CurvatureScan s = curvature_scan(de_sitter_patch(1.0, -1.5, 1), box(0.4, 9));
  REQUIRE(s.values.size() == 81);
  CHECK(s.points.size() == s.values.size());
  CHECK(s.gradient_norms.size() == s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    CHECK(s.values[i] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(s.gradient_norms[i] <= 1e-4);
  }
}

TEST_CASE("Minkowski base: verdict true with c = 2/R_c^2") {
  const double Rc = 1.0;
  const PerturbationSpec spec = minkowski_spec(Rc);
  const WitnessVerdict v = non_isometry_witness(spec.base, perturbed_metric(spec), spec.cutoff, box(0.5, 41));
  CHECK(v.verdict);
  CHECK(v.status == WitnessStatus::NonIsometric);
  CHECK(v.c == doctest::Approx(2 / (Rc * Rc)).epsilon(1e-5));
  CHECK(v.constancy_residual <= 1e-4);
  CHECK(v.band_points == 0);
  CHECK(std::isinf(v.regularity_margin));
  CHECK(v.perturbed_field_finite);
  CHECK(v.core_points > 0);
  for (double s : v.base.values) CHECK(std::abs(s) <= 1e-8);
}

TEST_CASE("unperturbed metric is not applicable") {
  const PerturbationSpec spec = minkowski_spec(1.0);
  const WitnessVerdict v = non_isometry_witness(spec.base, spec.base, spec.cutoff, box(0.5, 21));
  CHECK(v.status == WitnessStatus::NotApplicable);
  CHECK_FALSE(v.verdict);
}

TEST_CASE("FLRW base with R_c = 1/H is inconclusive") {
  // S_g = 2H^2 everywhere, equal to the patch value, so c is a critical value.
  const double H = 1.0;
  const PerturbationSpec spec{flrw_bounce(H, 1), de_sitter_patch(1.0 / H, -1.5, 1),
                              bump_cutoff(Point{0.0, 0.0}, 0.2, 0.5), diamond_region(2.0, 1)};
  const WitnessVerdict v = non_isometry_witness(spec.base, perturbed_metric(spec), spec.cutoff, box(0.5, 21));
  CHECK_FALSE(v.verdict);
  CHECK(v.status == WitnessStatus::Inconclusive);
  CHECK(v.band_points > 0);
  CHECK(v.regularity_margin <= 1e-3);
}

TEST_CASE("verdict rule: residual within tol_c and margin above eps0") {
  const PerturbationSpec spec = minkowski_spec(1.0);
  const ChartedMetric gp = perturbed_metric(spec);
  WitnessOptions strict;
  strict.tol_c = 1e-16;
  const WitnessVerdict v = non_isometry_witness(spec.base, gp, spec.cutoff, box(0.5, 21), strict);
  CHECK(v.verdict == (v.constancy_residual <= strict.tol_c));
}

TEST_CASE("grid missing the core raises") {
  const PerturbationSpec spec = minkowski_spec(1.0);
  const SampleGrid far{Point{1.0, 1.0}, Point{1.2, 1.2}, {5, 5}};
  CHECK_THROWS_AS(non_isometry_witness(spec.base, perturbed_metric(spec), spec.cutoff, far), GridError);
}

TEST_CASE("status names") {
  CHECK(to_string(WitnessStatus::NonIsometric) != to_string(WitnessStatus::Inconclusive));
  CHECK(to_string(WitnessStatus::NotApplicable) != to_string(WitnessStatus::Inconclusive));
}
