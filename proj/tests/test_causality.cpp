#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lorentz/causality.hpp"
#include "oracles.hpp"

using namespace lorentz;

TEST_CASE("minkowski null geodesic is the straight line (s, s)") {
  IntegrationOptions opt;
  opt.s_max = 10.0;
  const GeodesicPath path = integrate_geodesic(minkowski(1), Point{0.0, 0.0}, Vec{{1.0, 1.0}}, opt);
  REQUIRE(path.samples.size() >= 2);
  CHECK(path.termination == Termination::ParameterLimit);
  for (const PathSample& s : path.samples) {
    CHECK(std::abs(s.point[0] - s.s) <= 1e-10);
    CHECK(std::abs(s.point[1] - s.s) <= 1e-10);
  }
  CHECK(path.samples.back().s == doctest::Approx(10.0));
  CHECK(path.initial_norm == 0.0);
}

TEST_CASE("FLRW null rays are straight in the conformal chart") {
  const double H = 1.0;
  const ChartedMetric g = flrw_bounce(H, 1);
  const Point p{-0.4, 0.3};
  const Vec v = null_tangent(g, p, Vec{{1.0}}, Direction::Future);
  IntegrationOptions opt;
  opt.s_max = 3.0;
  opt.tol = 1e-11;
  const GeodesicPath path = integrate_geodesic(g, p, v, opt);
  const double eta0 = oracle::conformal_time(H, p[0]);
  for (const PathSample& s : path.samples) {
    const double eta = oracle::conformal_time(H, s.point[0]);
    CHECK(std::abs((s.point[1] - p[1]) - (eta - eta0)) <= 1e-8);
  }
}

TEST_CASE("Kruskal radial null rays are 45 degree lines") {
  const ChartedMetric g = kruskal_metric(1.0);
  const Point p{0.1, 0.5};
  for (double dir : {-1.0, 1.0}) {
    IntegrationOptions opt;
    opt.s_max = 5.0;
    const GeodesicPath path = integrate_geodesic(g, p, Vec{{1.0, dir}}, opt);
    for (const PathSample& s : path.samples) {
      CHECK(std::abs((s.point[1] - p[1]) - dir * (s.point[0] - p[0])) <= 1e-8);
    }
  }
}

TEST_CASE("spacelike initial tangent is rejected") {
  CHECK_THROWS_AS(integrate_geodesic(minkowski(1), Point{0.0, 0.0}, Vec{{0.0, 1.0}}), PreconditionError);
}

TEST_CASE("affine parameter strictly increases and drift stays small") {
  const ChartedMetric g = de_sitter_patch(1.0, -1.5, 2);
  IntegrationOptions opt;
  opt.s_max = 0.5;
  const Point p{0.0, 0.0, 0.0};
  const Vec v = null_tangent(g, p, Vec{{0.6, 0.8}}, Direction::Future);
  const GeodesicPath path = integrate_geodesic(g, p, v, opt);
  for (std::size_t i = 1; i < path.samples.size(); ++i) CHECK(path.samples[i].s > path.samples[i - 1].s);
  CHECK(path.relative_drift <= 1e-8);
}

TEST_CASE("null_tangent solves g(v, v) = 0 with the requested time sense") {
  const ChartedMetric g = flrw_bounce(0.5, 1);
  const Point p{1.0, 0.0};
  for (Direction d : {Direction::Future, Direction::Past}) {
    const Vec v = null_tangent(g, p, Vec{{1.0}}, d);
    CHECK(std::abs(inner(g, p, v, v)) <= 1e-12);
    CHECK((v[0] > 0) == (d == Direction::Future));
  }
}

TEST_CASE("boundary_hit finds the crossing of a slab wall") {
  const CylinderDomain slab = ball_cylinder(1.0, 1, "slab");
  IntegrationOptions opt;
  opt.s_max = 3.0;
  const GeodesicPath path = integrate_geodesic(minkowski(1), Point{0.0, 0.0}, Vec{{1.0, 1.0}}, opt);
  const auto hit = boundary_hit(path, slab);
  REQUIRE(hit.has_value());
  CHECK(hit->s == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hit->point[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(max_boundary_function(path, slab) == doctest::Approx(2.0).epsilon(1e-9));

  const GeodesicPath outside = integrate_geodesic(minkowski(1), Point{0.0, 2.0}, Vec{{1.0, 1.0}}, opt);
  CHECK_THROWS_AS(boundary_hit(outside, slab), PreconditionError);
}

TEST_CASE("slab negative control: rays from a small ball reach the walls") {
  ScanOptions opt;
  opt.points = 50;
  opt.integration.s_max = 5.0;
  const ReachabilityReport r = reachability_scan(minkowski(1), ball_cylinder(1.0, 1, "slab"),
                                                 ball_region(Point{0.0, 0.0}, 0.3, "ball"), Direction::Future, opt);
  CHECK_FALSE(r.confined());
  CHECK(r.rays_hit_boundary > 0);
  CHECK(r.min_boundary_clearance > 0);
  CHECK(r.hitting_path.has_value());
}

TEST_CASE("Kruskal exterior negative control: outgoing rays reach r = r0") {
  const double rs = 1.0, r0 = 1.5;
  const KruskalCoordinates k = schwarzschild_to_kruskal(0.0, 1.3, rs);
  ScanOptions opt;
  opt.points = 40;
  opt.integration.s_max = 100.0;
  const ReachabilityReport r = reachability_scan(kruskal_metric(rs), schwarzschild_cylinder(rs, r0),
                                                 ball_region(Point{k.T, k.R}, 0.02, "exterior"),
                                                 Direction::Future, opt);
  CHECK(r.rays_hit_boundary > 0);
}

TEST_CASE("hyperboloid diamond: small scan records no hits") {
  ScanOptions opt;
  opt.points = 40;
  opt.integration.s_max = 1e6;
  opt.integration.tol = 1e-11;
  opt.integration.stop_when = [](const Point& p, const Vec&) { return std::abs(p[0]) >= 20.0; };
  const CylinderDomain cyl = hyperboloid_cylinder(2.0, 1);
  for (Direction d : {Direction::Future, Direction::Past}) {
    const ReachabilityReport r = reachability_scan(minkowski(1), cyl, diamond_region(2.0, 1), d, opt);
    CHECK(r.confined());
    CHECK(r.min_boundary_clearance < 0);
    CHECK(r.rays_total == static_cast<int>(r.rays.size()));
    CHECK(r.max_relative_drift <= 1e-8);
  }
}

TEST_CASE("Kruskal confinement, small scan") {
  ScanOptions opt;
  opt.points = 30;
  opt.integration.tol = 1e-11;
  const KruskalConfinementReport k = kruskal_confinement_check(1.0, 1.5, opt);
  CHECK(k.confined());
  CHECK(k.black_hole.rays_total > 0);
  CHECK(k.white_hole.rays_total > 0);
}

TEST_CASE("perturbation invariance of the reachability verdict") {
  const PerturbationSpec spec{minkowski(1), de_sitter_patch(1.0, -1.5, 1), bump_cutoff(Point{0.0, 0.0}, 0.2, 0.5),
                              diamond_region(2.0, 1)};
  ScanOptions opt;
  opt.points = 20;
  opt.integration.s_max = 1e6;
  opt.integration.stop_when = [](const Point& p, const Vec&) { return std::abs(p[0]) >= 20.0; };
  const InvarianceVerdict v =
      perturbation_reachability_invariance(spec, hyperboloid_cylinder(2.0, 1), Direction::Future, opt);
  CHECK(v.passed());
  CHECK(v.ray_mismatches == 0);
  CHECK(v.base.rays_total == v.perturbed.rays_total);
}

TEST_CASE("termination names") {
  CHECK(to_string(Termination::BoundaryHit) != to_string(Termination::ParameterLimit));
  CHECK(to_string(Direction::Future) != to_string(Direction::Past));
}
