#include <doctest.h>

#include <cmath>

#include "lorentz/geometry.hpp"
#include "lorentz/spacetimes.hpp"
#include "oracles.hpp"

using namespace lorentz;

namespace {

ChartedMetric constant_metric(const Mat& m, std::string label) {
  MetricDefinition def;
  def.label = std::move(label);
  for (int i = 0; i < m.rows(); ++i) def.coord_names.push_back("x" + std::to_string(i));
  def.components = [m](const Point&) { return m; };
  def.orientation = [d = static_cast<int>(m.rows())](const Point&) {
    Vec v = Vec::Zero(d);
    v[0] = 1;
    return v;
  };
  return ChartedMetric(def);
}

}  // namespace

TEST_CASE("point construction rejects non-finite coordinates and bad sizes") {
  CHECK_THROWS_AS(Point({0.0, NAN}), DomainError);
  CHECK_THROWS_AS(Point(Vec::Zero(0)), DomainError);
  const Point p{1.0, 2.0};
  CHECK(p.shifted(1, 0.5)[1] == doctest::Approx(2.5));
  CHECK(p.dim() == 2);
}

TEST_CASE("minkowski components are diag(-1, 1, ..., 1)") {
  for (int n = 1; n <= 3; ++n) {
    const Mat g = metric_at(minkowski(n), Point(Vec::Zero(n + 1)));
    Mat expected = Mat::Identity(n + 1, n + 1);
    expected(0, 0) = -1;
    CHECK((g - expected).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("de Sitter patch at tau = 2, pole 0, R_c = 1 is diag(-1/4, 1/4)") {
  const Mat g = metric_at(de_sitter_patch(1.0, 0.0, 1), Point{2.0, 0.3});
  CHECK(g(0, 0) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(g(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g(0, 1) == 0.0);
  CHECK_THROWS_AS(metric_at(de_sitter_patch(1.0, 0.0, 1), Point{0.0, 0.0}), DomainError);
}

TEST_CASE("inverse of an off-diagonal Lorentzian matrix") {
  Mat m(2, 2);
  m << -1, 0.3, 0.3, 1;
  const ChartedMetric g = constant_metric(m, "skew");
  const Mat inv = inverse_metric_at(g, Point{0.0, 0.0});
  const double det = -1 - 0.09;
  CHECK(inv(0, 0) == doctest::Approx(1 / det));
  CHECK(inv(0, 1) == doctest::Approx(-0.3 / det));
  CHECK(inv(1, 1) == doctest::Approx(-1 / det));
  CHECK((m * inv - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("signature checks reject Riemannian and degenerate matrices") {
  CHECK(is_lorentzian(metric_at(minkowski(2), Point{0.0, 0.0, 0.0})));
  CHECK_FALSE(is_lorentzian(Mat::Identity(2, 2)));
  Mat degenerate(2, 2);
  degenerate << -1, 0, 0, 0;
  CHECK_FALSE(is_lorentzian(degenerate));
  Mat two_negative = -Mat::Identity(3, 3);
  two_negative(2, 2) = 1;
  CHECK_FALSE(is_lorentzian(two_negative));
  CHECK_THROWS_AS(metric_at(constant_metric(Mat::Identity(2, 2), "euclid"), Point{0.0, 0.0}), SignatureError);
  Mat asym(2, 2);
  asym << -1, 0.1, 0.2, 1;
  CHECK_THROWS_AS(metric_at(constant_metric(asym, "asym"), Point{0.0, 0.0}), SignatureError);
}

TEST_CASE("causal classes in 1+1 Minkowski") {
  const ChartedMetric g = minkowski(1);
  const Point o{0.0, 0.0};
  auto cls = [&](double a, double b) { return causal_class(g, Tangent{o, Vec{{a, b}}}); };
  CHECK(cls(1, 0) == CausalClass{CausalKind::Timelike, TimeSense::Future});
  CHECK(cls(-1, 0) == CausalClass{CausalKind::Timelike, TimeSense::Past});
  CHECK(cls(1, 1) == CausalClass{CausalKind::Null, TimeSense::Future});
  CHECK(cls(-1, 1) == CausalClass{CausalKind::Null, TimeSense::Past});
  CHECK(cls(0, 1) == CausalClass{CausalKind::Spacelike, TimeSense::None});
  CHECK(cls(0, 0).kind == CausalKind::Zero);
  CHECK_FALSE(cls(0, 1).causal());
  CHECK(cls(1, 1).causal());
}

TEST_CASE("FLRW christoffel symbols match the closed form") {
  const double H = 0.7;
  const ChartedMetric g = flrw_bounce(H, 1);
  for (double t : {-1.3, 0.0, 0.4, 2.1}) {
    const Christoffel G = christoffel(g, Point{t, 0.2});
    CHECK(G(0, 1, 1) == doctest::Approx(oracle::flrw_gamma_t_xx(H, t)).epsilon(1e-9));
    CHECK(G(1, 0, 1) == doctest::Approx(oracle::flrw_gamma_x_tx(H, t)).epsilon(1e-9));
    CHECK(G(1, 1, 0) == doctest::Approx(G(1, 0, 1)));
    CHECK(std::abs(G(0, 0, 0)) <= 1e-10);
  }
}

TEST_CASE("scalar curvature of catalog metrics") {
  CHECK(std::abs(scalar_curvature(minkowski(3), Point{0.1, 0.2, 0.3, 0.4})) <= 1e-8);
  const double H = 1.3;
  CHECK(scalar_curvature(flrw_bounce(H, 1), Point{0.5, 0.0}) == doctest::Approx(2 * H * H).epsilon(1e-8));
  const double Rc = 0.8, pole = -1.5;
  for (double tau : {-0.5, 0.0, 0.7}) {
    const double s = scalar_curvature(de_sitter_patch(Rc, pole, 1), Point{tau, 0.1});
    CHECK(s == doctest::Approx(oracle::de_sitter_scalar(Rc, pole, tau)).epsilon(1e-7));
    CHECK(s == doctest::Approx(2 / (Rc * Rc)).epsilon(1e-7));
  }
}

TEST_CASE("de Sitter 1+n has S = n(n+1)/R_c^2") {
  for (int n = 2; n <= 3; ++n) {
    Vec p = Vec::Zero(n + 1);
    p[0] = 0.2;
    const double s = scalar_curvature(de_sitter_patch(1.0, -1.5, n), Point(p));
    CHECK(s == doctest::Approx(n * (n + 1.0)).epsilon(1e-6));
  }
}

TEST_CASE("Riemann symmetries of FLRW in 1+2") {
  const Riemann R = riemann(flrw_bounce(1.0, 2), Point{0.3, 0.1, -0.2});
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 3; ++s)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) CHECK(R(r, s, m, n) == doctest::Approx(-R(r, s, n, m)).epsilon(1e-9));
}

TEST_CASE("pullback of Minkowski by the strip chart") {
  const double a = 2.0;
  const ChartedMetric g = pullback_metric(hyperboloid_strip_chart(a), minkowski(1), "strip", {"t", "xi"});
  for (double t : {-1.0, 0.0, 0.8}) {
    for (double xi : {-0.9, 0.0, 0.5}) {
      const Mat m = metric_at(g, Point{t, xi});
      const double b = oracle::half_width(a, t);
      const double bp = oracle::half_width_rate(a, t);
      CHECK(m(0, 0) == doctest::Approx(xi * xi * bp * bp - 1).epsilon(1e-12));
      CHECK(m(0, 1) == doctest::Approx(xi * b * bp).epsilon(1e-12));
      CHECK(m(1, 1) == doctest::Approx(b * b).epsilon(1e-12));
    }
  }
}

TEST_CASE("pullback rejects a singular jacobian") {
  ChartMap collapse;
  collapse.forward = [](const Point& y) { return Point{y[0], 0.0}; };
  collapse.jacobian = [](const Point&) {
    Mat j(2, 2);
    j << 1, 0, 0, 0;
    return j;
  };
  const ChartedMetric g = pullback_metric(collapse, minkowski(1), "collapsed", {"t", "y"});
  CHECK_THROWS_AS(metric_at(g, Point{0.0, 0.0}), ChartError);
}

TEST_CASE("covector norms of boundary differentials") {
  const double a = 2.0;
  const CylinderDomain cyl = hyperboloid_cylinder(a, 1);
  const Point p{1.0, hyperboloid_half_width(a, 1.0)};
  CHECK(std::abs(cyl.f(p)) <= 1e-12);
  CHECK(covector_norm2(minkowski(1), p, *cyl.df(p)) == doctest::Approx(a * a).epsilon(1e-12));

  // dr in the Schwarzschild exterior has norm 1 - r_S/r.
  const double rs = 1.0, r0 = 1.5;
  Covector dr = Covector::Zero(4);
  dr[1] = 1;
  const double n2 = covector_norm2(schwarzschild_exterior(rs), Point{0.0, r0, 1.0, 0.5}, dr);
  CHECK(n2 == doctest::Approx(1 - rs / r0).epsilon(1e-14));
}

TEST_CASE("metric_derivatives: exact hook agrees with finite differences") {
  const ChartedMetric g = kruskal_metric(1.0);
  REQUIRE(g.has_exact_derivatives());
  MetricDefinition fd_def = g.definition();
  fd_def.derivatives = {};
  const ChartedMetric fd(fd_def);
  const Point p{0.2, 0.7};
  const Christoffel exact = christoffel(g, p);
  const Christoffel approx = christoffel(fd, p);
  for (int l = 0; l < 2; ++l)
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) CHECK(std::abs(exact(l, m, n) - approx(l, m, n)) <= 1e-6);
}

TEST_CASE("stencil near the chart edge raises") {
  const ChartedMetric g = schwarzschild_exterior(1.0);
  CHECK_THROWS_AS(christoffel(g, Point{0.0, 1.0 + 1e-4, 1.0, 0.0}), DomainError);
}
