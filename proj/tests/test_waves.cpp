#include <doctest.h>

#include <cmath>

#include "lorentz/waves.hpp"
#include "mms.hpp"
#include "oracles.hpp"

using namespace lorentz;

namespace {

// Right-moving pulse entering [0, L] from the left wall.
std::function<double(double)> left_pulse() { return smooth_pulse(0.6, 0.4); }

double pulse_value(double s) { return oracle::bump((s - 0.6) / 0.4); }

}  // namespace

TEST_CASE("grid construction respects the CFL bound") {
  const WaveGrid g = make_grid("ambient", 0.0, 2.0, -1.0, 1.0, 65, 1.0);
  CHECK(g.nx == 65);
  CHECK(g.dt() <= kCflSafety * g.dx() + 1e-15);
  CHECK(g.t(g.nt - 1) == doctest::Approx(2.0));
  const WaveGrid r = refine(g, 2);
  CHECK(r.nx == 257);
  CHECK(r.dx() == doctest::Approx(g.dx() / 4));
  CHECK(r.dt() == doctest::Approx(g.dt() / 4));
  CHECK_THROWS_AS(make_grid("tiny", 0.0, 1.0, 0.0, 1.0, 8, 1.0), GridError);
}

TEST_CASE("characteristic speed of catalog metrics") {
  CHECK(max_characteristic_speed(minkowski(1), 0, 1, 0, 1) == doctest::Approx(1.0));
  // cosh^2(t) dx^2: dx/dt = sech(t), largest at t = 0.
  CHECK(max_characteristic_speed(flrw_bounce(1.0, 1), -1, 1, 0, 1) == doctest::Approx(1.0));
  CHECK(max_characteristic_speed(flrw_bounce(1.0, 1), 1, 2, 0, 1) == doctest::Approx(1 / std::cosh(1.0)));
}

TEST_CASE("zero data gives an exactly zero field") {
  const WaveGrid grid = make_grid("ambient", 0.0, 1.0, 0.0, 1.0, 33, 1.0);
  const WaveField u = solve_wave(flrw_bounce(1.0, 1), grid, std::nullopt,
                                 DirichletData{[](double) { return 0.0; }, [](double) { return 0.0; }});
  CHECK(u.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("boundary data must vanish on the initial levels") {
  const WaveGrid grid = make_grid("ambient", 0.0, 1.0, 0.0, 1.0, 33, 1.0);
  CHECK_THROWS_AS(solve_ibvp(minkowski(1), grid, DirichletData{[](double) { return 1.0; }, {}}), DataError);
}

TEST_CASE("timestep beyond the CFL certificate is refused") {
  WaveGrid grid = make_grid("ambient", 0.0, 1.0, 0.0, 1.0, 33, 1.0);
  grid.nt = 5;
  CHECK_THROWS_AS(solve_ibvp(minkowski(1), grid, DirichletData{left_pulse(), {}}), StabilityError);
}

TEST_CASE("slab d'Alembert oracle converges at second order") {
  // Wide pulse (half width 0.8) entering at x = 0; L2 error over the slab.
  const ChartedMetric g = minkowski(1);
  auto wide = [](double s) { return oracle::bump((s - 1.0) / 0.8); };
  const WaveGrid base = make_grid("slab", 0.0, 3.6, 0.0, 4.1, 321, 1.0);
  std::vector<double> err;
  for (int l = 0; l < 3; ++l) {
    const WaveGrid grid = refine(base, l);
    const WaveField u = solve_ibvp(g, grid, DirichletData{smooth_pulse(1.0, 0.8), {}});
    double sum = 0.0;
    for (int n = 0; n < grid.nt; ++n)
      for (int j = 0; j < grid.nx; ++j) {
        const double ex = oracle::dalembert([&](double s) { return wide(-s); }, [](double) { return 0.0; },
                                            grid.t(n), grid.x(j));
        sum += std::pow(u.at(n, j) - ex, 2);
      }
    err.push_back(std::sqrt(sum * grid.dt() * grid.dx()));
  }
  CHECK(err[0] / err[1] >= 3.0);
  CHECK(err[0] / err[1] <= 5.0);
  CHECK(err[1] / err[2] >= 3.0);
  CHECK(err[1] / err[2] <= 5.0);
}

TEST_CASE("manufactured solution on the bounce metric converges at second order") {
  const std::vector<double> e = mms::errors(33, 3);
  CHECK(e[0] / e[1] >= 3.0);
  CHECK(e[0] / e[1] <= 5.0);
  CHECK(e[1] / e[2] >= 3.0);
  CHECK(e[1] / e[2] <= 5.0);
}

TEST_CASE("linearity of the solve and the Neumann trace") {
  const ChartedMetric g = pullback_metric(hyperboloid_strip_chart(2.0), minkowski(1), "strip", {"t", "xi"});
  const WaveGrid grid = make_grid("strip", -0.5, 2.0, -1.0, 1.0, 65, max_characteristic_speed(g, -0.5, 2.0, -1, 1));
  const auto p1 = smooth_pulse(0.5, 0.4);
  const auto p2 = smooth_pulse(0.9, 0.3);
  const BoundaryPair a = dn_map(g, grid, DirichletData{p1, p2});
  const BoundaryPair b = dn_map(g, grid, DirichletData{p2, p1});
  const BoundaryPair c = dn_map(g, grid, DirichletData{[&](double t) { return 2 * p1(t) + 3 * p2(t); },
                                                       [&](double t) { return 2 * p2(t) + 3 * p1(t); }});
  const double scale = sup_norm(c);
  for (std::size_t n = 0; n < c.left.values.size(); ++n) {
    CHECK(std::abs(c.left.values[n] - 2 * a.left.values[n] - 3 * b.left.values[n]) <= 1e-12 * scale);
    CHECK(std::abs(c.right.values[n] - 2 * a.right.values[n] - 3 * b.right.values[n]) <= 1e-12 * scale);
  }
}

TEST_CASE("Neumann trace of a right-moving wave is -p'(t)") {
  const ChartedMetric g = minkowski(1);
  std::vector<double> err;
  for (int l = 0; l < 2; ++l) {
    const WaveGrid grid = refine(make_grid("slab", 0.0, 2.0, 0.0, 2.5, 161, 1.0), l);
    const BoundaryTrace tr = neumann_trace(solve_ibvp(g, grid, DirichletData{left_pulse(), {}}), g, Side::Left);
    CHECK(tr.normalization_residual <= 1e-14);
    CHECK(tr.orthogonality_residual <= 1e-14);
    double e = 0.0;
    for (std::size_t n = 0; n < tr.times.size(); ++n) {
      const double t = tr.times[n], h = 1e-5;
      const double dp = (pulse_value(t + h) - pulse_value(t - h)) / (2 * h);
      e = std::max(e, std::abs(tr.values[n] + dp));
    }
    err.push_back(e);
  }
  CHECK(err[0] / err[1] > 3.0);
}

TEST_CASE("strip normal is g-unit and orthogonal to d_t") {
  const ChartedMetric g = pullback_metric(hyperboloid_strip_chart(2.0), minkowski(1), "strip", {"t", "xi"});
  const WaveGrid grid = make_grid("strip", -0.5, 2.0, -1.0, 1.0, 65, max_characteristic_speed(g, -0.5, 2.0, -1, 1));
  const BoundaryPair p = dn_map(g, grid, DirichletData{smooth_pulse(0.5, 0.4), {}});
  for (const BoundaryTrace* t : {&p.left, &p.right}) {
    CHECK(t->normalization_residual <= 1e-10);
    CHECK(t->orthogonality_residual <= 1e-10);
  }
}

TEST_CASE("finite propagation speed") {
  const ChartedMetric g = minkowski(1);
  const WaveGrid grid = make_grid("slab", 0.0, 2.0, 0.0, 2.5, 161, 1.0);
  const WaveField u = solve_ibvp(g, grid, DirichletData{left_pulse(), {}});
  const double scale = u.values.cwiseAbs().maxCoeff();
  // Data starts at t = 0.2; the numerical domain of dependence moves one
  // cell per step, the physical cone at speed 1.
  const double numeric_speed = grid.dx() / grid.dt();
  double leak = 0.0;
  for (int n = 0; n < grid.nt; ++n)
    for (int j = 0; j < grid.nx; ++j) {
      const double t = grid.t(n), x = grid.x(j);
      if (x > numeric_speed * (t - 0.2) + grid.dx()) CHECK(u.at(n, j) == 0.0);
      if (x > (t - 0.2) + 3 * grid.dx()) leak = std::max(leak, std::abs(u.at(n, j)));
    }
  CHECK(leak <= 1e-3 * scale);
}

TEST_CASE("identical metrics give identical DN maps bitwise") {
  const ChartedMetric g = pullback_metric(hyperboloid_strip_chart(2.0), minkowski(1), "strip", {"t", "xi"});
  const WaveGrid grid = make_grid("strip", -0.5, 2.0, -1.0, 1.0, 65, max_characteristic_speed(g, -0.5, 2.0, -1, 1));
  const DirichletData phi{smooth_pulse(0.5, 0.4), smooth_pulse(0.7, 0.3, 0.5)};
  const ComparisonSeries s = compare_dn(g, g, {grid, refine(grid, 1)}, phi);
  for (const ComparisonLevel& l : s.levels) {
    CHECK(l.value == 0.0);
    CHECK(l.reference > 0.0);
  }
}

TEST_CASE("DN map self-convergence on the strip") {
  const ChartedMetric g = pullback_metric(hyperboloid_strip_chart(2.0), minkowski(1), "strip", {"t", "xi"});
  const WaveGrid base = make_grid("strip", -0.5, 2.0, -1.0, 1.0, 257, max_characteristic_speed(g, -0.5, 2.0, -1, 1));
  const DirichletData phi{smooth_pulse(0.5, 0.6), {}};
  std::vector<BoundaryPair> traces;
  for (int l = 0; l < 4; ++l) traces.push_back(dn_map(g, refine(base, l), phi));
  auto diff = [&](int l) {
    double d = 0.0;
    const auto& c = traces[l].left.values;
    const auto& f = traces[l + 1].left.values;
    for (std::size_t n = 0; n < c.size(); ++n) d = std::max(d, std::abs(c[n] - f[2 * n]));
    return d;
  };
  const double r1 = diff(0) / diff(1);
  const double r2 = diff(1) / diff(2);
  CHECK(r1 > 3.0);
  CHECK(r2 > 3.0);
  CHECK(r2 < 5.0);
}

TEST_CASE("source problem: cone check and exterior support check") {
  const ChartedMetric g = minkowski(1);
  const SourceSpec f = bump_source(Point{0.5, 4.0}, 0.2);
  CHECK(f.f(Point{0.5, 4.0}) == doctest::Approx(1.0));
  CHECK(f.f(Point{0.5, 4.3}) == 0.0);
  const WaveGrid narrow = make_grid("ambient", 0.0, 2.0, 2.0, 6.0, 65, 1.0);
  CHECK_THROWS_AS(solve_cauchy(g, narrow, f), GridError);

  const WaveGrid wide = make_grid("ambient", 0.0, 2.0, 0.0, 8.0, 129, 1.0);
  const CylinderDomain cyl = hyperboloid_cylinder(2.0, 1);
  const StsResult r = source_to_solution(g, cyl, f, wide, {Point{1.5, 4.5}});
  CHECK(r.probe_values.size() == 1);
  CHECK(std::abs(r.probe_values[0]) > 0.0);
  CHECK_THROWS_AS(source_to_solution(g, cyl, bump_source(Point{0.5, 0.5}, 0.2), wide, {Point{1.5, 4.5}}),
                  DataError);
  CHECK_THROWS_AS(source_to_solution(g, cyl, f, wide, {Point{1.5, 0.0}}), DataError);
}

TEST_CASE("source problem matches the d'Alembert Duhamel integral") {
  // u_tt - u_xx = f gives u(t, x) = 1/2 int int_{|x - y| < t - s} f(s, y) dy ds.
  const SourceSpec f = bump_source(Point{0.5, 0.0}, 0.3);
  const double T = 1.5, X = 0.4;
  const double duhamel = 0.5 * oracle::simpson(
                                   [&](double s) {
                                     return oracle::simpson([&](double y) { return f.f(Point{s, y}); },
                                                            X - (T - s), X + (T - s), 400);
                                   },
                                   0.2, 0.8, 400);
  const WaveGrid grid = make_grid("ambient", 0.0, T, -3.0, 3.0, 1201, 1.0);
  const WaveField u = solve_cauchy(minkowski(1), grid, f);
  CHECK(u.sample(T, X) == doctest::Approx(duhamel).epsilon(1e-3));
}

TEST_CASE("determinism: identical inputs give bitwise identical fields") {
  const WaveGrid grid = make_grid("mms", 0.0, 1.0, 0.0, 1.0, 33, 1.0);
  const WaveField a = solve_wave(flrw_bounce(1.0, 1), grid, mms::source(), DirichletData{});
  const WaveField b = solve_wave(flrw_bounce(1.0, 1), grid, mms::source(), DirichletData{});
  CHECK((a.values.array() == b.values.array()).all());
}

TEST_CASE("field sampling outside the grid raises") {
  const WaveGrid grid = make_grid("mms", 0.0, 1.0, 0.0, 1.0, 33, 1.0);
  const WaveField a = solve_wave(flrw_bounce(1.0, 1), grid, mms::source(), DirichletData{});
  CHECK_THROWS_AS(a.sample(2.0, 0.5), GridError);
  CHECK(a.sample(1.0, 0.5) == doctest::Approx(mms::exact(1.0, 0.5)).epsilon(0.05));
}
