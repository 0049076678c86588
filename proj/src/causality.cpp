#include "lorentz/causality.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

namespace lorentz {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::BoundaryHit: return "boundary_hit";
    case Termination::ParameterLimit: return "parameter_limit";
    case Termination::ChartExit: return "chart_exit";
    case Termination::SingularityApproach: return "singularity_approach";
  }
  return "unknown";
}

std::string to_string(Direction d) { return d == Direction::Future ? "future" : "past"; }

namespace {

// (x, v) packed into a fixed array; unused slots stay zero.
using State = std::array<double, 2 * kMaxDim>;
using Stepper = boost::numeric::odeint::runge_kutta_dopri5<State>;

Point position(const State& y, int d) {
  Vec x(d);
  for (int i = 0; i < d; ++i) x[i] = y[i];
  return Point(x);
}

Vec velocity(const State& y, int d) {
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = y[d + i];
  return v;
}

struct GeodesicRhs {
  const ChartedMetric* metric;
  int d;
  double h;

  void operator()(const State& y, State& dydt, double /*s*/) const {
    for (double& c : dydt) c = 0.0;
    const Point x = position(y, d);
    if (!metric->in_domain(x)) throw DomainError("geodesic left the chart domain");
    const Christoffel gamma = christoffel(*metric, x, h);
    for (int l = 0; l < d; ++l) {
      dydt[l] = y[d + l];
      double acc = 0.0;
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) acc += gamma(l, m, n) * y[d + m] * y[d + n];
      dydt[d + l] = -acc;
    }
  }
};

double norm2(const ChartedMetric& metric, const Point& p, const Vec& v) {
  return v.dot(metric.components(p) * v);
}

double norm2_scale(const ChartedMetric& metric, const Point& p, const Vec& v) {
  const Vec a = v.cwiseAbs();
  return a.dot(metric.components(p).cwiseAbs() * a);
}

}  // namespace

GeodesicPath integrate_geodesic(const ChartedMetric& metric, const Point& p, const Vec& v,
                                const IntegrationOptions& opt) {
  const int d = metric.dim();
  if (p.dim() != d || v.size() != d) throw PreconditionError("geodesic: dimension mismatch");
  if (!metric.in_domain(p)) throw DomainError("geodesic: start point outside the chart domain");
  if (!causal_class(metric, Tangent{p, v}).causal()) {
    throw PreconditionError("geodesic: initial tangent must be timelike or null");
  }

  GeodesicRhs rhs{&metric, d, opt.fd_step};
  State y{};
  for (int i = 0; i < d; ++i) {
    y[i] = p[i];
    y[d + i] = v[i];
  }
  State dydt{};
  rhs(y, dydt, 0.0);

  GeodesicPath path;
  path.initial_norm = norm2(metric, p, v);
  const double drift_scale = std::max(norm2_scale(metric, p, v), 1e-300);
  path.samples.push_back({0.0, p, v});

  Stepper stepper;
  double s = 0.0;
  double h = std::min(opt.h_init, opt.h_max);
  State y_new{};
  State dydt_new{};
  State err{};

  while (true) {
    if (s >= opt.s_max || path.accepted_steps >= opt.max_steps) {
      path.termination = Termination::ParameterLimit;
      break;
    }
    h = std::min({h, opt.h_max, opt.s_max - s});

    bool evaluated = true;
    double err_norm = 0.0;
    try {
      stepper.do_step(rhs, y, dydt, s, y_new, dydt_new, h, err);
      for (int i = 0; i < 2 * d; ++i) {
        if (!std::isfinite(y_new[i])) evaluated = false;
        const double scale = opt.abs_tol + opt.tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        err_norm = std::max(err_norm, std::abs(err[i]) / scale);
      }
    } catch (const DomainError&) {
      evaluated = false;
    } catch (const SingularMetricError&) {
      evaluated = false;
    }

    if (!evaluated || !(err_norm <= 1.0)) {
      ++path.rejected_steps;
      h *= evaluated && std::isfinite(err_norm) ? std::max(0.2, 0.9 * std::pow(err_norm, -0.2)) : 0.25;
      if (h < opt.h_min * std::max(1.0, std::abs(s))) {
        const Point last = path.samples.back().point;
        path.termination = metric.near_singularity(last) ? Termination::SingularityApproach
                                                         : Termination::ChartExit;
        break;
      }
      continue;
    }

    s += h;
    y = y_new;
    dydt = dydt_new;
    ++path.accepted_steps;
    const Point x = position(y, d);
    const Vec vel = velocity(y, d);
    path.samples.push_back({s, x, vel});

    const double drift = std::abs(norm2(metric, x, vel) - path.initial_norm);
    path.constraint_drift = std::max(path.constraint_drift, drift);
    path.relative_drift = path.constraint_drift / drift_scale;

    if (opt.stop_on_exit && opt.stop_on_exit->f(x) > 0) {
      path.termination = Termination::BoundaryHit;
      break;
    }
    if (opt.stop_near_singularity && metric.near_singularity(x)) {
      path.termination = Termination::SingularityApproach;
      break;
    }
    if (opt.stop_when && opt.stop_when(x, vel)) {
      path.termination = Termination::ParameterLimit;
      break;
    }
    const double grow = err_norm == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err_norm, -0.2));
    h *= std::max(0.2, grow);
  }
  return path;
}

Point interpolate(const GeodesicPath& path, std::size_t i, double s) {
  const PathSample& a = path.samples.at(i);
  const PathSample& b = path.samples.at(i + 1);
  const double h = b.s - a.s;
  const double u = (s - a.s) / h;
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  return Point(Vec(h00 * a.point.coords() + h10 * h * a.velocity + h01 * b.point.coords() +
                   h11 * h * b.velocity));
}

namespace {

constexpr double kBoundaryTolerance = 1e-10;

double safe_f(const CylinderDomain& cyl, const Point& p) {
  try {
    return cyl.f(p);
  } catch (const DomainError&) {
    return -std::numeric_limits<double>::infinity();
  }
}

}  // namespace

std::optional<BoundaryHit> boundary_hit(const GeodesicPath& path, const CylinderDomain& cyl) {
  if (path.samples.empty()) return std::nullopt;
  if (cyl.f(path.samples.front().point) > kBoundaryTolerance) {
    throw PreconditionError("boundary_hit: path starts outside M");
  }
  constexpr int kSub = 4;
  for (std::size_t i = 0; i + 1 < path.samples.size(); ++i) {
    const double s0 = path.samples[i].s;
    const double s1 = path.samples[i + 1].s;
    double a = s0;
    double fa = cyl.f(path.samples[i].point);
    for (int k = 1; k <= kSub; ++k) {
      const double b = k == kSub ? s1 : s0 + (s1 - s0) * k / kSub;
      const double fb = k == kSub ? cyl.f(path.samples[i + 1].point) : safe_f(cyl, interpolate(path, i, b));
      if (fa < 0 && fb >= 0) {
        if (fb == 0.0) return BoundaryHit{b, k == kSub ? path.samples[i + 1].point : interpolate(path, i, b)};
        auto F = [&](double s) { return cyl.f(interpolate(path, i, s)); };
        std::uintmax_t iters = 100;
        auto [lo, hi] = boost::math::tools::toms748_solve(
            F, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
        const double flo = F(lo);
        const double fhi = F(hi);
        const double s_star = std::abs(flo) <= std::abs(fhi) ? lo : hi;
        const Point hit = interpolate(path, i, s_star);
        if (std::abs(cyl.f(hit)) > kBoundaryTolerance) {
          // Interval collapsed on a steep f; the bracket end inside M is the
          // best available estimate.
          return BoundaryHit{hi, interpolate(path, i, hi)};
        }
        return BoundaryHit{s_star, hit};
      }
      a = b;
      fa = fb;
    }
  }
  return std::nullopt;
}

double max_boundary_function(const GeodesicPath& path, const CylinderDomain& cyl, int subdivisions) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    best = std::max(best, cyl.f(path.samples[i].point));
    if (i + 1 == path.samples.size()) break;
    const double s0 = path.samples[i].s;
    const double s1 = path.samples[i + 1].s;
    for (int k = 1; k < subdivisions; ++k) {
      best = std::max(best, safe_f(cyl, interpolate(path, i, s0 + (s1 - s0) * k / subdivisions)));
    }
  }
  return best;
}

Vec null_tangent(const ChartedMetric& metric, const Point& p, const Vec& spatial, Direction dir) {
  const int d = metric.dim();
  if (spatial.size() != d - 1) throw PreconditionError("null_tangent: spatial direction has wrong size");
  const Mat g = metric_at(metric, p);
  const double a = g(0, 0);
  const double b = 2 * g.block(0, 1, 1, d - 1).row(0).dot(spatial);
  const double c = spatial.dot(g.bottomRightCorner(d - 1, d - 1) * spatial);

  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0) roots.push_back(-c / b);
  } else {
    const double disc = b * b - 4 * a * c;
    if (disc < 0) throw PreconditionError("null_tangent: no real null direction");
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    roots.push_back(q / a);
    if (q != 0.0) roots.push_back(c / q);
  }

  const Vec T = metric.orientation(p);
  for (double r : roots) {
    Vec v(d);
    v[0] = r;
    v.tail(d - 1) = spatial;
    const double sense = v.dot(g * T);
    if ((dir == Direction::Future && sense < 0) || (dir == Direction::Past && sense > 0)) return v;
  }
  throw PreconditionError("null_tangent: no null vector with the requested time sense");
}

namespace {

std::vector<Vec> spatial_directions(int n, int count, Rng& rng) {
  std::vector<Vec> dirs;
  if (n == 1) {
    dirs.push_back(Vec::Constant(1, 1.0));
    dirs.push_back(Vec::Constant(1, -1.0));
    return dirs;
  }
  for (int k = 0; k < count; ++k) {
    Vec e(n);
    do {
      for (int i = 0; i < n; ++i) e[i] = standard_normal(rng);
    } while (e.norm() < 1e-12);
    dirs.push_back(e / e.norm());
  }
  return dirs;
}

GeodesicPath thin(const GeodesicPath& path, int limit) {
  if (limit <= 1 || static_cast<int>(path.samples.size()) <= limit) return path;
  GeodesicPath out = path;
  out.samples.clear();
  const double stride = static_cast<double>(path.samples.size() - 1) / (limit - 1);
  for (int k = 0; k < limit; ++k) {
    out.samples.push_back(path.samples[static_cast<std::size_t>(std::lround(k * stride))]);
  }
  return out;
}

}  // namespace

ReachabilityReport reachability_scan(const ChartedMetric& metric, const CylinderDomain& cyl,
                                     const Region& region, Direction dir,
                                     const ScanOptions& options) {
  ReachabilityReport report;
  report.label = metric.label() + "/" + cyl.label + "/" + region.label;
  report.direction = dir;
  report.seed = options.seed;
  report.min_boundary_clearance = -std::numeric_limits<double>::infinity();

  IntegrationOptions iopt = options.integration;
  iopt.stop_on_exit = &cyl;

  Rng rng(options.seed);
  const int n = metric.dim() - 1;
  const double time_sign = dir == Direction::Future ? 1.0 : -1.0;

  auto run_ray = [&](int point_index, const Point& p, const Vec& v, bool timelike) {
    GeodesicPath path = integrate_geodesic(metric, p, v, iopt);
    RayOutcome ray;
    ray.index = report.rays_total;
    ray.point_index = point_index;
    ray.timelike = timelike;
    ray.start = p;
    ray.initial_tangent = v;
    if (auto hit = boundary_hit(path, cyl)) {
      ray.hit = true;
      ray.s_hit = hit->s;
    }
    ray.max_f = max_boundary_function(path, cyl);
    ray.s_end = path.samples.back().s;
    ray.end = path.samples.back().point;
    ray.termination = path.termination;
    ray.relative_drift = path.relative_drift;

    ++report.rays_total;
    if (ray.hit) ++report.rays_hit_boundary;
    ++report.terminations[to_string(ray.termination)];
    report.max_relative_drift = std::max(report.max_relative_drift, ray.relative_drift);
    if (ray.relative_drift > options.drift_tolerance) ++report.drift_violations;
    if (ray.max_f > report.min_boundary_clearance) {
      report.min_boundary_clearance = ray.max_f;
      report.extremal_path = thin(path, options.witness_samples_limit);
    }
    if (ray.hit && !report.hitting_path) report.hitting_path = thin(path, options.witness_samples_limit);
    if (options.ray_observer) options.ray_observer(ray, path);
    report.rays.push_back(std::move(ray));
  };

  for (int i = 0; i < options.points; ++i) {
    const Point p = region.sampler(rng);
    const auto dirs = spatial_directions(n, options.directions_per_point, rng);
    Vec first_null;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      const Vec v = null_tangent(metric, p, dirs[k], dir);
      if (k == 0) first_null = v;
      run_ray(i, p, v, false);
    }
    const double pick = uniform01(rng);
    const double alpha = uniform(rng, 0.1, 1.0);
    if (pick < options.timelike_fraction) {
      const Vec T = time_sign * metric.orientation(p);
      const Vec v = first_null + alpha * (first_null.norm() / T.norm()) * T;
      run_ray(i, p, v, true);
    }
  }
  if (report.rays_total == 0) report.min_boundary_clearance = 0.0;
  return report;
}

KruskalConfinementReport kruskal_confinement_check(double r_s, double r0, const ScanOptions& options) {
  const ChartedMetric metric = kruskal_metric(r_s);
  const CylinderDomain cyl = schwarzschild_cylinder(r_s, r0);

  KruskalConfinementReport out;
  out.r_s = r_s;
  out.r0 = r0;

  ScanOptions opt = options;
  auto user_observer = options.ray_observer;
  opt.ray_observer = [&](const RayOutcome& ray, const GeodesicPath& path) {
    // T^2 - R^2 = (1 - r/r_S) e^{r/r_S} grows as r decreases toward 0.
    for (std::size_t i = 1; i < path.samples.size(); ++i) {
      const Point& a = path.samples[i - 1].point;
      const Point& b = path.samples[i].point;
      const double wa = a[0] * a[0] - a[1] * a[1];
      const double wb = b[0] * b[0] - b[1] * b[1];
      if (!(wb > wa)) ++out.monotonicity_violations;
    }
    if (user_observer) user_observer(ray, path);
  };
  out.black_hole = reachability_scan(metric, cyl, black_hole_region(r_s), Direction::Future, opt);
  opt.seed = options.seed + 1;
  out.white_hole = reachability_scan(metric, cyl, white_hole_region(r_s), Direction::Past, opt);
  return out;
}

InvarianceVerdict compare_reachability(const ChartedMetric& g, const ChartedMetric& g_prime,
                                       const CylinderDomain& cyl, const Region& region,
                                       Direction dir, const ScanOptions& options) {
  InvarianceVerdict verdict;
  verdict.base = reachability_scan(g, cyl, region, dir, options);
  verdict.perturbed = reachability_scan(g_prime, cyl, region, dir, options);
  const auto& a = verdict.base.rays;
  const auto& b = verdict.perturbed.rays;
  if (a.size() != b.size()) {
    verdict.ray_mismatches = static_cast<int>(std::max(a.size(), b.size()));
    return verdict;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].hit != b[i].hit) ++verdict.ray_mismatches;
    if (a[i].end.dim() == b[i].end.dim()) {
      verdict.max_endpoint_difference = std::max(
          verdict.max_endpoint_difference, (a[i].end.coords() - b[i].end.coords()).norm());
    }
  }
  return verdict;
}

InvarianceVerdict perturbation_reachability_invariance(const PerturbationSpec& spec,
                                                       const CylinderDomain& cyl, Direction dir,
                                                       const ScanOptions& options) {
  const bool inside = support_within_region(spec);
  const ChartedMetric g_prime = perturbed_metric(spec);
  InvarianceVerdict verdict = compare_reachability(spec.base, g_prime, cyl, spec.region, dir, options);
  verdict.support_in_region = inside;
  return verdict;
}

}  // namespace lorentz
