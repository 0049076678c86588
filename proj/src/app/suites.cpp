#include "lorentz/app/suites.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/sinh_sinh.hpp>

namespace lorentz::app {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point bump_center(const RunConfig& c) {
  Vec p = Vec::Zero(c.n + 1);
  for (std::size_t i = 0; i < c.bump.center.size(); ++i) p[static_cast<int>(i)] = c.bump.center[i];
  return Point(p);
}

void require_scenario(const RunConfig& c, std::initializer_list<const char*> allowed,
                      const std::string& suite) {
  for (const char* s : allowed)
    if (c.scenario == s) return;
  std::string list;
  for (const char* s : allowed) list += (list.empty() ? "" : ", ") + std::string(s);
  throw ConfigInvalid({"scenario '" + c.scenario + "' is not supported by " + suite + " (use " + list + ")"});
}

json scan_json(const ReachabilityReport& r) {
  json terms = json::object();
  for (const auto& [k, v] : r.terminations) terms[k] = v;
  return json{{"label", r.label},
              {"direction", to_string(r.direction)},
              {"seed", r.seed},
              {"rays_total", r.rays_total},
              {"rays_hit_boundary", r.rays_hit_boundary},
              {"min_boundary_clearance", r.min_boundary_clearance},
              {"max_relative_drift", r.max_relative_drift},
              {"drift_violations", r.drift_violations},
              {"terminations", terms}};
}

CsvTable ray_table(const std::string& name, const ReachabilityReport& r) {
  CsvTable t;
  t.name = name;
  t.columns = {"ray", "point", "timelike"};
  const int d = r.rays.empty() ? 0 : r.rays.front().start.dim();
  for (int i = 0; i < d; ++i) t.columns.push_back("start" + std::to_string(i));
  for (int i = 0; i < d; ++i) t.columns.push_back("end" + std::to_string(i));
  for (const char* c : {"hit", "s_hit", "max_f", "s_end", "termination", "relative_drift"}) t.columns.push_back(c);
  for (const RayOutcome& ray : r.rays) {
    std::vector<double> row{double(ray.index), double(ray.point_index), ray.timelike ? 1.0 : 0.0};
    for (int i = 0; i < d; ++i) row.push_back(ray.start[i]);
    for (int i = 0; i < d; ++i) row.push_back(ray.end[i]);
    row.insert(row.end(), {ray.hit ? 1.0 : 0.0, ray.s_hit, ray.max_f, ray.s_end,
                           double(static_cast<int>(ray.termination)), ray.relative_drift});
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable path_table(const std::string& name, const GeodesicPath& path, const CylinderDomain& cyl) {
  CsvTable t;
  t.name = name;
  t.columns = {"s"};
  const int d = path.samples.empty() ? 0 : path.samples.front().point.dim();
  for (int i = 0; i < d; ++i) t.columns.push_back("x" + std::to_string(i));
  t.columns.push_back("f");
  for (const PathSample& s : path.samples) {
    std::vector<double> row{s.s};
    for (int i = 0; i < d; ++i) row.push_back(s.point[i]);
    row.push_back(cyl.f(s.point));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void add_scan(SuiteResult& suite, const std::string& key, const ReachabilityReport& r,
              const CylinderDomain& cyl, double drift_tolerance) {
  suite.details["scans"][key] = scan_json(r);
  suite.checks.push_back(check_eq(key + ".boundary_hits", r.rays_hit_boundary, 0));
  suite.checks.push_back(check_le(key + ".max_relative_drift", r.max_relative_drift, drift_tolerance));
  suite.traces.push_back(ray_table("rays_" + key, r));
  if (r.extremal_path) suite.traces.push_back(path_table("path_" + key, *r.extremal_path, cyl));
}

double spatial_distance(const Point& a, const Point& b) {
  return (a.coords().tail(a.dim() - 1) - b.coords().tail(b.dim() - 1)).norm();
}

// --- causality per scenario ---------------------------------------------------

void causality_hyperboloid(const RunConfig& c, SuiteResult& suite) {
  const double a = c.a;
  const ChartedMetric g = minkowski(c.n);
  const CylinderDomain cyl = hyperboloid_cylinder(a, c.n);
  const Region U = diamond_region(a, c.n);

  // g^{-1}(df, df) = 4f + a^2, so a^2 on the boundary.
  Rng rng(c.scan.seed);
  double cert = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = uniform(rng, -3 * a, 3 * a);
    Vec e(c.n);
    for (int k = 0; k < c.n; ++k) e[k] = standard_normal(rng);
    if (c.n == 1) e[0] = e[0] < 0 ? -1.0 : 1.0;
    e /= e.norm();
    Vec p(c.n + 1);
    p[0] = t;
    p.tail(c.n) = hyperboloid_half_width(a, t) * e;
    const Point q(p);
    cert = std::max(cert, std::abs(covector_norm2(g, q, *cyl.df(q)) - a * a));
  }
  suite.checks.push_back(check_le("boundary_certificate.max_abs_error", cert, 1e-10,
                                  "|g(df,df) - a^2| at 1000 boundary points"));

  ScanOptions opt = scan_options(c);
  double far_max = -kInf;
  opt.ray_observer = [&](const RayOutcome&, const GeodesicPath& path) {
    for (const PathSample& s : path.samples) {
      if (spatial_distance(s.point, Point(Vec::Zero(s.point.dim()))) >= a / 2) {
        far_max = std::max(far_max, cyl.f(s.point));
      }
    }
  };
  const auto fut = reachability_scan(g, cyl, U, Direction::Future, opt);
  const auto past = reachability_scan(g, cyl, U, Direction::Past, opt);
  add_scan(suite, "future", fut, cyl, c.scan.drift_tolerance);
  add_scan(suite, "past", past, cyl, c.scan.drift_tolerance);

  const double clearance = std::max(fut.min_boundary_clearance, past.min_boundary_clearance);
  suite.checks.push_back(check_le("max_f_all_rays", clearance, -a * a / 4 + 1e-6,
                                  "bound -a^2/4 + 1e-6 over every ray sample"));
  suite.checks.push_back(check_le("max_f_where_radius_ge_half_a", far_max, -a * a / 4 + 1e-6,
                                  "same bound on samples with |x| >= a/2"));

  const PerturbationSpec spec = hyperboloid_perturbation(c);
  ScanOptions inv_opt = scan_options(c);
  const InvarianceVerdict v = perturbation_reachability_invariance(spec, cyl, Direction::Future, inv_opt);
  suite.details["invariance"] = {{"support_in_region", v.support_in_region},
                                 {"ray_mismatches", v.ray_mismatches},
                                 {"max_endpoint_difference", v.max_endpoint_difference},
                                 {"base", scan_json(v.base)},
                                 {"perturbed", scan_json(v.perturbed)}};
  suite.checks.push_back(check_eq("invariance.support_in_region", v.support_in_region ? 1 : 0, 1));
  suite.checks.push_back(check_eq("invariance.ray_mismatches", v.ray_mismatches, 0));
  suite.checks.push_back(check_eq("invariance.identical_verdicts", v.identical_verdicts() ? 1 : 0, 1));
}

void causality_flrw(const RunConfig& c, SuiteResult& suite) {
  const double H = c.H;
  const double R = cylinder_radius(c);
  const double span = std::numbers::pi / H;

  boost::math::quadrature::sinh_sinh<double> quad;
  const double total = quad.integrate([H](double t) { return 1 / std::cosh(H * t); });
  suite.checks.push_back(check_le("conformal_time_total.quadrature_error", std::abs(total - span), 1e-8,
                                  "|int sech(Ht) dt - pi/H|"));
  suite.checks.push_back(info("conformal_time_total.quadrature", total));

  const ChartedMetric g = flrw_bounce(H, c.n);
  const CylinderDomain cyl = ball_cylinder(R, c.n, "flrw-cylinder");
  ScanOptions opt = scan_options(c);
  double travel = 0.0;
  opt.ray_observer = [&](const RayOutcome& ray, const GeodesicPath&) {
    if (!ray.timelike) travel = std::max(travel, spatial_distance(ray.start, ray.end));
  };
  const auto fut = reachability_scan(g, cyl, flrw_future_region(H, R, c.n), Direction::Future, opt);
  const auto past = reachability_scan(g, cyl, flrw_past_region(H, R, c.n), Direction::Past, opt);
  add_scan(suite, "future", fut, cyl, c.scan.drift_tolerance);
  add_scan(suite, "past", past, cyl, c.scan.drift_tolerance);
  suite.checks.push_back(check_le("null_ray_coordinate_travel", travel, span, "bounded by pi/H"));
  suite.details["R_cylinder"] = R;
}

void causality_kruskal(const RunConfig& c, SuiteResult& suite) {
  const double rs = c.r_s;
  Rng rng(c.scan.seed);
  double residual = 0.0;
  for (int i = 0; i < 10000; ++i) {
    // Points with T^2 - R^2 in (-50, 1), interior and exterior regions.
    const double w = uniform(rng, -50.0, 0.999);
    const double s = uniform(rng, -3.0, 3.0);
    const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    const double T = w >= 0 ? sign * std::sqrt(w + s * s) : s;
    const double Rx = w >= 0 ? s : sign * std::sqrt(s * s - w);
    const double ww = T * T - Rx * Rx;
    const double rho = kruskal_r(T, Rx, rs) / rs;
    residual = std::max(residual, std::abs((1 - rho) * std::exp(rho) - ww) / std::max(1.0, std::abs(ww)));
  }
  suite.checks.push_back(check_le("kruskal_r.residual", residual, 1e-12,
                                  "|F(r/r_S) - (T^2 - R^2)| / max(1, |T^2 - R^2|) on 10^4 points"));

  double roundtrip = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double r = rs * uniform(rng, 1.01, 8.0);
    const double t = rs * uniform(rng, -5.0, 5.0);
    const KruskalCoordinates k = schwarzschild_to_kruskal(t, r, rs);
    roundtrip = std::max(roundtrip, std::abs(kruskal_r(k.T, k.R, rs) - r));
  }
  suite.checks.push_back(check_le("schwarzschild_to_kruskal.roundtrip_r", roundtrip, 1e-9));

  const CylinderDomain cyl = schwarzschild_cylinder(rs, c.r0);
  const KruskalConfinementReport k = kruskal_confinement_check(rs, c.r0, scan_options(c));
  add_scan(suite, "black_hole_future", k.black_hole, cyl, c.scan.drift_tolerance);
  add_scan(suite, "white_hole_past", k.white_hole, cyl, c.scan.drift_tolerance);
  suite.checks.push_back(check_eq("monotonicity_violations", k.monotonicity_violations, 0,
                                  "T^2 - R^2 must grow along the causal direction"));
}

// --- comparison helpers ------------------------------------------------------------

void ratio_checks(SuiteResult& suite, const ComparisonSeries& s, const std::string& key) {
  const auto r = s.ratios();
  for (std::size_t k = 0; k < r.size(); ++k) {
    suite.checks.push_back(check_in(key + ".ratio_" + std::to_string(k), r[k], 3.0, 5.0,
                                    "refinement ratio of a second-order residual"));
  }
}

CsvTable series_table(const std::string& name, const std::vector<const ComparisonSeries*>& series) {
  CsvTable t;
  t.name = name;
  t.columns = {"level", "nx", "nt"};
  for (const auto* s : series) {
    t.columns.push_back(s->label);
    t.columns.push_back(s->label + "_reference");
  }
  const std::size_t levels = series.front()->levels.size();
  for (std::size_t k = 0; k < levels; ++k) {
    std::vector<double> row{double(k), double(series.front()->levels[k].nx), double(series.front()->levels[k].nt)};
    for (const auto* s : series) {
      row.push_back(s->levels[k].value);
      row.push_back(s->levels[k].reference);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

ChartedMetric strip_metric(const ChartMap& strip, const ChartedMetric& g) {
  return pullback_metric(strip, g, g.label() + "/strip", {"t", "xi"});
}

}  // namespace

// --- checks --------------------------------------------------------------------------

Check check_le(std::string name, double value, double bound, std::string note) {
  return {std::move(name), value <= bound, value, bound, 0.0, "<=", std::move(note)};
}
Check check_ge(std::string name, double value, double bound, std::string note) {
  return {std::move(name), value >= bound, value, bound, 0.0, ">=", std::move(note)};
}
Check check_in(std::string name, double value, double lo, double hi, std::string note) {
  return {std::move(name), value >= lo && value <= hi, value, lo, hi, "in", std::move(note)};
}
Check check_eq(std::string name, double value, double expected, std::string note) {
  return {std::move(name), value == expected, value, expected, 0.0, "==", std::move(note)};
}
Check info(std::string name, double value, std::string note) {
  return {std::move(name), true, value, 0.0, 0.0, "info", std::move(note)};
}

bool SuiteResult::passed() const {
  for (const Check& c : checks)
    if (!c.passed) return false;
  return true;
}

// --- builders ----------------------------------------------------------------------------

PerturbationSpec hyperboloid_perturbation(const RunConfig& c) {
  return PerturbationSpec{
      .base = minkowski(c.n),
      .patch = de_sitter_patch(c.bump.curvature_radius, c.bump.pole, c.n),
      .cutoff = bump_cutoff(bump_center(c), c.bump.r_in, c.bump.r_out),
      .region = diamond_region(c.a, c.n),
  };
}

PerturbationSpec flrw_perturbation(const RunConfig& c) {
  return PerturbationSpec{
      .base = flrw_bounce(c.H, c.n),
      .patch = de_sitter_patch(c.bump.curvature_radius, c.bump.pole, c.n),
      .cutoff = bump_cutoff(bump_center(c), c.bump.r_in, c.bump.r_out),
      .region = flrw_future_region(c.H, cylinder_radius(c), c.n),
  };
}

ScanOptions scan_options(const RunConfig& c) {
  ScanOptions o;
  o.points = c.scan.rays;
  o.seed = c.scan.seed;
  o.directions_per_point = c.scan.directions_per_point;
  o.timelike_fraction = c.scan.timelike_fraction;
  o.drift_tolerance = c.scan.drift_tolerance;
  o.integration.tol = c.scan.tol;
  o.integration.abs_tol = c.scan.tol;
  if (c.scenario == "hyperboloid") {
    const double t_stop = 10 * c.a;
    o.integration.s_max = 1e6;
    o.integration.stop_when = [t_stop](const Point& p, const Vec&) { return std::abs(p[0]) >= t_stop; };
  } else if (c.scenario == "flrw") {
    // Spatial velocities decay like 1/a^2; a relative-only error test keeps
    // them resolved. Beyond |t| = 10/H less than 2e^-10/H of conformal time
    // remains.
    const double t_stop = 10 / c.H;
    o.integration.s_max = 1e300;
    o.integration.abs_tol = 1e-30;
    o.integration.stop_when = [t_stop](const Point& p, const Vec&) { return std::abs(p[0]) >= t_stop; };
  } else {
    o.integration.s_max = 100;
  }
  return o;
}

ComparisonInputs hyperboloid_comparison_inputs(const RunConfig& c, bool strip, bool ambient) {
  if (c.n != 1) throw ConfigInvalid({"wave comparison runs in 1+1 only (n = 1)"});
  const double a = c.a;
  const PerturbationSpec spec = hyperboloid_perturbation(c);
  const ChartedMetric g = spec.base;
  const ChartedMetric gp = perturbed_metric(spec);

  ComparisonInputs in;
  in.strip = hyperboloid_strip_chart(a);
  in.cyl = hyperboloid_cylinder(a, 1);
  in.phi = DirichletData{smooth_pulse(c.waves.phi_left.center, c.waves.phi_left.half_width,
                                      c.waves.phi_left.amplitude),
                         smooth_pulse(c.waves.phi_right.center, c.waves.phi_right.half_width,
                                      c.waves.phi_right.amplitude)};
  for (double side : {-1.0, 1.0}) {
    in.exterior_sources.push_back(bump_source(Point{-1.5 * a, side * 3 * a}, 0.2 * a));
    in.late_sources.push_back(bump_source(Point{1.25 * a, side * 3 * a}, 0.2 * a));
    for (auto [t, x] : {std::pair{1.0, 2.5}, {1.5, 3.5}, {1.75, 2.5}, {1.75, 4.0}}) {
      in.probes.push_back(Point{t * a, side * x * a});
    }
  }
  in.interior_source = bump_source(Point{0.0, 0.0}, 0.15 * a);
  in.future_of_region = [a](double t, double x) { return t > std::abs(x) - a / 2; };

  if (strip) {
    const double t0 = -0.75 * a;
    const double t1 = 1.5 * a;
    const ChartedMetric gs = strip_metric(in.strip, g);
    const ChartedMetric gps = strip_metric(in.strip, gp);
    const double cs = std::max(max_characteristic_speed(gs, t0, t1, -1, 1),
                               max_characteristic_speed(gps, t0, t1, -1, 1));
    const WaveGrid base = make_grid("strip", t0, t1, -1.0, 1.0, c.waves.strip_nx, cs);
    for (int k = 0; k < c.waves.levels; ++k) in.strip_grids.push_back(refine(base, k));
  }
  if (ambient) {
    const double t0 = -2 * a;
    const double t1 = 2 * a;
    const double x1 = 7 * a;
    const double ca = std::max(max_characteristic_speed(g, t0, t1, -x1, x1),
                               max_characteristic_speed(gp, t0, t1, -x1, x1));
    const WaveGrid base = make_grid("ambient", t0, t1, -x1, x1, c.waves.ambient_nx, ca);
    for (int k = 0; k < c.waves.levels; ++k) in.ambient_grids.push_back(refine(base, k));
  }
  return in;
}

SampleGrid witness_grid(const RunConfig& c) {
  const Point center = bump_center(c);
  const Vec w = Vec::Constant(c.n + 1, c.witness.half_width);
  return SampleGrid{Point(Vec(center.coords() - w)), Point(Vec(center.coords() + w)),
                    std::vector<int>(c.n + 1, c.witness.per_axis)};
}

// --- suites ---------------------------------------------------------------------------------

SuiteResult run_causality(const RunConfig& c) {
  SuiteResult suite;
  suite.name = "causality";
  suite.details["scenario"] = c.scenario;
  if (c.scenario == "hyperboloid") {
    causality_hyperboloid(c, suite);
  } else if (c.scenario == "flrw") {
    causality_flrw(c, suite);
  } else {
    causality_kruskal(c, suite);
  }
  return suite;
}

SuiteResult run_compare_dn(const RunConfig& c) {
  require_scenario(c, {"hyperboloid"}, "compare dn");
  SuiteResult suite;
  suite.name = "compare_dn";
  const PerturbationSpec spec = hyperboloid_perturbation(c);
  const ChartedMetric gp = perturbed_metric(spec);
  const ComparisonInputs in = hyperboloid_comparison_inputs(c, true, false);
  const ComparisonReport rep = compare_maps(spec.base, gp, in);

  const auto& b = rep.d_bdy.levels.back();
  const auto& i = rep.d_int.levels.back();
  suite.checks.push_back(info("D_bdy.finest", b.value));
  suite.checks.push_back(info("D_int.finest", i.value, "max over J+(U) of |u_g - u_g'|, interior source"));
  ratio_checks(suite, rep.d_bdy, "D_bdy");
  suite.checks.push_back(check_le("D_bdy.finest_relative", b.value / b.reference, 1e-5,
                                  "D_bdy / sup |Lambda_g phi|"));
  suite.checks.push_back(check_ge("D_int_over_D_bdy", i.value / b.value, 1e3));
  suite.checks.push_back(check_le("normal.normalization_residual", rep.normalization_residual, 1e-10));
  suite.checks.push_back(check_le("normal.orthogonality_residual", rep.orthogonality_residual, 1e-10));
  suite.checks.push_back(info("D_int.outside_future_of_U", rep.d_int_outside.back(),
                              "difference away from J+(U), roundoff only"));

  suite.details = {{"scenario", c.scenario},
                   {"grid", {{"chart", "strip"}, {"t_range", {in.strip_grids[0].t_min, in.strip_grids[0].t_max}}}},
                   {"D_bdy", to_json(rep.d_bdy)},
                   {"D_int", to_json(rep.d_int)},
                   {"ratios", rep.d_bdy.ratios()},
                   {"seeds", json::array()}};
  suite.traces.push_back(series_table("dn_series", {&rep.d_bdy, &rep.d_int}));

  // Boundary traces on the finest level for both metrics.
  const WaveGrid& fine = in.strip_grids.back();
  const BoundaryPair tg = dn_map(strip_metric(in.strip, spec.base), fine, in.phi);
  const BoundaryPair tp = dn_map(strip_metric(in.strip, gp), fine, in.phi);
  CsvTable t{"dn_traces", {"t", "left_g", "right_g", "left_gp", "right_gp"}, {}};
  for (std::size_t k = 0; k < tg.left.times.size(); ++k) {
    t.rows.push_back({tg.left.times[k], tg.left.values[k], tg.right.values[k], tp.left.values[k],
                      tp.right.values[k]});
  }
  suite.traces.push_back(std::move(t));
  return suite;
}

SuiteResult run_compare_sts(const RunConfig& c) {
  require_scenario(c, {"hyperboloid"}, "compare sts");
  SuiteResult suite;
  suite.name = "compare_sts";
  const PerturbationSpec spec = hyperboloid_perturbation(c);
  const ChartedMetric gp = perturbed_metric(spec);
  const ComparisonInputs in = hyperboloid_comparison_inputs(c, false, true);
  const ComparisonReport rep = compare_maps(spec.base, gp, in);

  // Interior difference on the ambient grids, source inside U.
  ComparisonSeries d_int;
  d_int.label = "D_int";
  for (const WaveGrid& grid : in.ambient_grids) {
    const WaveField u = solve_cauchy(spec.base, grid, in.interior_source);
    const WaveField v = solve_cauchy(gp, grid, in.interior_source);
    d_int.levels.push_back({grid.nx, grid.nt, max_difference(u, v, in.future_of_region), u.values.cwiseAbs().maxCoeff(), 0.0});
  }

  const auto& e = rep.d_ext.levels.back();
  suite.checks.push_back(info("D_ext.finest", e.value));
  suite.checks.push_back(info("D_int.finest", d_int.levels.back().value, "ambient grid, interior source"));
  ratio_checks(suite, rep.d_ext, "D_ext");
  suite.checks.push_back(check_le("D_ext.finest_relative", e.value / e.reference, 1e-5,
                                  "D_ext / max |L_g f| over probes"));
  suite.checks.push_back(check_ge("D_int_over_D_ext", d_int.levels.back().value / e.value, 1e3));
  double late = 0.0;
  for (const auto& l : rep.d_ext_late.levels) late = std::max(late, l.value);
  suite.checks.push_back(check_le("D_ext_late.max", late, 1e-13,
                                  "sources after supp chi: stencils never read perturbed coefficients"));

  json probes = json::array();
  for (const Point& p : in.probes) probes.push_back({p[0], p[1]});
  suite.details = {{"scenario", c.scenario},
                   {"grid", {{"chart", "ambient"},
                             {"t_range", {in.ambient_grids[0].t_min, in.ambient_grids[0].t_max}},
                             {"x_range", {in.ambient_grids[0].x_min, in.ambient_grids[0].x_max}}}},
                   {"probes", probes},
                   {"D_ext", to_json(rep.d_ext)},
                   {"D_ext_late", to_json(rep.d_ext_late)},
                   {"D_int", to_json(d_int)},
                   {"ratios", rep.d_ext.ratios()},
                   {"seeds", json::array()}};
  suite.traces.push_back(series_table("sts_series", {&rep.d_ext, &rep.d_ext_late, &d_int}));
  return suite;
}

SuiteResult run_witness(const RunConfig& c) {
  require_scenario(c, {"hyperboloid", "flrw"}, "witness");
  SuiteResult suite;
  suite.name = "witness";
  const PerturbationSpec spec = c.scenario == "hyperboloid" ? hyperboloid_perturbation(c) : flrw_perturbation(c);
  const ChartedMetric gp = perturbed_metric(spec);
  const SampleGrid grid = witness_grid(c);
  WitnessOptions opt;
  opt.tol_c = c.witness.tol_c;
  opt.delta = c.witness.delta;
  opt.eps0 = c.witness.eps0;
  const WitnessVerdict v = non_isometry_witness(spec.base, gp, spec.cutoff, grid, opt);

  const double expected_c = c.n * (c.n + 1) / (c.bump.curvature_radius * c.bump.curvature_radius);
  suite.checks.push_back(check_eq("verdict", v.verdict ? 1 : 0, 1,
                                  v.verdict ? "" : "inconclusive: re-choose R_c"));
  suite.checks.push_back(check_le("c.error", std::abs(v.c - expected_c), 1e-4, "c against n(n+1)/R_c^2"));
  suite.checks.push_back(check_le("constancy_residual", v.constancy_residual, opt.tol_c));
  suite.checks.push_back(check_eq("perturbed_field_finite", v.perturbed_field_finite ? 1 : 0, 1));
  if (c.scenario == "hyperboloid") {
    double s_max = 0.0;
    for (double s : v.base.values) s_max = std::max(s_max, std::abs(s));
    suite.checks.push_back(check_le("S_g.max_abs", s_max, 1e-8));
  }

  suite.details = {{"scenario", c.scenario},
                   {"status", to_string(v.status)},
                   {"verdict", v.verdict},
                   {"c", v.c},
                   {"expected_c", expected_c},
                   {"constancy_residual", v.constancy_residual},
                   {"regularity_margin", v.regularity_margin},
                   {"core_points", v.core_points},
                   {"band_points", v.band_points},
                   {"window", {{"lo", std::vector<double>(grid.lo.coords().begin(), grid.lo.coords().end())},
                               {"hi", std::vector<double>(grid.hi.coords().begin(), grid.hi.coords().end())},
                               {"counts", grid.counts}}}};

  CsvTable t;
  t.name = "witness_scan";
  for (int i = 0; i < grid.dim(); ++i) t.columns.push_back("x" + std::to_string(i));
  for (const char* col : {"S_g", "grad_S_g", "S_gp", "grad_S_gp"}) t.columns.push_back(col);
  for (std::size_t k = 0; k < v.base.points.size(); ++k) {
    std::vector<double> row;
    for (int i = 0; i < grid.dim(); ++i) row.push_back(v.base.points[k][i]);
    row.insert(row.end(), {v.base.values[k], v.base.gradient_norms[k], v.perturbed.values[k],
                           v.perturbed.gradient_norms[k]});
    t.rows.push_back(std::move(row));
  }
  suite.traces.push_back(std::move(t));
  return suite;
}

// --- json ------------------------------------------------------------------------------------

json to_json(const Check& c) {
  json j{{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"relation", c.relation}};
  if (c.relation == "in") {
    j["bound"] = {c.bound, c.bound_hi};
  } else if (c.relation != "info") {
    j["bound"] = c.bound;
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json to_json(const SuiteResult& s) {
  json checks = json::array();
  for (const Check& c : s.checks) checks.push_back(to_json(c));
  json traces = json::array();
  for (const CsvTable& t : s.traces) traces.push_back("traces/" + t.name + ".csv");
  return json{{"name", s.name}, {"passed", s.passed()}, {"checks", checks}, {"details", s.details},
              {"traces", traces}};
}

json to_json(const ComparisonSeries& s) {
  json levels = json::array();
  for (const ComparisonLevel& l : s.levels) {
    levels.push_back({{"nx", l.nx}, {"nt", l.nt}, {"value", l.value}, {"reference", l.reference}});
  }
  return json{{"label", s.label}, {"levels", levels}, {"ratios", s.ratios()}};
}

}  // namespace lorentz::app
