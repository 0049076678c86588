#include "lorentz/waves.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace lorentz {

namespace {

struct Coefficients {
  double att;  // sqrt|g| g^{tt}
  double atx;
  double axx;
  double s;  // sqrt|g|
};

Coefficients coefficients(const ChartedMetric& metric, double t, double x) {
  const Point p{t, x};
  if (!metric.in_domain(p)) {
    std::ostringstream os;
    os << "wave solver: metric '" << metric.label() << "' undefined at (" << t << ", " << x << ")";
    throw DomainError(os.str());
  }
  const Mat g = metric.components(p);
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  if (!(det < 0)) {
    std::ostringstream os;
    os << "wave solver: metric '" << metric.label() << "' not Lorentzian at (" << t << ", " << x << ")";
    throw SignatureError(os.str());
  }
  const double s = std::sqrt(-det);
  return {s * g(1, 1) / det, -s * g(0, 1) / det, s * g(0, 0) / det, s};
}

double null_speed(const ChartedMetric& metric, double t, double x) {
  const Point p{t, x};
  if (!metric.in_domain(p)) throw DomainError("characteristic speed: point outside chart domain");
  const Mat g = metric.components(p);
  const double disc = g(0, 1) * g(0, 1) - g(0, 0) * g(1, 1);
  if (!(disc > 0) || !(g(1, 1) > 0)) {
    throw SignatureError("characteristic speed: no real pair of null directions for metric '" +
                         metric.label() + "'");
  }
  const double root = std::sqrt(disc);
  return std::max(std::abs((-g(0, 1) + root) / g(1, 1)), std::abs((-g(0, 1) - root) / g(1, 1)));
}

std::vector<double> lattice(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

void require_grid(const WaveGrid& grid) {
  if (grid.nx < 16) throw GridError("wave grid: nx must be at least 16");
  if (grid.nt < 3) throw GridError("wave grid: nt must be at least 3");
  if (!(grid.t_max > grid.t_min) || !(grid.x_max > grid.x_min)) {
    throw GridError("wave grid: empty coordinate range");
  }
}

}  // namespace

double max_characteristic_speed(const ChartedMetric& metric, double t_min, double t_max,
                                double x_min, double x_max, int nt_samples, int nx_samples) {
  if (metric.dim() != 2) throw PreconditionError("wave solver handles 1+1 metrics only");
  double c = 0.0;
  for (double t : lattice(t_min, t_max, nt_samples))
    for (double x : lattice(x_min, x_max, nx_samples)) c = std::max(c, null_speed(metric, t, x));
  return c;
}

double cfl_timestep(const ChartedMetric& metric, const WaveGrid& grid, double safety) {
  const double c = max_characteristic_speed(metric, grid.t_min, grid.t_max, grid.x_min, grid.x_max,
                                            std::min(grid.nt, 257), grid.nx);
  return safety * grid.dx() / c;
}

WaveGrid make_grid(std::string chart, double t_min, double t_max, double x_min, double x_max,
                   int nx, double c_max, double safety) {
  if (!(c_max > 0)) throw GridError("wave grid: c_max must be positive");
  WaveGrid grid;
  grid.chart = std::move(chart);
  grid.t_min = t_min;
  grid.t_max = t_max;
  grid.x_min = x_min;
  grid.x_max = x_max;
  grid.nx = nx;
  grid.c_max = c_max;
  const double dt_max = safety * grid.dx() / c_max;
  grid.nt = static_cast<int>(std::ceil((t_max - t_min) / dt_max - 1e-9)) + 1;
  require_grid(grid);
  return grid;
}

WaveGrid refine(const WaveGrid& grid, int level) {
  WaveGrid out = grid;
  out.nx = (grid.nx - 1) * (1 << level) + 1;
  out.nt = (grid.nt - 1) * (1 << level) + 1;
  return out;
}

double WaveField::sample(double t, double x) const {
  const double slack = 1e-12;
  if (t < grid.t_min - slack || t > grid.t_max + slack || x < grid.x_min - slack ||
      x > grid.x_max + slack) {
    throw GridError("field sample outside the grid");
  }
  const double ft = std::clamp((t - grid.t_min) / grid.dt(), 0.0, grid.nt - 1.0);
  const double fx = std::clamp((x - grid.x_min) / grid.dx(), 0.0, grid.nx - 1.0);
  const int n = std::min(static_cast<int>(ft), grid.nt - 2);
  const int j = std::min(static_cast<int>(fx), grid.nx - 2);
  const double a = ft - n;
  const double b = fx - j;
  return (1 - a) * ((1 - b) * values(n, j) + b * values(n, j + 1)) +
         a * ((1 - b) * values(n + 1, j) + b * values(n + 1, j + 1));
}

SourceSpec bump_source(const Point& center, double radius, double amplitude) {
  if (!(radius > 0)) throw ConfigError("bump source: radius must be positive");
  return SourceSpec{
      .f =
          [center, radius, amplitude](const Point& p) {
            const double q = (p.coords() - center.coords()).squaredNorm() / (radius * radius);
            if (q >= 1) return 0.0;
            return amplitude * std::exp(1 - 1 / (1 - q));
          },
      .t_lo = center[0] - radius,
      .t_hi = center[0] + radius,
      .x_lo = center[1] - radius,
      .x_hi = center[1] + radius,
  };
}

std::function<double(double)> smooth_pulse(double center, double half_width, double amplitude) {
  return [=](double t) {
    const double s = (t - center) / half_width;
    if (std::abs(s) >= 1) return 0.0;
    return amplitude * std::exp(1 - 1 / (1 - s * s));
  };
}

std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }

WaveField solve_wave(const ChartedMetric& metric, const WaveGrid& grid,
                     const std::optional<SourceSpec>& source, const DirichletData& data) {
  require_grid(grid);
  if (metric.dim() != 2) throw PreconditionError("wave solver handles 1+1 metrics only");
  const int nt = grid.nt;
  const int nx = grid.nx;
  const double dt = grid.dt();
  const double dx = grid.dx();

  const double c = dx / cfl_timestep(metric, grid, 1.0);
  if (dt > kCflSafety * dx / c * (1 + 1e-9)) {
    std::ostringstream os;
    os << "wave solver: dt = " << dt << " exceeds the CFL bound " << kCflSafety * dx / c
       << " (c_max = " << c << ")";
    throw StabilityError(os.str());
  }

  auto left = [&](double t) { return data.left ? data.left(t) : 0.0; };
  auto right = [&](double t) { return data.right ? data.right(t) : 0.0; };
  for (int n = 0; n < 2; ++n) {
    if (left(grid.t(n)) != 0.0 || right(grid.t(n)) != 0.0) {
      throw DataError("boundary data must vanish on the two initial time levels");
    }
  }
  if (source && source->t_lo <= grid.t(1)) {
    throw DataError("source support must start after the two initial time levels");
  }

  WaveField field{grid, metric.label(), FieldArray::Zero(nt, nx)};
  auto& u = field.values;

  auto row = [&](double t, double shift, int count) {
    std::vector<Coefficients> out(count);
    for (int j = 0; j < count; ++j) out[j] = coefficients(metric, t, grid.x(j) + shift);
    return out;
  };

  std::vector<Coefficients> prev = row(grid.t(0), 0.0, nx);
  std::vector<Coefficients> cur = row(grid.t(1), 0.0, nx);
  std::vector<Coefficients> half_prev = row(grid.t(0) + 0.5 * dt, 0.0, nx);

  const double inv_dt2 = 1.0 / (dt * dt);
  const double inv_dx2 = 1.0 / (dx * dx);
  const double inv_mixed = 1.0 / (4 * dt * dx);

  const int m = nx - 2;
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);

  for (int n = 1; n + 1 < nt; ++n) {
    const double t_n = grid.t(n);
    const std::vector<Coefficients> next = row(grid.t(n + 1), 0.0, nx);
    const std::vector<Coefficients> half_next = row(t_n + 0.5 * dt, 0.0, nx);
    const std::vector<Coefficients> half_x = row(t_n, 0.5 * dx, nx - 1);

    for (int j = 1; j <= m; ++j) {
      const double flux_x = (half_x[j].axx * (u(n, j + 1) - u(n, j)) -
                             half_x[j - 1].axx * (u(n, j) - u(n, j - 1))) * inv_dx2;
      double known = -half_next[j].att * u(n, j) * inv_dt2 -
                     half_prev[j].att * (u(n, j) - u(n - 1, j)) * inv_dt2 + flux_x -
                     prev[j].atx * (u(n - 1, j + 1) - u(n - 1, j - 1)) * inv_mixed -
                     (cur[j + 1].atx * u(n - 1, j + 1) - cur[j - 1].atx * u(n - 1, j - 1)) * inv_mixed;
      double forcing = 0.0;
      if (source) {
        const double x = grid.x(j);
        if (t_n >= source->t_lo && t_n <= source->t_hi && x >= source->x_lo && x <= source->x_hi) {
          forcing = cur[j].s * source->f(Point{t_n, x});
        }
      }
      const int k = j - 1;
      diag[k] = half_next[j].att * inv_dt2;
      upper[k] = (next[j].atx + cur[j + 1].atx) * inv_mixed;
      lower[k] = -(next[j].atx + cur[j - 1].atx) * inv_mixed;
      rhs[k] = -forcing - known;
    }

    const double ul = left(grid.t(n + 1));
    const double ur = right(grid.t(n + 1));
    u(n + 1, 0) = ul;
    u(n + 1, nx - 1) = ur;
    rhs[0] -= lower[0] * ul;
    rhs[m - 1] -= upper[m - 1] * ur;

    // Thomas algorithm; the system is strongly diagonally dominant.
    for (int k = 1; k < m; ++k) {
      const double w = lower[k] / diag[k - 1];
      diag[k] -= w * upper[k - 1];
      rhs[k] -= w * rhs[k - 1];
    }
    u(n + 1, m) = rhs[m - 1] / diag[m - 1];
    for (int k = m - 2; k >= 0; --k) u(n + 1, k + 1) = (rhs[k] - upper[k] * u(n + 1, k + 2)) / diag[k];

    prev = std::move(cur);
    cur = next;
    half_prev = half_next;
  }

  if (!u.allFinite()) throw StabilityError("wave solver produced non-finite values");
  return field;
}

WaveField solve_cauchy(const ChartedMetric& metric, const WaveGrid& grid, const SourceSpec& source) {
  require_grid(grid);
  const double c = grid.dx() / cfl_timestep(metric, grid, 1.0);
  const double spread = c * (grid.t_max - source.t_lo);
  const double margin = 2 * grid.dx();
  if (source.x_lo - spread <= grid.x_min + margin || source.x_hi + spread >= grid.x_max - margin) {
    std::ostringstream os;
    os << "source cone [" << source.x_lo - spread << ", " << source.x_hi + spread
       << "] reaches the grid edges [" << grid.x_min << ", " << grid.x_max << "]";
    throw GridError(os.str());
  }
  return solve_wave(metric, grid, source, DirichletData{});
}

WaveField solve_ibvp(const ChartedMetric& metric, const WaveGrid& grid, const DirichletData& phi) {
  return solve_wave(metric, grid, std::nullopt, phi);
}

BoundaryTrace neumann_trace(const WaveField& field, const ChartedMetric& metric, Side side) {
  const WaveGrid& grid = field.grid;
  const auto& u = field.values;
  const int nt = grid.nt;
  const int last = grid.nx - 1;
  const double dt = grid.dt();
  const double dx = grid.dx();
  const int jb = side == Side::Left ? 0 : last;
  const double sign = side == Side::Left ? 1.0 : -1.0;

  BoundaryTrace trace;
  trace.side = side;
  trace.kind = TraceKind::Neumann;
  trace.times.resize(nt);
  trace.values.resize(nt);

  for (int n = 0; n < nt; ++n) {
    const double t = grid.t(n);
    const Point p{t, grid.x(jb)};
    const Mat ginv = inverse_metric_at(metric, p);
    if (!(ginv(1, 1) > 0)) throw SignatureError("neumann trace: boundary is not timelike");
    Vec nu(2);
    nu << sign * ginv(0, 1) / std::sqrt(ginv(1, 1)), sign * ginv(1, 1) / std::sqrt(ginv(1, 1));

    const Mat g = metric_at(metric, p);
    trace.normalization_residual = std::max(trace.normalization_residual, std::abs(nu.dot(g * nu) - 1));
    trace.orthogonality_residual = std::max(trace.orthogonality_residual, std::abs((g * nu)[0]));

    const double du_dx = side == Side::Left
                             ? (-3 * u(n, 0) + 4 * u(n, 1) - u(n, 2)) / (2 * dx)
                             : (3 * u(n, last) - 4 * u(n, last - 1) + u(n, last - 2)) / (2 * dx);
    double du_dt;
    if (n == 0) {
      du_dt = (-3 * u(0, jb) + 4 * u(1, jb) - u(2, jb)) / (2 * dt);
    } else if (n == nt - 1) {
      du_dt = (3 * u(n, jb) - 4 * u(n - 1, jb) + u(n - 2, jb)) / (2 * dt);
    } else {
      du_dt = (u(n + 1, jb) - u(n - 1, jb)) / (2 * dt);
    }
    trace.times[n] = t;
    trace.values[n] = nu[0] * du_dt + nu[1] * du_dx;
  }
  return trace;
}

BoundaryPair dn_map(const ChartedMetric& metric, const WaveGrid& grid, const DirichletData& phi) {
  const WaveField u = solve_ibvp(metric, grid, phi);
  return {neumann_trace(u, metric, Side::Left), neumann_trace(u, metric, Side::Right)};
}

StsResult source_to_solution(const ChartedMetric& metric, const CylinderDomain& cyl,
                             const SourceSpec& source, const WaveGrid& grid,
                             const std::vector<Point>& probes) {
  for (int n = 0; n < grid.nt; ++n) {
    const double t = grid.t(n);
    if (t < source.t_lo || t > source.t_hi) continue;
    for (int j = 0; j < grid.nx; ++j) {
      const double x = grid.x(j);
      if (x < source.x_lo || x > source.x_hi) continue;
      const Point p{t, x};
      if (source.f(p) != 0.0 && !(cyl.f(p) > 0)) {
        throw DataError("source-to-solution: supp f meets M");
      }
    }
  }
  for (const Point& q : probes) {
    if (!(cyl.f(q) > 0)) throw DataError("source-to-solution: probe lies in M");
  }
  StsResult out{solve_cauchy(metric, grid, source), {}};
  for (const Point& q : probes) out.probe_values.push_back(out.field.sample(q[0], q[1]));
  return out;
}

std::vector<double> ComparisonSeries::ratios() const {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) out.push_back(levels[k].value / levels[k + 1].value);
  return out;
}

double sup_difference(const BoundaryPair& a, const BoundaryPair& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.left.values.size(); ++i) {
    d = std::max(d, std::abs(a.left.values[i] - b.left.values.at(i)));
    d = std::max(d, std::abs(a.right.values[i] - b.right.values.at(i)));
  }
  return d;
}

double sup_norm(const BoundaryPair& a) {
  double d = 0.0;
  for (double v : a.left.values) d = std::max(d, std::abs(v));
  for (double v : a.right.values) d = std::max(d, std::abs(v));
  return d;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ComparisonSeries compare_dn(const ChartedMetric& g, const ChartedMetric& g_prime,
                            const std::vector<WaveGrid>& grids, const DirichletData& phi) {
  ComparisonSeries series;
  series.label = "D_bdy";
  for (const WaveGrid& grid : grids) {
    const auto start = std::chrono::steady_clock::now();
    const BoundaryPair a = dn_map(g, grid, phi);
    const BoundaryPair b = dn_map(g_prime, grid, phi);
    series.levels.push_back({grid.nx, grid.nt, sup_difference(a, b), sup_norm(a), seconds_since(start)});
  }
  return series;
}

ComparisonSeries compare_sts(const ChartedMetric& g, const ChartedMetric& g_prime,
                             const CylinderDomain& cyl, const std::vector<SourceSpec>& sources,
                             const std::vector<Point>& probes, const std::vector<WaveGrid>& grids) {
  ComparisonSeries series;
  series.label = "D_ext";
  for (const WaveGrid& grid : grids) {
    const auto start = std::chrono::steady_clock::now();
    ComparisonLevel level{grid.nx, grid.nt, 0.0, 0.0, 0.0};
    for (const SourceSpec& src : sources) {
      const StsResult a = source_to_solution(g, cyl, src, grid, probes);
      const StsResult b = source_to_solution(g_prime, cyl, src, grid, probes);
      for (std::size_t i = 0; i < probes.size(); ++i) {
        level.value = std::max(level.value, std::abs(a.probe_values[i] - b.probe_values[i]));
        level.reference = std::max(level.reference, std::abs(a.probe_values[i]));
      }
    }
    level.seconds = seconds_since(start);
    series.levels.push_back(level);
  }
  return series;
}

double max_difference(const WaveField& u, const WaveField& v,
                      const std::function<bool(double t, double x)>& where) {
  if (u.values.rows() != v.values.rows() || u.values.cols() != v.values.cols()) {
    throw GridError("max_difference: fields live on different grids");
  }
  double d = 0.0;
  for (int n = 0; n < u.grid.nt; ++n)
    for (int j = 0; j < u.grid.nx; ++j) {
      if (where(u.grid.t(n), u.grid.x(j))) d = std::max(d, std::abs(u.values(n, j) - v.values(n, j)));
    }
  return d;
}

SourceSpec pullback_source(const SourceSpec& source, const ChartMap& map, const WaveGrid& grid) {
  SourceSpec out;
  out.f = [f = source.f, fwd = map.forward](const Point& y) { return f(fwd(y)); };
  bool any = false;
  for (int n = 0; n < grid.nt; ++n) {
    const double t = grid.t(n);
    if (t < source.t_lo || t > source.t_hi) continue;
    for (int j = 0; j < grid.nx; ++j) {
      const Point y{t, grid.x(j)};
      const Point x = map.forward(y);
      if (x[1] < source.x_lo || x[1] > source.x_hi) continue;
      if (!any) {
        out.t_lo = out.t_hi = t;
        out.x_lo = out.x_hi = y[1];
        any = true;
      }
      out.t_lo = std::min(out.t_lo, t);
      out.t_hi = std::max(out.t_hi, t);
      out.x_lo = std::min(out.x_lo, y[1]);
      out.x_hi = std::max(out.x_hi, y[1]);
    }
  }
  if (!any) throw DataError("pullback source: support misses the grid");
  // One node of slack so the forcing mask never clips the support.
  out.t_lo -= grid.dt();
  out.t_hi += grid.dt();
  out.x_lo -= grid.dx();
  out.x_hi += grid.dx();
  return out;
}

ComparisonReport compare_maps(const ChartedMetric& g, const ChartedMetric& g_prime,
                              const ComparisonInputs& in) {
  ComparisonReport out;
  const ChartedMetric gs = pullback_metric(in.strip, g, g.label() + "/strip", {"t", "xi"});
  const ChartedMetric gs_prime =
      pullback_metric(in.strip, g_prime, g_prime.label() + "/strip", {"t", "xi"});

  out.d_bdy.label = "D_bdy";
  out.d_int.label = "D_int";
  for (const WaveGrid& grid : in.strip_grids) {
    auto start = std::chrono::steady_clock::now();
    const BoundaryPair a = dn_map(gs, grid, in.phi);
    const BoundaryPair b = dn_map(gs_prime, grid, in.phi);
    out.d_bdy.levels.push_back({grid.nx, grid.nt, sup_difference(a, b), sup_norm(a), seconds_since(start)});
    for (const BoundaryPair* p : {&a, &b})
      for (const BoundaryTrace* tr : {&p->left, &p->right}) {
        out.normalization_residual = std::max(out.normalization_residual, tr->normalization_residual);
        out.orthogonality_residual = std::max(out.orthogonality_residual, tr->orthogonality_residual);
      }

    start = std::chrono::steady_clock::now();
    const SourceSpec src = pullback_source(in.interior_source, in.strip, grid);
    const WaveField u = solve_wave(gs, grid, src, DirichletData{});
    const WaveField v = solve_wave(gs_prime, grid, src, DirichletData{});
    auto ambient = [&](double t, double xi) { return in.strip.forward(Point{t, xi}); };
    const double inside = max_difference(u, v, [&](double t, double xi) {
      const Point x = ambient(t, xi);
      return in.future_of_region(x[0], x[1]);
    });
    const double outside = max_difference(u, v, [&](double t, double xi) {
      const Point x = ambient(t, xi);
      return !in.future_of_region(x[0], x[1]);
    });
    double ref = 0.0;
    for (int n = 0; n < grid.nt; ++n)
      for (int j = 0; j < grid.nx; ++j) ref = std::max(ref, std::abs(u.at(n, j)));
    out.d_int.levels.push_back({grid.nx, grid.nt, inside, ref, seconds_since(start)});
    out.d_int_outside.push_back(outside);
  }

  out.d_ext = compare_sts(g, g_prime, in.cyl, in.exterior_sources, in.probes, in.ambient_grids);
  out.d_ext_late = compare_sts(g, g_prime, in.cyl, in.late_sources, in.probes, in.ambient_grids);
  out.d_ext_late.label = "D_ext_late";
  return out;
}

}  // namespace lorentz
