#include "lorentz/witness.hpp"

#include <cmath>
#include <limits>

namespace lorentz {

std::size_t SampleGrid::size() const {
  std::size_t n = 1;
  for (int c : counts) n *= static_cast<std::size_t>(c);
  return n;
}

double SampleGrid::spacing(int axis) const {
  return counts[axis] > 1 ? (hi[axis] - lo[axis]) / (counts[axis] - 1) : 0.0;
}

Point SampleGrid::node(std::size_t flat) const {
  Vec c(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    const int i = static_cast<int>(flat % counts[a]);
    flat /= counts[a];
    c[a] = lo[a] + i * spacing(a);
  }
  return Point(c);
}

namespace {

void require_grid(const SampleGrid& grid, int dim) {
  if (grid.dim() != dim || grid.hi.dim() != dim || static_cast<int>(grid.counts.size()) != dim) {
    throw GridError("sample grid dimension does not match the metric");
  }
  for (int a = 0; a < dim; ++a) {
    if (grid.counts[a] < 1) throw GridError("sample grid: empty axis");
    if (grid.counts[a] > 1 && !(grid.hi[a] > grid.lo[a])) throw GridError("sample grid: hi <= lo");
  }
}

}  // namespace

CurvatureScan curvature_scan(const ChartedMetric& metric, const SampleGrid& grid, double h) {
  require_grid(grid, metric.dim());
  CurvatureScan scan;
  scan.label = metric.label();
  scan.grid = grid;
  const std::size_t n = grid.size();
  scan.points.reserve(n);
  scan.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    scan.points.push_back(grid.node(k));
    const double s = scalar_curvature(metric, scan.points.back(), h);
    if (!std::isfinite(s)) throw DomainError("curvature scan: non-finite S");
    scan.values.push_back(s);
  }

  // Strides for the flat index, axis 0 slowest.
  const int d = grid.dim();
  std::vector<std::size_t> stride(d, 1);
  for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * grid.counts[a + 1];

  scan.gradient_norms.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double sq = 0.0;
    for (int a = 0; a < d; ++a) {
      const int m = grid.counts[a];
      if (m < 2) continue;
      const int i = static_cast<int>((k / stride[a]) % m);
      const double dx = grid.spacing(a);
      double deriv;
      if (i == 0) {
        deriv = (scan.values[k + stride[a]] - scan.values[k]) / dx;
      } else if (i == m - 1) {
        deriv = (scan.values[k] - scan.values[k - stride[a]]) / dx;
      } else {
        deriv = (scan.values[k + stride[a]] - scan.values[k - stride[a]]) / (2 * dx);
      }
      sq += deriv * deriv;
    }
    scan.gradient_norms[k] = std::sqrt(sq);
  }
  return scan;
}

std::string to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::NonIsometric: return "non-isometric";
    case WitnessStatus::Inconclusive: return "inconclusive";
    case WitnessStatus::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

WitnessVerdict non_isometry_witness(const ChartedMetric& g, const ChartedMetric& g_prime,
                                    const BumpCutoff& bump, const SampleGrid& grid,
                                    const WitnessOptions& options) {
  WitnessVerdict out;
  out.base = curvature_scan(g, grid, options.h);
  out.perturbed = curvature_scan(g_prime, grid, options.h);
  for (double s : out.perturbed.values) out.perturbed_field_finite &= std::isfinite(s);

  // Core shrunk by the reach of the nested difference stencils, so every
  // metric evaluation behind S_g' sees chi = 1.
  const double core_radius = bump.inner_radius() - 4 * options.h;
  double sum = 0.0;
  bool perturbed_anywhere = false;
  std::vector<double> core_values;
  for (std::size_t k = 0; k < out.perturbed.points.size(); ++k) {
    const Point& p = out.perturbed.points[k];
    if (!(bump.distance(p) <= core_radius)) continue;
    core_values.push_back(out.perturbed.values[k]);
    sum += out.perturbed.values[k];
    if ((g.components(p) - g_prime.components(p)).cwiseAbs().maxCoeff() > 0.0) perturbed_anywhere = true;
  }
  out.core_points = static_cast<int>(core_values.size());
  if (core_values.empty()) throw GridError("witness: no lattice node inside the bump core");

  out.c = sum / core_values.size();
  for (double s : core_values) out.constancy_residual = std::max(out.constancy_residual, std::abs(s - out.c));

  out.regularity_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < out.base.values.size(); ++k) {
    if (std::abs(out.base.values[k] - out.c) < options.delta) {
      ++out.band_points;
      out.regularity_margin = std::min(out.regularity_margin, out.base.gradient_norms[k]);
    }
  }

  if (!perturbed_anywhere) {
    out.status = WitnessStatus::NotApplicable;
    out.verdict = false;
    return out;
  }
  out.verdict = out.constancy_residual <= options.tol_c &&
                (out.band_points == 0 || out.regularity_margin > options.eps0);
  out.status = out.verdict ? WitnessStatus::NonIsometric : WitnessStatus::Inconclusive;
  return out;
}

}  // namespace lorentz
