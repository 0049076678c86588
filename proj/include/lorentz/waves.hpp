#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lorentz/geometry.hpp"
#include "lorentz/spacetimes.hpp"

namespace lorentz {

// Uniform (t, x) lattice for 1+1 wave runs.
struct WaveGrid {
  std::string chart;
  double t_min = 0.0;
  double t_max = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  int nt = 0;
  int nx = 0;
  double c_max = 0.0;  // characteristic speed bound used for the time step

  double dt() const { return (t_max - t_min) / (nt - 1); }
  double dx() const { return (x_max - x_min) / (nx - 1); }
  double t(int n) const { return t_min + n * dt(); }
  double x(int j) const { return x_min + j * dx(); }
};

inline constexpr double kCflSafety = 0.5;

// Largest |dx/dt| of null directions, i.e. roots of g_tt + 2 g_tx c + g_xx c^2 = 0,
// over an nt_samples x nx_samples lattice of the rectangle.
double max_characteristic_speed(const ChartedMetric& metric, double t_min, double t_max,
                                double x_min, double x_max, int nt_samples = 257,
                                int nx_samples = 257);

// safety * dx / c_max with c_max taken over the grid nodes (time levels
// subsampled to at most 257).
double cfl_timestep(const ChartedMetric& metric, const WaveGrid& grid, double safety = kCflSafety);

// Grid with nx spatial nodes and the largest time step dt <= safety dx / c_max
// that divides the time range.
WaveGrid make_grid(std::string chart, double t_min, double t_max, double x_min, double x_max,
                   int nx, double c_max, double safety = kCflSafety);

// Same rectangle with both step sizes divided by 2^level.
WaveGrid refine(const WaveGrid& grid, int level);

using FieldArray = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct WaveField {
  WaveGrid grid;
  std::string metric_label;
  FieldArray values;  // nt x nx

  double at(int n, int j) const { return values(n, j); }
  // Bilinear interpolation; throws GridError outside the grid.
  double sample(double t, double x) const;
};

struct SourceSpec {
  std::function<double(const Point&)> f;
  // Bounding box of supp f.
  double t_lo = 0.0;
  double t_hi = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

// Smooth bump amplitude * exp(1 - 1/(1 - |p - c|^2 / r^2)) with Euclidean
// radius r in (t, x).
SourceSpec bump_source(const Point& center, double radius, double amplitude = 1.0);

// Time profiles of Dirichlet data at x = x_min (left) and x = x_max (right).
struct DirichletData {
  std::function<double(double)> left;
  std::function<double(double)> right;
};

// Compactly supported smooth pulse amplitude * exp(1 - 1/(1 - ((t - c)/w)^2)).
std::function<double(double)> smooth_pulse(double center, double half_width, double amplitude = 1.0);

enum class Side { Left, Right };
enum class TraceKind { Dirichlet, Neumann };

std::string to_string(Side side);

struct BoundaryTrace {
  Side side = Side::Left;
  TraceKind kind = TraceKind::Neumann;
  std::vector<double> times;
  std::vector<double> values;
  // Max of |g(nu,nu) - 1| and |g(nu, d_t)| over the trace (Neumann only).
  double normalization_residual = 0.0;
  double orthogonality_residual = 0.0;
};

struct BoundaryPair {
  BoundaryTrace left;
  BoundaryTrace right;
};

// Conservative three-level scheme for
//   d_mu(A^{mu nu} d_nu u) = -sqrt|g| f,   A = sqrt|g| g^{-1},
// which is Box_g u = f with Box_g = -|g|^{-1/2} d_mu(|g|^{1/2} g^{mu nu} d_nu).
// Zero data on the first two levels, Dirichlet values at both x ends. The
// mixed term makes each new level a tridiagonal solve; it reduces to an
// explicit update when g_tx = 0.
WaveField solve_wave(const ChartedMetric& metric, const WaveGrid& grid,
                     const std::optional<SourceSpec>& source, const DirichletData& data);

// Source problem on an ambient rectangle with zero values at the x edges.
// Throws GridError when the c_max cone of supp f reaches the x edges.
WaveField solve_cauchy(const ChartedMetric& metric, const WaveGrid& grid, const SourceSpec& source);

// Boundary problem on a strip chart: u = phi at both ends, zero past data.
// Throws DataError when phi is nonzero on the two initial levels.
WaveField solve_ibvp(const ChartedMetric& metric, const WaveGrid& grid, const DirichletData& phi);

// d_nu u with nu the inward g-unit normal of the x = const boundary,
// nu^mu = -+ g^{mu x} / sqrt(g^{xx}) (minus on the right end). Second order
// one-sided x-differences and centered t-differences.
BoundaryTrace neumann_trace(const WaveField& u, const ChartedMetric& metric, Side side);

BoundaryPair dn_map(const ChartedMetric& metric, const WaveGrid& grid, const DirichletData& phi);

struct StsResult {
  WaveField field;
  std::vector<double> probe_values;
};

// Source-to-solution map: checks supp f outside M and probes outside M, solves
// the source problem and samples the probes.
StsResult source_to_solution(const ChartedMetric& metric, const CylinderDomain& cyl,
                             const SourceSpec& source, const WaveGrid& grid,
                             const std::vector<Point>& probes);

// --- comparison harness ------------------------------------------------------

struct ComparisonLevel {
  int nx = 0;
  int nt = 0;
  double value = 0.0;      // D at this level
  double reference = 0.0;  // sup norm of the g-response, for relative reporting
  double seconds = 0.0;
};

struct ComparisonSeries {
  std::string label;
  std::vector<ComparisonLevel> levels;
  // ratios[k] = value[k] / value[k+1]
  std::vector<double> ratios() const;
};

double sup_difference(const BoundaryPair& a, const BoundaryPair& b);
double sup_norm(const BoundaryPair& a);

// D_bdy per level: sup |Lambda_g phi - Lambda_g' phi| on both ends.
ComparisonSeries compare_dn(const ChartedMetric& g, const ChartedMetric& g_prime,
                            const std::vector<WaveGrid>& grids, const DirichletData& phi);

// D_ext per level: max over sources and probes of |L_g f - L_g' f|.
ComparisonSeries compare_sts(const ChartedMetric& g, const ChartedMetric& g_prime,
                             const CylinderDomain& cyl, const std::vector<SourceSpec>& sources,
                             const std::vector<Point>& probes, const std::vector<WaveGrid>& grids);

// Max |u - u'| over grid nodes satisfying `where`.
double max_difference(const WaveField& u, const WaveField& v,
                      const std::function<bool(double t, double x)>& where);

// Inputs of a full g / g' comparison. g and g' live in ambient (t, x)
// coordinates; the strip chart carries the boundary problem.
struct ComparisonInputs {
  ChartMap strip;
  CylinderDomain cyl;
  DirichletData phi;
  // Exterior sources whose numerical cone crosses supp chi, and sources
  // that start after it (their solutions never read perturbed coefficients).
  std::vector<SourceSpec> exterior_sources;
  std::vector<SourceSpec> late_sources;
  std::vector<Point> probes;
  // Source inside U (ambient coordinates) used to show g' differs from g in
  // J+(U); `future_of_region` is the indicator of J+(U) in ambient coordinates.
  SourceSpec interior_source;
  std::function<bool(double t, double x)> future_of_region;
  std::vector<WaveGrid> strip_grids;
  std::vector<WaveGrid> ambient_grids;
};

struct ComparisonReport {
  ComparisonSeries d_bdy;
  ComparisonSeries d_ext;
  ComparisonSeries d_ext_late;
  // Interior difference per strip level, max over J+(U) of |u_g - u_g'|.
  ComparisonSeries d_int;
  // Same difference outside J+(U); zero up to roundoff.
  std::vector<double> d_int_outside;
  double normalization_residual = 0.0;
  double orthogonality_residual = 0.0;
};

ComparisonReport compare_maps(const ChartedMetric& g, const ChartedMetric& g_prime,
                              const ComparisonInputs& inputs);

// Source f o F on the strip: bounding box found by sampling the pulled-back
// support on the given grid.
SourceSpec pullback_source(const SourceSpec& source, const ChartMap& map, const WaveGrid& grid);

}  // namespace lorentz
