#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "lorentz/errors.hpp"
#include "lorentz/types.hpp"

namespace lorentz {

// Default finite-difference step for derivatives of metric components.
inline constexpr double kDefaultStep = 1e-3;
// Eigenvalue magnitude below which a metric is treated as degenerate.
inline constexpr double kSignatureThreshold = 1e-12;
inline constexpr double kDefaultNullTolerance = 1e-10;

using ComponentFn = std::function<Mat(const Point&)>;
// Returns d_k g_{mu nu} for k = 0..dim-1 (unused slots are left empty).
using DerivativeFn = std::function<std::array<Mat, kMaxDim>(const Point&)>;
using VectorFieldFn = std::function<Vec(const Point&)>;
using PointPredicate = std::function<bool(const Point&)>;

struct MetricDefinition {
  std::string label;
  std::vector<std::string> coord_names;
  ComponentFn components;
  // Timelike vector field fixing the time orientation.
  VectorFieldFn orientation;
  // Chart domain; empty means the whole coordinate space.
  PointPredicate domain;
  // Exact first derivatives; empty means 4th-order central differences.
  DerivativeFn derivatives;
  // True where the chart approaches a curvature singularity; used only to
  // classify how geodesic integration terminated.
  PointPredicate near_singularity;
};

// A Lorentzian metric given by its components in a single chart.
// Immutable after construction and safe to evaluate concurrently.
class ChartedMetric {
 public:
  explicit ChartedMetric(MetricDefinition def);

  int dim() const { return static_cast<int>(def_.coord_names.size()); }
  const std::string& label() const { return def_.label; }
  const std::vector<std::string>& coord_names() const { return def_.coord_names; }

  bool in_domain(const Point& p) const;
  bool near_singularity(const Point& p) const;
  bool has_exact_derivatives() const { return static_cast<bool>(def_.derivatives); }

  // Raw evaluators; callers are responsible for domain checks.
  Mat components(const Point& p) const { return def_.components(p); }
  Vec orientation(const Point& p) const { return def_.orientation(p); }
  std::array<Mat, kMaxDim> exact_derivatives(const Point& p) const { return def_.derivatives(p); }

  const MetricDefinition& definition() const { return def_; }

 private:
  MetricDefinition def_;
};

// Lorentzian metric in temporal-function split form -kappa dtau^2 + g_tau.
// The first coordinate is the temporal function.
class FoliatedMetric {
 public:
  using LapseFn = std::function<double(const Point&)>;
  using SpatialFn = std::function<Mat(const Point&)>;

  FoliatedMetric(std::string label, std::vector<std::string> coord_names, LapseFn kappa,
                 SpatialFn spatial, PointPredicate domain = {}, DerivativeFn derivatives = {});

  double kappa(const Point& p) const { return kappa_(p); }
  Mat spatial(const Point& p) const { return spatial_(p); }
  const ChartedMetric& metric() const { return metric_; }

 private:
  LapseFn kappa_;
  SpatialFn spatial_;
  ChartedMetric metric_;
};

enum class CausalKind { Timelike, Null, Spacelike, Zero };
enum class TimeSense { Future, Past, None };

struct CausalClass {
  CausalKind kind = CausalKind::Zero;
  TimeSense time_sense = TimeSense::None;

  bool causal() const { return kind == CausalKind::Timelike || kind == CausalKind::Null; }
  friend bool operator==(const CausalClass&, const CausalClass&) = default;
};

// Coordinate change F from a source chart into the chart of a metric.
struct ChartMap {
  std::function<Point(const Point&)> forward;
  std::function<Mat(const Point&)> jacobian;  // dF^a / dy^b
  PointPredicate domain;                       // empty: everywhere
  double det_threshold = 1e-12;
};

// Christoffel symbols of the second kind, Gamma^l_{mn}.
class Christoffel {
 public:
  explicit Christoffel(int dim) : dim_(dim) { data_.fill(0.0); }
  int dim() const { return dim_; }
  double operator()(int l, int m, int n) const { return data_[(l * kMaxDim + m) * kMaxDim + n]; }
  double& operator()(int l, int m, int n) { return data_[(l * kMaxDim + m) * kMaxDim + n]; }

 private:
  int dim_;
  std::array<double, kMaxDim * kMaxDim * kMaxDim> data_;
};

// Riemann tensor R^r_{s m n}.
class Riemann {
 public:
  explicit Riemann(int dim) : dim_(dim) { data_.fill(0.0); }
  int dim() const { return dim_; }
  double operator()(int r, int s, int m, int n) const { return data_[index(r, s, m, n)]; }
  double& operator()(int r, int s, int m, int n) { return data_[index(r, s, m, n)]; }

 private:
  static int index(int r, int s, int m, int n) {
    return ((r * kMaxDim + s) * kMaxDim + m) * kMaxDim + n;
  }
  int dim_;
  std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim> data_;
};

// True when m is symmetric with exactly one eigenvalue below -threshold and
// the rest above +threshold.
bool is_lorentzian(const Mat& m, double threshold = kSignatureThreshold);

// Checked metric evaluation: domain, finiteness, symmetry, signature.
Mat metric_at(const ChartedMetric& metric, const Point& p);
Mat inverse_metric_at(const ChartedMetric& metric, const Point& p);

double inner(const ChartedMetric& metric, const Point& p, const Vec& u, const Vec& v);
double covector_norm2(const ChartedMetric& metric, const Point& p, const Covector& omega);

// d_k g_{mu nu}; exact when the metric supplies derivatives, otherwise
// 4th-order central differences with step h.
std::array<Mat, kMaxDim> metric_derivatives(const ChartedMetric& metric, const Point& p,
                                            double h = kDefaultStep);

Christoffel christoffel(const ChartedMetric& metric, const Point& p, double h = kDefaultStep);

// Sign convention: R^r_{smn} = d_m G^r_{ns} - d_n G^r_{ms} + G^r_{ml} G^l_{ns} - G^r_{nl} G^l_{ms},
// Ric_{sn} = R^r_{srn}. With it de Sitter space has positive scalar curvature.
Riemann riemann(const ChartedMetric& metric, const Point& p, double h = kDefaultStep);
Mat ricci(const ChartedMetric& metric, const Point& p, double h = kDefaultStep);
double scalar_curvature(const ChartedMetric& metric, const Point& p, double h = kDefaultStep);

CausalClass causal_class(const ChartedMetric& metric, const Tangent& v,
                         double null_tolerance = kDefaultNullTolerance);

// Metric in the source chart of F: J^T g(F(y)) J. Orientation is pulled back
// with J^{-1}. Throws ChartError where the jacobian is singular.
ChartedMetric pullback_metric(const ChartMap& map, const ChartedMetric& metric,
                              std::string label, std::vector<std::string> coord_names);

}  // namespace lorentz
