#include "lorentz/geometry.hpp"

#include <cmath>
#include <sstream>

namespace lorentz {

ChartedMetric::ChartedMetric(MetricDefinition def) : def_(std::move(def)) {
  if (def_.coord_names.empty() || static_cast<int>(def_.coord_names.size()) > kMaxDim) {
    throw ConfigError("metric '" + def_.label + "': dimension must be between 1 and 4");
  }
  if (!def_.components || !def_.orientation) {
    throw ConfigError("metric '" + def_.label + "': component and orientation evaluators required");
  }
}

bool ChartedMetric::in_domain(const Point& p) const {
  if (p.dim() != dim()) return false;
  return !def_.domain || def_.domain(p);
}

bool ChartedMetric::near_singularity(const Point& p) const {
  return def_.near_singularity && def_.near_singularity(p);
}

FoliatedMetric::FoliatedMetric(std::string label, std::vector<std::string> coord_names,
                               LapseFn kappa, SpatialFn spatial, PointPredicate domain,
                               DerivativeFn derivatives)
    : kappa_(std::move(kappa)),
      spatial_(std::move(spatial)),
      metric_(MetricDefinition{
          .label = std::move(label),
          .coord_names = std::move(coord_names),
          .components =
              [k = kappa_, s = spatial_](const Point& p) {
                const int d = p.dim();
                Mat g = Mat::Zero(d, d);
                g(0, 0) = -k(p);
                g.bottomRightCorner(d - 1, d - 1) = s(p);
                return g;
              },
          .orientation =
              [](const Point& p) {
                Vec t = Vec::Zero(p.dim());
                t[0] = 1.0;
                return t;
              },
          .domain = std::move(domain),
          .derivatives = std::move(derivatives),
          .near_singularity = {},
      }) {}

namespace {

std::string describe(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < p.dim(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

Mat checked_components(const ChartedMetric& metric, const Point& p) {
  if (!metric.in_domain(p)) {
    throw DomainError("metric '" + metric.label() + "': point " + describe(p) +
                      " outside chart domain");
  }
  Mat g = metric.components(p);
  if (g.rows() != metric.dim() || g.cols() != metric.dim()) {
    throw DomainError("metric '" + metric.label() + "': component matrix has wrong shape");
  }
  if (!g.allFinite()) {
    throw DomainError("metric '" + metric.label() + "': non-finite components at " + describe(p));
  }
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw SignatureError("metric '" + metric.label() + "': non-symmetric components at " +
                         describe(p));
  }
  return g;
}

void require_lorentzian(const ChartedMetric& metric, const Point& p, const Mat& g) {
  if (!is_lorentzian(g)) {
    throw SignatureError("metric '" + metric.label() + "': not Lorentzian at " + describe(p));
  }
}

void require_stencil(const ChartedMetric& metric, const Point& p, int axis, double reach) {
  if (!metric.in_domain(p.shifted(axis, reach)) || !metric.in_domain(p.shifted(axis, -reach))) {
    throw DomainError("metric '" + metric.label() + "': difference stencil at " + describe(p) +
                      " leaves the chart domain");
  }
}

// 4th-order central difference of a vector-valued sample function.
template <typename F>
auto central_difference(const F& sample, const Point& p, int axis, double h) {
  const auto fp2 = sample(p.shifted(axis, 2 * h));
  const auto fp1 = sample(p.shifted(axis, h));
  const auto fm1 = sample(p.shifted(axis, -h));
  const auto fm2 = sample(p.shifted(axis, -2 * h));
  return std::make_tuple(fp2, fp1, fm1, fm2);
}

}  // namespace

bool is_lorentzian(const Mat& m, double threshold) {
  if (m.rows() != m.cols() || m.rows() < 1) return false;
  Eigen::SelfAdjointEigenSolver<Mat> eig(m, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) return false;
  const auto& ev = eig.eigenvalues();
  int negative = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= threshold) return false;
    if (ev[i] < 0) ++negative;
  }
  return negative == 1;
}

Mat metric_at(const ChartedMetric& metric, const Point& p) {
  Mat g = checked_components(metric, p);
  require_lorentzian(metric, p, g);
  return g;
}

Mat inverse_metric_at(const ChartedMetric& metric, const Point& p) {
  Mat g = checked_components(metric, p);
  const double scale = std::max(1e-300, g.cwiseAbs().maxCoeff());
  const double det = g.determinant();
  if (!std::isfinite(det) || std::abs(det) <= 1e-14 * std::pow(scale, g.rows())) {
    throw SingularMetricError("metric '" + metric.label() + "': singular at " + describe(p));
  }
  require_lorentzian(metric, p, g);
  return g.inverse();
}

double inner(const ChartedMetric& metric, const Point& p, const Vec& u, const Vec& v) {
  return u.dot(metric_at(metric, p) * v);
}

double covector_norm2(const ChartedMetric& metric, const Point& p, const Covector& omega) {
  return omega.dot(inverse_metric_at(metric, p) * omega);
}

std::array<Mat, kMaxDim> metric_derivatives(const ChartedMetric& metric, const Point& p,
                                            double h) {
  if (!metric.in_domain(p)) {
    throw DomainError("metric '" + metric.label() + "': point " + describe(p) +
                      " outside chart domain");
  }
  if (metric.has_exact_derivatives()) return metric.exact_derivatives(p);

  std::array<Mat, kMaxDim> dg;
  const int d = metric.dim();
  auto sample = [&](const Point& q) { return metric.components(q); };
  for (int k = 0; k < d; ++k) {
    require_stencil(metric, p, k, 2 * h);
    auto [fp2, fp1, fm1, fm2] = central_difference(sample, p, k, h);
    dg[k] = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
  }
  return dg;
}

Christoffel christoffel(const ChartedMetric& metric, const Point& p, double h) {
  const int d = metric.dim();
  const Mat ginv = metric.components(p).inverse();
  const auto dg = metric_derivatives(metric, p, h);

  Christoffel gamma(d);
  for (int l = 0; l < d; ++l) {
    for (int m = 0; m < d; ++m) {
      for (int n = m; n < d; ++n) {
        double sum = 0.0;
        for (int s = 0; s < d; ++s) {
          sum += ginv(l, s) * (dg[m](s, n) + dg[n](s, m) - dg[s](m, n));
        }
        gamma(l, m, n) = 0.5 * sum;
        gamma(l, n, m) = 0.5 * sum;
      }
    }
  }
  return gamma;
}

Riemann riemann(const ChartedMetric& metric, const Point& p, double h) {
  const int d = metric.dim();
  const Christoffel gamma = christoffel(metric, p, h);

  // dgamma[k](l,m,n) = d_k Gamma^l_{mn}
  std::vector<Christoffel> dgamma(d, Christoffel(d));
  auto sample = [&](const Point& q) { return christoffel(metric, q, h); };
  for (int k = 0; k < d; ++k) {
    require_stencil(metric, p, k, 2 * h);
    auto [fp2, fp1, fm1, fm2] = central_difference(sample, p, k, h);
    for (int l = 0; l < d; ++l)
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
          dgamma[k](l, m, n) =
              (-fp2(l, m, n) + 8.0 * fp1(l, m, n) - 8.0 * fm1(l, m, n) + fm2(l, m, n)) / (12.0 * h);
        }
  }

  Riemann r(d);
  for (int a = 0; a < d; ++a)
    for (int s = 0; s < d; ++s)
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
          double v = dgamma[m](a, n, s) - dgamma[n](a, m, s);
          for (int l = 0; l < d; ++l) {
            v += gamma(a, m, l) * gamma(l, n, s) - gamma(a, n, l) * gamma(l, m, s);
          }
          r(a, s, m, n) = v;
        }
  return r;
}

Mat ricci(const ChartedMetric& metric, const Point& p, double h) {
  const int d = metric.dim();
  const Riemann r = riemann(metric, p, h);
  Mat ric = Mat::Zero(d, d);
  for (int s = 0; s < d; ++s)
    for (int n = 0; n < d; ++n)
      for (int a = 0; a < d; ++a) ric(s, n) += r(a, s, a, n);
  return ric;
}

double scalar_curvature(const ChartedMetric& metric, const Point& p, double h) {
  const Mat ginv = inverse_metric_at(metric, p);
  const Mat ric = ricci(metric, p, h);
  return (ginv.array() * ric.array()).sum();
}

CausalClass causal_class(const ChartedMetric& metric, const Tangent& v, double null_tolerance) {
  if (v.components.size() != v.base.dim()) {
    throw PreconditionError("tangent components do not match base point dimension");
  }
  if (v.components.isZero(0.0)) return {CausalKind::Zero, TimeSense::None};

  const Mat g = metric_at(metric, v.base);
  const double norm2 = v.components.dot(g * v.components);
  const double aux = v.components.squaredNorm();

  CausalKind kind = CausalKind::Spacelike;
  if (std::abs(norm2) <= null_tolerance * aux) {
    kind = CausalKind::Null;
  } else if (norm2 < 0) {
    kind = CausalKind::Timelike;
  }
  if (kind == CausalKind::Spacelike) return {kind, TimeSense::None};

  const double against_t = v.components.dot(g * metric.orientation(v.base));
  TimeSense sense = TimeSense::None;
  if (against_t < 0) sense = TimeSense::Future;
  if (against_t > 0) sense = TimeSense::Past;
  return {kind, sense};
}

ChartedMetric pullback_metric(const ChartMap& map, const ChartedMetric& metric, std::string label,
                              std::vector<std::string> coord_names) {
  if (!map.forward || !map.jacobian) {
    throw ConfigError("pullback: chart map needs forward and jacobian evaluators");
  }
  auto checked_jacobian = [map, name = label](const Point& y) {
    Mat j = map.jacobian(y);
    if (!j.allFinite() || std::abs(j.determinant()) <= map.det_threshold) {
      throw ChartError("pullback '" + name + "': singular jacobian at " + describe(y));
    }
    return j;
  };

  MetricDefinition def{
      .label = std::move(label),
      .coord_names = std::move(coord_names),
      .components =
          [map, metric, checked_jacobian](const Point& y) {
            const Mat j = checked_jacobian(y);
            const Mat g = metric.components(map.forward(y));
            Mat out = j.transpose() * g * j;
            return Mat(0.5 * (out + out.transpose()));
          },
      .orientation =
          [map, metric, checked_jacobian](const Point& y) {
            const Mat j = checked_jacobian(y);
            return Vec(j.inverse() * metric.orientation(map.forward(y)));
          },
      .domain =
          [map, metric](const Point& y) {
            if (map.domain && !map.domain(y)) return false;
            return metric.in_domain(map.forward(y));
          },
      .derivatives = {},
      .near_singularity =
          [map, metric](const Point& y) { return metric.near_singularity(map.forward(y)); },
  };
  return ChartedMetric(std::move(def));
}

}  // namespace lorentz
