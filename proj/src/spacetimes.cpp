#include "lorentz/spacetimes.hpp"

#include <cmath>

namespace lorentz {

namespace {

std::vector<std::string> cartesian_names(int n) {
  std::vector<std::string> names{"t"};
  if (n == 1) {
    names.emplace_back("x");
  } else {
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  }
  return names;
}

double spatial_radius(const Point& p) { return p.coords().tail(p.dim() - 1).norm(); }

Vec time_direction(const Point& p) {
  Vec v = Vec::Zero(p.dim());
  v[0] = 1.0;
  return v;
}

void require_spatial_dim(int n) {
  if (n < 1 || n + 1 > kMaxDim) throw ConfigError("spatial dimension n must be in [1, 3]");
}

}  // namespace

// --- Minkowski ---------------------------------------------------------------

ChartedMetric minkowski(int n) {
  require_spatial_dim(n);
  const int d = n + 1;
  return ChartedMetric(MetricDefinition{
      .label = "minkowski",
      .coord_names = cartesian_names(n),
      .components =
          [d](const Point&) {
            Mat g = Mat::Identity(d, d);
            g(0, 0) = -1.0;
            return g;
          },
      .orientation = time_direction,
      .domain = {},
      .derivatives =
          [d](const Point&) {
            std::array<Mat, kMaxDim> dg;
            for (int k = 0; k < d; ++k) dg[k] = Mat::Zero(d, d);
            return dg;
          },
      .near_singularity = {},
  });
}

double hyperboloid_half_width(double a, double t) { return 0.5 * (a + std::sqrt(a * a + 4 * t * t)); }

double hyperboloid_half_width_rate(double a, double t) { return 2 * t / std::sqrt(a * a + 4 * t * t); }

CylinderDomain hyperboloid_cylinder(double a, int n) {
  require_spatial_dim(n);
  if (!(a > 0)) throw ConfigError("hyperboloid: a must be positive");
  return CylinderDomain{
      .label = "hyperboloid",
      .f =
          [a](const Point& p) {
            const double r = spatial_radius(p);
            return r * r - a * r - p[0] * p[0];
          },
      .df =
          [a](const Point& p) -> std::optional<Covector> {
            const double r = spatial_radius(p);
            if (r == 0.0) return std::nullopt;
            Covector w(p.dim());
            w[0] = -2 * p[0];
            for (int i = 1; i < p.dim(); ++i) w[i] = 2 * p[i] - a * p[i] / r;
            return w;
          },
  };
}

ChartMap hyperboloid_strip_chart(double a) {
  if (!(a > 0)) throw ConfigError("hyperboloid: a must be positive");
  return ChartMap{
      .forward = [a](const Point& y) { return Point{y[0], y[1] * hyperboloid_half_width(a, y[0])}; },
      .jacobian =
          [a](const Point& y) {
            Mat j(2, 2);
            j << 1.0, 0.0, y[1] * hyperboloid_half_width_rate(a, y[0]), hyperboloid_half_width(a, y[0]);
            return j;
          },
      .domain = {},
  };
}

Region diamond_region(double a, int n) {
  require_spatial_dim(n);
  auto inside = [a](const Point& p) { return std::abs(p[0]) + spatial_radius(p) < a / 2; };
  return Region{
      .label = "diamond",
      .indicator = inside,
      .sampler =
          [a, n, inside](Rng& rng) {
            Vec c(n + 1);
            while (true) {
              for (int i = 0; i <= n; ++i) c[i] = uniform(rng, -a / 2, a / 2);
              Point p(c);
              if (inside(p)) return p;
            }
          },
  };
}

CylinderDomain ball_cylinder(double radius, int n, std::string label) {
  require_spatial_dim(n);
  return CylinderDomain{
      .label = std::move(label),
      .f = [radius](const Point& p) { return spatial_radius(p) - radius; },
      .df = [](const Point& p) -> std::optional<Covector> {
        const double r = spatial_radius(p);
        if (r == 0.0) return std::nullopt;
        Covector w = Covector::Zero(p.dim());
        for (int i = 1; i < p.dim(); ++i) w[i] = p[i] / r;
        return w;
      },
  };
}

Region ball_region(const Point& center, double radius, std::string label) {
  auto inside = [center, radius](const Point& p) {
    return (p.coords() - center.coords()).norm() < radius;
  };
  return Region{
      .label = std::move(label),
      .indicator = inside,
      .sampler =
          [center, radius, inside](Rng& rng) {
            const int d = center.dim();
            Vec c(d);
            while (true) {
              for (int i = 0; i < d; ++i) c[i] = center[i] + uniform(rng, -radius, radius);
              Point p(c);
              if (inside(p)) return p;
            }
          },
  };
}

// --- de Sitter patch, cutoff, perturbation -------------------------------------

ChartedMetric de_sitter_patch(double curvature_radius, double pole, int n) {
  require_spatial_dim(n);
  if (!(curvature_radius > 0)) throw ConfigError("de Sitter: R_c must be positive");
  const double r2 = curvature_radius * curvature_radius;
  auto factor = [r2, pole](const Point& p) {
    const double s = p[0] - pole;
    return r2 / (s * s);
  };
  const int d = n + 1;
  FoliatedMetric foliated(
      "de-sitter", cartesian_names(n), factor,
      [factor, n](const Point& p) { return Mat(factor(p) * Mat::Identity(n, n)); },
      [pole](const Point& p) { return p[0] != pole && std::isfinite(1.0 / (p[0] - pole)); },
      [r2, pole, d](const Point& p) {
        const double s = p[0] - pole;
        const double dfac = -2 * r2 / (s * s * s);
        std::array<Mat, kMaxDim> dg;
        for (int k = 0; k < d; ++k) dg[k] = Mat::Zero(d, d);
        dg[0] = dfac * Mat::Identity(d, d);
        dg[0](0, 0) = -dfac;
        return dg;
      });
  return foliated.metric();
}

double smooth_step(double s) {
  if (s <= 0) return 1.0;
  if (s >= 1) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - s));
  const double b = std::exp(-1.0 / s);
  return a / (a + b);
}

BumpCutoff::BumpCutoff(Point center, double inner_radius, double outer_radius)
    : center_(std::move(center)), r_in_(inner_radius), r_out_(outer_radius) {
  if (!(r_in_ > 0) || !(r_out_ > r_in_)) {
    throw ConfigError("bump cutoff: radii must satisfy 0 < r_in < r_out");
  }
}

double BumpCutoff::distance(const Point& p) const { return (p.coords() - center_.coords()).norm(); }

double BumpCutoff::operator()(const Point& p) const {
  return smooth_step((distance(p) - r_in_) / (r_out_ - r_in_));
}

BumpCutoff bump_cutoff(const Point& center, double inner_radius, double outer_radius) {
  return BumpCutoff(center, inner_radius, outer_radius);
}

std::vector<Point> support_samples(const BumpCutoff& cutoff, int per_axis) {
  const int d = cutoff.center().dim();
  const double r = cutoff.outer_radius();
  std::vector<Point> out;
  std::vector<int> idx(d, 0);
  while (true) {
    Vec c(d);
    for (int i = 0; i < d; ++i) {
      c[i] = cutoff.center()[i] - r + 2 * r * idx[i] / (per_axis - 1.0);
    }
    Point p(c);
    if (cutoff.in_support(p)) out.push_back(p);
    int k = 0;
    while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == d) break;
  }
  return out;
}

bool support_within_region(const PerturbationSpec& spec, int per_axis) {
  for (const Point& p : support_samples(spec.cutoff, per_axis)) {
    if (!spec.region.indicator(p)) return false;
  }
  return true;
}

namespace {

bool block_diagonal(const Mat& g) {
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  for (int i = 1; i < g.rows(); ++i) {
    if (std::abs(g(0, i)) > 1e-12 * scale) return false;
  }
  return true;
}

}  // namespace

ChartedMetric perturbed_metric(const PerturbationSpec& spec) {
  const ChartedMetric& g = spec.base;
  const ChartedMetric& h = spec.patch;
  const BumpCutoff& chi = spec.cutoff;
  if (g.dim() != h.dim() || chi.center().dim() != g.dim()) {
    throw ConfigError("perturbation: metric and cutoff dimensions differ");
  }

  const int per_axis = g.dim() <= 2 ? 41 : (g.dim() == 3 ? 15 : 9);
  for (const Point& p : support_samples(chi, per_axis)) {
    const Mat gp = metric_at(g, p);
    const Mat hp = metric_at(h, p);
    if (!block_diagonal(gp) || !block_diagonal(hp)) {
      throw SignatureError("perturbation: metrics are not block-diagonal in the shared time "
                           "coordinate on supp chi");
    }
    const double c = chi(p);
    const Mat mixed = (1 - c) * gp + c * hp;
    if (!is_lorentzian(mixed)) {
      throw SignatureError("perturbation: convex combination is not Lorentzian on supp chi");
    }
    if (!(mixed.inverse()(0, 0) < 0)) {
      throw SignatureError("perturbation: dtau is not timelike for g'");
    }
  }

  return ChartedMetric(MetricDefinition{
      .label = g.label() + "+bump(" + h.label() + ")",
      .coord_names = g.coord_names(),
      .components =
          [g, h, chi](const Point& p) {
            const double c = chi(p);
            if (c == 0.0) return g.components(p);
            if (c == 1.0) return h.components(p);
            return Mat((1 - c) * g.components(p) + c * h.components(p));
          },
      .orientation = time_direction,
      .domain =
          [g, h, chi](const Point& p) {
            if (!g.in_domain(p)) return false;
            return chi(p) == 0.0 || h.in_domain(p);
          },
      .derivatives = {},
      .near_singularity = [g](const Point& p) { return g.near_singularity(p); },
  });
}

}  // namespace lorentz
