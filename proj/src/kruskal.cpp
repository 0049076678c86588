#include <cmath>
#include <numbers>

#include "lorentz/spacetimes.hpp"

namespace lorentz {

namespace {

void require_radius(double r_s) {
  if (!(r_s > 0) || !std::isfinite(r_s)) throw ConfigError("Schwarzschild: r_S must be positive");
}

// F(rho) = (1 - rho) e^rho, strictly decreasing on rho > 0 from 1 to -inf.
double kruskal_F(double rho) { return (1 - rho) * std::exp(rho); }

double conformal_factor(double r, double r_s) { return 4 * r_s * r_s * r_s / r * std::exp(-r / r_s); }

}  // namespace

double kruskal_r(double T, double R, double r_s) {
  require_radius(r_s);
  const double w = T * T - R * R;
  if (!(w < 1)) throw DomainError("Kruskal: T^2 - R^2 >= 1 lies beyond the singularity");

  // Bracket rho in (lo, hi) with F(lo) > w > F(hi).
  double lo = 0.0;
  double hi = 1.0;
  while (kruskal_F(hi) > w) {
    lo = hi;
    hi *= 2;
  }
  double rho = w >= 0 ? 0.5 * (lo + hi) : hi;
  const double scale = std::max(1.0, std::abs(w));
  for (int it = 0; it < 200; ++it) {
    const double res = kruskal_F(rho) - w;
    if (std::abs(res) <= 1e-15 * scale) break;
    if (res > 0) {
      lo = rho;
    } else {
      hi = rho;
    }
    const double dF = -rho * std::exp(rho);
    double next = dF != 0.0 ? rho - res / dF : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == rho || hi - lo <= 1e-16 * hi) break;
    rho = next;
  }
  return rho * r_s;
}

ChartedMetric kruskal_metric(double r_s) {
  require_radius(r_s);
  auto inside = [](const Point& p) { return p[0] * p[0] - p[1] * p[1] < 1.0; };
  return ChartedMetric(MetricDefinition{
      .label = "kruskal",
      .coord_names = {"T", "R"},
      .components =
          [r_s](const Point& p) {
            const double omega = conformal_factor(kruskal_r(p[0], p[1], r_s), r_s);
            Mat g(2, 2);
            g << -omega, 0.0, 0.0, omega;
            return g;
          },
      .orientation = [](const Point&) { return Vec(Vec::Unit(2, 0)); },
      .domain = inside,
      .derivatives =
          [r_s](const Point& p) {
            const double T = p[0];
            const double R = p[1];
            const double r = kruskal_r(T, R, r_s);
            const double omega = conformal_factor(r, r_s);
            const double domega_dr = -omega * (1 / r + 1 / r_s);
            const double k = 2 * r_s * r_s / (r * std::exp(r / r_s));
            const double dr[2] = {-k * T, k * R};
            std::array<Mat, kMaxDim> dg;
            for (int a = 0; a < 2; ++a) {
              const double d = domega_dr * dr[a];
              dg[a] = Mat(2, 2);
              dg[a] << -d, 0.0, 0.0, d;
            }
            return dg;
          },
      .near_singularity = [](const Point& p) { return p[0] * p[0] - p[1] * p[1] > 1 - 1e-6; },
  });
}

KruskalCoordinates schwarzschild_to_kruskal(double t, double r, double r_s) {
  require_radius(r_s);
  if (!(r > r_s)) throw DomainError("Schwarzschild exterior requires r > r_S");
  const double root = std::sqrt(r / r_s - 1);
  const double u = -root * std::exp((r - t) / (2 * r_s));
  const double v = root * std::exp((r + t) / (2 * r_s));
  return {0.5 * (v + u), 0.5 * (v - u)};
}

bool in_black_hole(const Point& p, double r_s) {
  const double w = p[0] * p[0] - p[1] * p[1];
  return p[0] > 0 && w > 0 && w < 1 && kruskal_r(p[0], p[1], r_s) < r_s;
}

bool in_white_hole(const Point& p, double r_s) {
  const double w = p[0] * p[0] - p[1] * p[1];
  return p[0] < 0 && w > 0 && w < 1 && kruskal_r(p[0], p[1], r_s) < r_s;
}

namespace {

Region hole_region(std::string label, double r_s, double sign) {
  require_radius(r_s);
  auto inside = [r_s, sign](const Point& p) {
    return sign > 0 ? in_black_hole(p, r_s) : in_white_hole(p, r_s);
  };
  return Region{
      .label = std::move(label),
      .indicator = inside,
      .sampler =
          [sign](Rng& rng) {
            // Uniform in (R, w) with w = T^2 - R^2 kept away from the horizon
            // and the singularity.
            const double R = uniform(rng, -2.0, 2.0);
            const double w = uniform(rng, 0.02, 0.95);
            return Point{sign * std::sqrt(w + R * R), R};
          },
  };
}

}  // namespace

Region black_hole_region(double r_s) { return hole_region("black-hole", r_s, 1.0); }
Region white_hole_region(double r_s) { return hole_region("white-hole", r_s, -1.0); }

CylinderDomain schwarzschild_cylinder(double r_s, double r0) {
  require_radius(r_s);
  if (!(r0 > r_s)) throw ConfigError("Schwarzschild cylinder requires r0 > r_S");
  return CylinderDomain{
      .label = "schwarzschild",
      .f = [r_s, r0](const Point& p) { return kruskal_r(p[0], p[1], r_s) - r0; },
      .df = [r_s](const Point& p) -> std::optional<Covector> {
        const double r = kruskal_r(p[0], p[1], r_s);
        const double k = 2 * r_s * r_s / (r * std::exp(r / r_s));
        Covector w(2);
        w << -k * p[0], k * p[1];
        return w;
      },
  };
}

ChartedMetric schwarzschild_exterior(double r_s) {
  require_radius(r_s);
  return ChartedMetric(MetricDefinition{
      .label = "schwarzschild-exterior",
      .coord_names = {"t", "r", "theta", "phi"},
      .components =
          [r_s](const Point& p) {
            const double r = p[1];
            const double s = std::sin(p[2]);
            const double lapse = 1 - r_s / r;
            Mat g = Mat::Zero(4, 4);
            g(0, 0) = -lapse;
            g(1, 1) = 1 / lapse;
            g(2, 2) = r * r;
            g(3, 3) = r * r * s * s;
            return g;
          },
      .orientation = [](const Point&) { return Vec(Vec::Unit(4, 0)); },
      .domain =
          [r_s](const Point& p) {
            return p[1] > r_s && p[2] > 0 && p[2] < std::numbers::pi;
          },
      .derivatives = {},
      .near_singularity = {},
  });
}

}  // namespace lorentz
