#include <cmath>
#include <numbers>

#include "lorentz/spacetimes.hpp"

namespace lorentz {

namespace {

void require_positive_rate(double H) {
  if (!(H > 0) || !std::isfinite(H)) throw ConfigError("FLRW: H must be positive");
}

std::vector<std::string> names(const std::string& time, int n) {
  std::vector<std::string> out{time};
  if (n == 1) {
    out.emplace_back("x");
  } else {
    for (int i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  }
  return out;
}

double spatial_radius(const Point& p) { return p.coords().tail(p.dim() - 1).norm(); }

std::array<Mat, kMaxDim> zero_derivatives(int d) {
  std::array<Mat, kMaxDim> dg;
  for (int k = 0; k < d; ++k) dg[k] = Mat::Zero(d, d);
  return dg;
}

}  // namespace

ChartedMetric flrw_bounce(double H, int n) {
  require_positive_rate(H);
  if (n < 1 || n + 1 > kMaxDim) throw ConfigError("FLRW: spatial dimension must be in [1, 3]");
  const int d = n + 1;
  FoliatedMetric foliated(
      "flrw-bounce", names("t", n), [](const Point&) { return 1.0; },
      [H, n](const Point& p) {
        const double c = std::cosh(H * p[0]);
        return Mat(c * c * Mat::Identity(n, n));
      },
      [H](const Point& p) { return std::isfinite(std::cosh(H * p[0])); },
      [H, d](const Point& p) {
        auto dg = zero_derivatives(d);
        const double ht = H * p[0];
        const double rate = 2 * H * std::cosh(ht) * std::sinh(ht);
        for (int i = 1; i < d; ++i) dg[0](i, i) = rate;
        return dg;
      });
  return foliated.metric();
}

double conformal_time(double H, double t) {
  require_positive_rate(H);
  // arccot(y) = atan(1/y), valued in (0, pi) on y > 0 and (-pi/2, 0) on y < 0
  const double y = std::sinh(H * t);
  if (t < 0) return -std::atan(1.0 / y) / H;
  return (std::numbers::pi - std::atan(1.0 / y)) / H;
}

double cosmic_time(double H, double eta) {
  require_positive_rate(H);
  const double pi = std::numbers::pi;
  if (!(eta > 0) || !(eta < pi / H)) {
    throw DomainError("conformal time must lie in (0, pi/H)");
  }
  // tan(H eta - pi/2) = -cot(H eta)
  double t = -std::asinh(1.0 / std::tan(H * eta)) / H;
  // Newton polish on the monotone map t -> eta(t), d eta/dt = sech(Ht).
  for (int k = 0; k < 3; ++k) {
    const double residual = conformal_time(H, t) - eta;
    if (residual == 0.0) break;
    const double step = residual * std::cosh(H * t);
    if (!std::isfinite(step)) break;
    t -= step;
  }
  return t;
}

ChartedMetric flrw_bounce_conformal(double H, int n) {
  require_positive_rate(H);
  if (n < 1 || n + 1 > kMaxDim) throw ConfigError("FLRW: spatial dimension must be in [1, 3]");
  const int d = n + 1;
  const double eta_max = std::numbers::pi / H;
  auto a2 = [H](const Point& p) {
    const double c = std::cosh(H * cosmic_time(H, p[0]));
    return c * c;
  };
  FoliatedMetric foliated(
      "flrw-bounce-conformal", names("eta", n), a2,
      [a2, n](const Point& p) { return Mat(a2(p) * Mat::Identity(n, n)); },
      [eta_max](const Point& p) { return p[0] > 0 && p[0] < eta_max; },
      [H, d](const Point& p) {
        auto dg = zero_derivatives(d);
        const double ht = H * cosmic_time(H, p[0]);
        const double c = std::cosh(ht);
        const double rate = 2 * H * c * c * std::sinh(ht);
        dg[0] = rate * Mat::Identity(d, d);
        dg[0](0, 0) = -rate;
        return dg;
      });
  return foliated.metric();
}

ChartMap flrw_conformal_chart(double H, int n) {
  require_positive_rate(H);
  const double eta_max = std::numbers::pi / H;
  return ChartMap{
      .forward =
          [H](const Point& y) {
            Vec c = y.coords();
            c[0] = cosmic_time(H, y[0]);
            return Point(c);
          },
      .jacobian =
          [H, n](const Point& y) {
            Mat j = Mat::Identity(n + 1, n + 1);
            j(0, 0) = std::cosh(H * cosmic_time(H, y[0]));
            return j;
          },
      .domain = [eta_max](const Point& y) { return y[0] > 0 && y[0] < eta_max; },
  };
}

namespace {

Region rejection_region(std::string label, double H, double R, int n,
                        std::function<bool(const Point&)> inside) {
  if (!(R > 0)) throw ConfigError("FLRW: region radius must be positive");
  if (n < 1 || n + 1 > kMaxDim) throw ConfigError("FLRW: spatial dimension must be in [1, 3]");
  // Both regions live inside |t| < 4/H up to a negligible sliver of conformal time.
  const double t_box = 4.0 / H;
  return Region{
      .label = std::move(label),
      .indicator = inside,
      .sampler =
          [inside, t_box, R, n](Rng& rng) {
            Vec c(n + 1);
            while (true) {
              c[0] = uniform(rng, -t_box, t_box);
              for (int i = 1; i <= n; ++i) c[i] = uniform(rng, -R, R);
              Point p(c);
              if (inside(p)) return p;
            }
          },
  };
}

}  // namespace

Region flrw_future_region(double H, double R, int n) {
  require_positive_rate(H);
  const double eta_max = std::numbers::pi / H;
  return rejection_region("flrw-future-unreachable", H, R, n, [H, R, eta_max](const Point& p) {
    const double r = spatial_radius(p);
    return r < R && r < conformal_time(H, p[0]) + R - eta_max;
  });
}

Region flrw_past_region(double H, double R, int n) {
  require_positive_rate(H);
  return rejection_region("flrw-past-unreachable", H, R, n, [H, R](const Point& p) {
    const double r = spatial_radius(p);
    return r < R && r < R - conformal_time(H, p[0]);
  });
}

}  // namespace lorentz
