#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/geometry.hpp"

namespace lorentz {

// M = {f <= 0}, boundary {f = 0}. df may be undefined at isolated points
// (kinks of |x|), reported as nullopt.
struct CylinderDomain {
  std::string label;
  std::function<double(const Point&)> f;
  std::function<std::optional<Covector>(const Point&)> df;
};

// Open set with a seeded sampler of interior points.
struct Region {
  std::string label;
  std::function<bool(const Point&)> indicator;
  std::function<Point(Rng&)> sampler;
};

// Smooth cutoff: 1 on the closed ball of radius r_in, 0 outside the ball of
// radius r_out (Euclidean distance in chart coordinates).
class BumpCutoff {
 public:
  BumpCutoff(Point center, double inner_radius, double outer_radius);

  double operator()(const Point& p) const;
  const Point& center() const { return center_; }
  double inner_radius() const { return r_in_; }
  double outer_radius() const { return r_out_; }

  double distance(const Point& p) const;
  bool in_core(const Point& p) const { return distance(p) <= r_in_; }
  bool in_support(const Point& p) const { return distance(p) < r_out_; }

 private:
  Point center_;
  double r_in_;
  double r_out_;
};

// Smooth step: 1 for s <= 0, 0 for s >= 1, strictly decreasing in between.
double smooth_step(double s);

struct PerturbationSpec {
  ChartedMetric base;   // g
  ChartedMetric patch;  // h (its own formula serves as the extension h')
  BumpCutoff cutoff;    // chi
  Region region;        // U
};

// --- Minkowski and the hyperboloid cylinder -------------------------------

ChartedMetric minkowski(int n);

// f(t,x) = |x|^2 - a|x| - t^2.
CylinderDomain hyperboloid_cylinder(double a, int n);
// b(t) = (a + sqrt(a^2 + 4t^2)) / 2, the half-width of M at time t.
double hyperboloid_half_width(double a, double t);
double hyperboloid_half_width_rate(double a, double t);
// (t, xi) -> (t, xi b(t)); maps the strip xi in [-1, 1] onto M (n = 1).
ChartMap hyperboloid_strip_chart(double a);

// U = {|t| + |x| < a/2}.
Region diamond_region(double a, int n);

// {|x| <= radius} in any chart whose first coordinate is time.
CylinderDomain ball_cylinder(double radius, int n, std::string label);
// Euclidean ball in all coordinates (t included).
Region ball_region(const Point& center, double radius, std::string label);

// --- Big Bounce FLRW --------------------------------------------------------

// -dt^2 + cosh^2(Ht) |dx|^2.
ChartedMetric flrw_bounce(double H, int n);
// a(eta)^2 (-deta^2 + |dx|^2) on eta in (0, pi/H).
ChartedMetric flrw_bounce_conformal(double H, int n);
// eta(t) = int_{-inf}^t sech(Ht') dt', in (0, pi/H).
double conformal_time(double H, double t);
// Inverse of conformal_time; eta must lie in (0, pi/H).
double cosmic_time(double H, double eta);
// (eta, x) -> (t(eta), x).
ChartMap flrw_conformal_chart(double H, int n);

// U = {|x| < eta(t) + R - pi/H} (future-unreachable) and
// U' = {|x| < R - eta(t)} (past-unreachable), both inside {|x| < R}.
Region flrw_future_region(double H, double R, int n);
Region flrw_past_region(double H, double R, int n);

// --- Schwarzschild / Kruskal -------------------------------------------------

// Radial Kruskal plane (T, R): (4 r_S^3 / r) e^{-r/r_S} (-dT^2 + dR^2).
ChartedMetric kruskal_metric(double r_s);
// Unique r > 0 with (1 - r/r_S) e^{r/r_S} = T^2 - R^2.
double kruskal_r(double T, double R, double r_s);
struct KruskalCoordinates {
  double T;
  double R;
};
// Exterior patch r > r_S.
KruskalCoordinates schwarzschild_to_kruskal(double t, double r, double r_s);
bool in_black_hole(const Point& p, double r_s);
bool in_white_hole(const Point& p, double r_s);
Region black_hole_region(double r_s);
Region white_hole_region(double r_s);
// f = r(T,R) - r0, so M = {r <= r0}.
CylinderDomain schwarzschild_cylinder(double r_s, double r0);
// Full (t, r, theta, phi) exterior chart, r > r_S.
ChartedMetric schwarzschild_exterior(double r_s);

// --- de Sitter patch and the perturbed metric -------------------------------

// (R_c^2 / (tau - pole)^2)(-dtau^2 + |dx|^2); the hyperplane tau = pole is
// excluded from the chart.
ChartedMetric de_sitter_patch(double curvature_radius, double pole, int n);

BumpCutoff bump_cutoff(const Point& center, double inner_radius, double outer_radius);

// Points sampled over the support ball of a cutoff (grid with `per_axis`
// points along each axis, restricted to the ball).
std::vector<Point> support_samples(const BumpCutoff& cutoff, int per_axis);

// True when every sample of supp chi lies in the region.
bool support_within_region(const PerturbationSpec& spec, int per_axis = 21);

// g' = (1 - chi) g + chi h. Equals g exactly where chi = 0 and h exactly where
// chi = 1. Validates block-diagonality of g and h and the Lorentzian
// signature of g' over supp chi; throws SignatureError otherwise.
ChartedMetric perturbed_metric(const PerturbationSpec& spec);

}  // namespace lorentz
