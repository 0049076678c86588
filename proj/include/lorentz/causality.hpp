#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/geometry.hpp"
#include "lorentz/spacetimes.hpp"

namespace lorentz {

enum class Termination { BoundaryHit, ParameterLimit, ChartExit, SingularityApproach };
enum class Direction { Future, Past };

std::string to_string(Termination t);
std::string to_string(Direction d);

struct PathSample {
  double s;
  Point point;
  Vec velocity;
};

struct GeodesicPath {
  std::vector<PathSample> samples;
  double initial_norm = 0.0;      // c0 = g(v0, v0)
  double constraint_drift = 0.0;  // max |g(v,v) - c0|
  // constraint_drift / sum |g_mn v^m v^n| at the initial point
  double relative_drift = 0.0;
  Termination termination = Termination::ParameterLimit;
  int accepted_steps = 0;
  int rejected_steps = 0;
};

struct IntegrationOptions {
  double s_max = 100.0;
  // Local error per component <= abs_tol + tol * |y|.
  double tol = 1e-10;
  double abs_tol = 1e-10;
  double h_init = 1e-2;
  double h_max = 1e300;
  double h_min = 1e-12;  // relative to max(1, |s|)
  int max_steps = 100000;
  double fd_step = kDefaultStep;
  // Stop right after the first sample with f > 0.
  const CylinderDomain* stop_on_exit = nullptr;
  // Stop once the metric reports a nearby singularity.
  bool stop_near_singularity = true;
  // Extra stop condition, reported as ParameterLimit.
  std::function<bool(const Point&, const Vec&)> stop_when;
};

// Geodesic equation x'' + Gamma(x', x') = 0 by the Dormand-Prince 5(4) pair
// with local error control. The initial tangent must be timelike or null.
GeodesicPath integrate_geodesic(const ChartedMetric& metric, const Point& p, const Vec& v,
                                const IntegrationOptions& options = {});

// Cubic Hermite position on the step [samples[i], samples[i+1]].
Point interpolate(const GeodesicPath& path, std::size_t i, double s);

struct BoundaryHit {
  double s;
  Point point;
};

// First crossing of f = 0 (from f < 0 to f >= 0) along the path, refined on
// the Hermite interpolant to |f| <= 1e-10. Throws PreconditionError when the
// path starts outside M.
std::optional<BoundaryHit> boundary_hit(const GeodesicPath& path, const CylinderDomain& cyl);

// Max of f over the samples plus `subdivisions` interior Hermite points per step.
double max_boundary_function(const GeodesicPath& path, const CylinderDomain& cyl,
                             int subdivisions = 4);

// Null tangent at p with given spatial direction e (chart components) and
// time sense; solves g(v, v) = 0 for v = (v0, e).
Vec null_tangent(const ChartedMetric& metric, const Point& p, const Vec& spatial, Direction dir);

struct RayOutcome {
  int index = 0;
  int point_index = 0;
  bool timelike = false;
  Point start;
  Vec initial_tangent;
  bool hit = false;
  double s_hit = 0.0;
  double max_f = 0.0;
  double s_end = 0.0;
  Point end;
  Termination termination = Termination::ParameterLimit;
  double relative_drift = 0.0;
};

struct ScanOptions {
  int points = 1000;
  std::uint64_t seed = 42;
  // Spatial directions per point for n > 1; in 1+1 the directions are +-1.
  int directions_per_point = 8;
  double timelike_fraction = 0.1;
  IntegrationOptions integration;
  double drift_tolerance = 1e-8;
  int witness_samples_limit = 2000;
  // Called once per ray, in ray order.
  std::function<void(const RayOutcome&, const GeodesicPath&)> ray_observer;
};

struct ReachabilityReport {
  std::string label;
  Direction direction = Direction::Future;
  int rays_total = 0;
  int rays_hit_boundary = 0;
  // Max of f over all rays; negative means every ray stayed inside M.
  double min_boundary_clearance = 0.0;
  double max_relative_drift = 0.0;
  int drift_violations = 0;
  std::map<std::string, int> terminations;
  std::uint64_t seed = 0;
  std::vector<RayOutcome> rays;
  // Ray attaining min_boundary_clearance, and the first hitting ray if any.
  std::optional<GeodesicPath> extremal_path;
  std::optional<GeodesicPath> hitting_path;

  bool confined() const { return rays_hit_boundary == 0; }
};

ReachabilityReport reachability_scan(const ChartedMetric& metric, const CylinderDomain& cyl,
                                     const Region& region, Direction dir,
                                     const ScanOptions& options);

struct KruskalConfinementReport {
  ReachabilityReport black_hole;  // future-directed, from {r < r_S, T > 0}
  ReachabilityReport white_hole;  // past-directed, from {r < r_S, T < 0}
  // Samples where T^2 - R^2 failed to increase along the causal direction.
  int monotonicity_violations = 0;
  double r_s = 0.0;
  double r0 = 0.0;

  bool confined() const {
    return black_hole.confined() && white_hole.confined() && monotonicity_violations == 0;
  }
};

KruskalConfinementReport kruskal_confinement_check(double r_s, double r0, const ScanOptions& options);

struct InvarianceVerdict {
  ReachabilityReport base;
  ReachabilityReport perturbed;
  bool support_in_region = true;
  int ray_mismatches = 0;  // rays whose hit / no-hit outcome differs
  double max_endpoint_difference = 0.0;
  bool identical_verdicts() const { return base.confined() == perturbed.confined(); }
  bool passed() const { return support_in_region && ray_mismatches == 0 && identical_verdicts(); }
};

// Same scan under two metrics with identical seeds and initial data.
InvarianceVerdict compare_reachability(const ChartedMetric& g, const ChartedMetric& g_prime,
                                       const CylinderDomain& cyl, const Region& region,
                                       Direction dir, const ScanOptions& options);

// Builds g' from the spec and checks supp chi against U before comparing.
InvarianceVerdict perturbation_reachability_invariance(const PerturbationSpec& spec,
                                                       const CylinderDomain& cyl, Direction dir,
                                                       const ScanOptions& options);

}  // namespace lorentz
