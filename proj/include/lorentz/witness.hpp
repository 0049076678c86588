#pragma once

#include <string>
#include <vector>

#include "lorentz/geometry.hpp"
#include "lorentz/spacetimes.hpp"

namespace lorentz {

// Rectangular lattice [lo, hi] with counts[i] nodes along axis i.
struct SampleGrid {
  Point lo;
  Point hi;
  std::vector<int> counts;

  int dim() const { return lo.dim(); }
  std::size_t size() const;
  double spacing(int axis) const;
  // Node with multi-index decoded from `flat` (axis 0 varies slowest).
  Point node(std::size_t flat) const;
};

struct CurvatureScan {
  std::string label;
  SampleGrid grid;
  std::vector<Point> points;
  std::vector<double> values;          // S
  std::vector<double> gradient_norms;  // Euclidean |dS| from lattice differences
};

// S at every lattice node, gradient by central differences of the S field
// (one-sided on the lattice faces).
CurvatureScan curvature_scan(const ChartedMetric& metric, const SampleGrid& grid,
                             double h = kDefaultStep);

enum class WitnessStatus { NonIsometric, Inconclusive, NotApplicable };
std::string to_string(WitnessStatus s);

struct WitnessOptions {
  double tol_c = 1e-4;
  double delta = 1e-3;  // band half-width, 10 tol_c
  double eps0 = 1e-3;   // near-critical threshold on |dS|, coordinate units
  double h = kDefaultStep;
};

struct WitnessVerdict {
  double c = 0.0;  // mean S_g' over the core
  double constancy_residual = 0.0;
  // min |dS_g| over the band {|S_g - c| < delta}; +inf when the band is empty
  double regularity_margin = 0.0;
  int core_points = 0;
  int band_points = 0;
  bool perturbed_field_finite = true;
  WitnessStatus status = WitnessStatus::Inconclusive;
  bool verdict = false;
  CurvatureScan base;
  CurvatureScan perturbed;
};

// Critical-value test: S_g' is constant (= c) on the core of the bump; if c
// is not a near-critical value of S_g on the scanned window, g and g' are
// not isometric. A false verdict only means the test is inconclusive.
// Throws GridError when no lattice node lies in the core.
WitnessVerdict non_isometry_witness(const ChartedMetric& g, const ChartedMetric& g_prime,
                                    const BumpCutoff& bump, const SampleGrid& grid,
                                    const WitnessOptions& options = {});

}  // namespace lorentz
