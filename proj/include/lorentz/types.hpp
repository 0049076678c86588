#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include <Eigen/Dense>

namespace lorentz {

// Largest spacetime dimension handled (1+3). Small fixed-capacity Eigen types
// keep metric evaluation free of heap allocation.
inline constexpr int kMaxDim = 4;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using Covector = Vec;

// Coordinates of a point in a named chart. Entries are always finite.
class Point {
 public:
  Point() = default;
  explicit Point(Vec coords);
  Point(std::initializer_list<double> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }
  const Vec& coords() const { return coords_; }

  Point shifted(int axis, double delta) const;
  Point operator+(const Vec& v) const;

 private:
  Vec coords_;
};

// A vector in T_p M, components in the chart basis.
struct Tangent {
  Point base;
  Vec components;
};

// Deterministic, platform-independent sampling. std::mt19937_64 is fully
// specified by the standard; the distributions below avoid the
// implementation-defined std:: distributions.
using Rng = std::mt19937_64;

double uniform01(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
double standard_normal(Rng& rng);

}  // namespace lorentz
