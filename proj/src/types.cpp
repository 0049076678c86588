#include "lorentz/types.hpp"

#include <cmath>
#include <numbers>

#include "lorentz/errors.hpp"

namespace lorentz {

namespace {

void require_finite(const Vec& c) {
  if (c.size() < 1 || c.size() > kMaxDim) {
    throw DomainError("point dimension must be between 1 and 4");
  }
  if (!c.allFinite()) {
    throw DomainError("point has non-finite coordinates");
  }
}

}  // namespace

Point::Point(Vec coords) : coords_(std::move(coords)) { require_finite(coords_); }

Point::Point(std::initializer_list<double> coords) {
  coords_.resize(static_cast<Eigen::Index>(coords.size()));
  int i = 0;
  for (double c : coords) coords_[i++] = c;
  require_finite(coords_);
}

Point Point::shifted(int axis, double delta) const {
  Vec c = coords_;
  c[axis] += delta;
  return Point(c);
}

Point Point::operator+(const Vec& v) const { return Point(Vec(coords_ + v)); }

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

double standard_normal(Rng& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace lorentz
