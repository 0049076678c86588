#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lorentz::app {

struct PulseParams {
  double center = 0.0;
  double half_width = 1.0;
  double amplitude = 1.0;
};

struct BumpParams {
  std::vector<double> center;  // empty: origin of the scenario's chart
  double r_in = 0.2;
  double r_out = 0.5;
  double curvature_radius = 1.0;  // R_c
  double pole = -1.5;
};

struct ScanParams {
  int rays = 1000;
  std::uint64_t seed = 42;
  double tol = 1e-11;
  double drift_tolerance = 1e-8;
  double timelike_fraction = 0.1;
  int directions_per_point = 8;
};

struct WaveParams {
  int levels = 3;
  int strip_nx = 257;
  int ambient_nx = 449;
  PulseParams phi_left{0.0, 1.0, 1.0};
  PulseParams phi_right{0.5, 1.0, 0.5};
};

struct WitnessParams {
  double half_width = 0.5;  // lattice is the box center +- half_width
  int per_axis = 41;
  double tol_c = 1e-4;
  double delta = 1e-3;
  double eps0 = 1e-3;
};

struct RunConfig {
  std::string scenario = "hyperboloid";  // hyperboloid | flrw | kruskal
  int n = 1;                             // spatial dimension
  double a = 2.0;
  double H = 1.0;
  double R_cylinder = 0.0;  // 0: pi/H + 0.5
  double r_s = 1.0;
  double r0 = 1.5;
  BumpParams bump;
  ScanParams scan;
  WaveParams waves;
  WitnessParams witness;
  std::string output_dir = "lorentz-out";
};

// Schema violation or inconsistent parameters; carries one line per problem.
class ConfigInvalid : public std::runtime_error {
 public:
  explicit ConfigInvalid(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Reads a config document, checking types, ranges and unknown keys.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

// Scenario preconditions (r0 > r_S, R > pi/H, bump radii, ...).
void validate(const RunConfig& config);

// Every field, defaults included.
nlohmann::json to_json(const RunConfig& config);

// R_cylinder with the default filled in.
double cylinder_radius(const RunConfig& config);

}  // namespace lorentz::app
