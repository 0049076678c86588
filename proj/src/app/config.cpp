#include "lorentz/app/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace lorentz::app {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += (out.empty() ? "" : "; ") + l;
  return out;
}

// Collects problems instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> problems;

  void keys(const json& obj, const std::string& path, std::set<std::string> allowed) {
    if (!obj.is_object()) {
      problems.push_back(path + ": expected object");
      return;
    }
    for (const auto& [k, v] : obj.items()) {
      if (!allowed.count(k)) problems.push_back(path + "." + k + ": unknown key");
    }
  }

  void number(const json& obj, const std::string& key, const std::string& path, double& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) {
      problems.push_back(path + "." + key + ": expected number");
      return;
    }
    out = v.get<double>();
    if (!std::isfinite(out)) problems.push_back(path + "." + key + ": must be finite");
  }

  void positive(const json& obj, const std::string& key, const std::string& path, double& out) {
    const std::size_t before = problems.size();
    number(obj, key, path, out);
    if (problems.size() == before && obj.contains(key) && !(out > 0)) {
      problems.push_back(path + "." + key + ": must be > 0");
    }
  }

  template <class Int>
  void integer(const json& obj, const std::string& key, const std::string& path, Int& out,
               long long lo, long long hi) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      problems.push_back(path + "." + key + ": expected integer");
      return;
    }
    const long long x = v.get<long long>();
    if (x < lo || x > hi) {
      std::ostringstream os;
      os << path << "." << key << ": must lie in [" << lo << ", " << hi << "]";
      problems.push_back(os.str());
      return;
    }
    out = static_cast<Int>(x);
  }

  void string(const json& obj, const std::string& key, const std::string& path, std::string& out,
              const std::set<std::string>& choices = {}) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_string()) {
      problems.push_back(path + "." + key + ": expected string");
      return;
    }
    out = v.get<std::string>();
    if (!choices.empty() && !choices.count(out)) {
      std::string list;
      for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
      problems.push_back(path + "." + key + ": must be one of " + list);
    }
  }

  void pulse(const json& obj, const std::string& key, const std::string& path, PulseParams& out) {
    if (!obj.contains(key)) return;
    const json& p = obj.at(key);
    const std::string sub = path + "." + key;
    keys(p, sub, {"center", "half_width", "amplitude"});
    if (!p.is_object()) return;
    number(p, "center", sub, out.center);
    positive(p, "half_width", sub, out.half_width);
    number(p, "amplitude", sub, out.amplitude);
  }
};

}  // namespace

ConfigInvalid::ConfigInvalid(std::vector<std::string> problems)
    : std::runtime_error("invalid config: " + join(problems)), problems_(std::move(problems)) {}

RunConfig parse_config(const json& doc) {
  RunConfig c;
  Reader r;
  r.keys(doc, "config",
         {"scenario", "n", "geometry", "bump", "scan", "waves", "witness", "output_dir"});

  r.string(doc, "scenario", "config", c.scenario, {"hyperboloid", "flrw", "flrw-bounce", "kruskal"});
  if (c.scenario == "flrw-bounce") c.scenario = "flrw";
  r.integer(doc, "n", "config", c.n, 1, 3);
  r.string(doc, "output_dir", "config", c.output_dir);

  if (doc.contains("geometry")) {
    const json& g = doc.at("geometry");
    r.keys(g, "config.geometry", {"a", "H", "R_cylinder", "r_s", "r0"});
    if (g.is_object()) {
      r.positive(g, "a", "config.geometry", c.a);
      r.positive(g, "H", "config.geometry", c.H);
      r.positive(g, "R_cylinder", "config.geometry", c.R_cylinder);
      r.positive(g, "r_s", "config.geometry", c.r_s);
      r.positive(g, "r0", "config.geometry", c.r0);
    }
  }

  if (doc.contains("bump")) {
    const json& b = doc.at("bump");
    r.keys(b, "config.bump", {"center", "r_in", "r_out", "R_c", "pole"});
    if (b.is_object()) {
      if (b.contains("center")) {
        const json& ctr = b.at("center");
        if (!ctr.is_array() || ctr.empty() || ctr.size() > 4) {
          r.problems.push_back("config.bump.center: expected array of 1 to 4 numbers");
        } else {
          c.bump.center.clear();
          for (const json& x : ctr) {
            if (!x.is_number()) {
              r.problems.push_back("config.bump.center: expected numbers");
              break;
            }
            c.bump.center.push_back(x.get<double>());
          }
        }
      }
      r.positive(b, "r_in", "config.bump", c.bump.r_in);
      r.positive(b, "r_out", "config.bump", c.bump.r_out);
      r.positive(b, "R_c", "config.bump", c.bump.curvature_radius);
      r.number(b, "pole", "config.bump", c.bump.pole);
    }
  }

  if (doc.contains("scan")) {
    const json& s = doc.at("scan");
    r.keys(s, "config.scan",
           {"rays", "seed", "tol", "drift_tolerance", "timelike_fraction", "directions_per_point"});
    if (s.is_object()) {
      r.integer(s, "rays", "config.scan", c.scan.rays, 1, 1000000);
      r.integer(s, "seed", "config.scan", c.scan.seed, 0, std::numeric_limits<long long>::max());
      r.positive(s, "tol", "config.scan", c.scan.tol);
      r.positive(s, "drift_tolerance", "config.scan", c.scan.drift_tolerance);
      r.number(s, "timelike_fraction", "config.scan", c.scan.timelike_fraction);
      if (c.scan.timelike_fraction < 0 || c.scan.timelike_fraction > 1) {
        r.problems.push_back("config.scan.timelike_fraction: must lie in [0, 1]");
      }
      r.integer(s, "directions_per_point", "config.scan", c.scan.directions_per_point, 1, 1000);
    }
  }

  if (doc.contains("waves")) {
    const json& w = doc.at("waves");
    r.keys(w, "config.waves", {"levels", "strip_nx", "ambient_nx", "phi_left", "phi_right"});
    if (w.is_object()) {
      r.integer(w, "levels", "config.waves", c.waves.levels, 1, 5);
      r.integer(w, "strip_nx", "config.waves", c.waves.strip_nx, 17, 4097);
      r.integer(w, "ambient_nx", "config.waves", c.waves.ambient_nx, 17, 8193);
      r.pulse(w, "phi_left", "config.waves", c.waves.phi_left);
      r.pulse(w, "phi_right", "config.waves", c.waves.phi_right);
    }
  }

  if (doc.contains("witness")) {
    const json& w = doc.at("witness");
    r.keys(w, "config.witness", {"half_width", "per_axis", "tol_c", "delta", "eps0"});
    if (w.is_object()) {
      r.positive(w, "half_width", "config.witness", c.witness.half_width);
      r.integer(w, "per_axis", "config.witness", c.witness.per_axis, 3, 401);
      r.positive(w, "tol_c", "config.witness", c.witness.tol_c);
      r.positive(w, "delta", "config.witness", c.witness.delta);
      r.positive(w, "eps0", "config.witness", c.witness.eps0);
    }
  }

  if (!r.problems.empty()) throw ConfigInvalid(r.problems);
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid({path + ": cannot open"});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid({path + ": " + e.what()});
  }
  return parse_config(doc);
}

double cylinder_radius(const RunConfig& c) {
  return c.R_cylinder > 0 ? c.R_cylinder : std::numbers::pi / c.H + 0.5;
}

void validate(const RunConfig& c) {
  std::vector<std::string> p;
  if (c.n < 1 || c.n > 3) p.push_back("n: must lie in [1, 3]");
  if (!(c.a > 0)) p.push_back("geometry.a: must be > 0");
  if (!(c.H > 0)) p.push_back("geometry.H: must be > 0");
  if (!(c.r_s > 0)) p.push_back("geometry.r_s: must be > 0");
  if (c.scenario == "flrw" && !(cylinder_radius(c) > std::numbers::pi / c.H)) {
    p.push_back("geometry.R_cylinder: must exceed pi/H");
  }
  if (c.scenario == "kruskal" && !(c.r0 > c.r_s)) p.push_back("geometry.r0: must exceed r_s");
  if (!(c.bump.r_in > 0 && c.bump.r_in < c.bump.r_out)) {
    p.push_back("bump: need 0 < r_in < r_out");
  }
  if (!c.bump.center.empty() && static_cast<int>(c.bump.center.size()) != c.n + 1) {
    p.push_back("bump.center: needs n + 1 coordinates");
  }
  if (c.waves.levels < 1) p.push_back("waves.levels: must be >= 1");
  if (c.witness.per_axis < 3) p.push_back("witness.per_axis: must be >= 3");
  if (!p.empty()) throw ConfigInvalid(p);
}

json to_json(const RunConfig& c) {
  auto pulse = [](const PulseParams& p) {
    return json{{"center", p.center}, {"half_width", p.half_width}, {"amplitude", p.amplitude}};
  };
  std::vector<double> center = c.bump.center;
  if (center.empty()) center.assign(c.n + 1, 0.0);
  return json{
      {"scenario", c.scenario},
      {"n", c.n},
      {"geometry",
       {{"a", c.a}, {"H", c.H}, {"R_cylinder", cylinder_radius(c)}, {"r_s", c.r_s}, {"r0", c.r0}}},
      {"bump",
       {{"center", center},
        {"r_in", c.bump.r_in},
        {"r_out", c.bump.r_out},
        {"R_c", c.bump.curvature_radius},
        {"pole", c.bump.pole}}},
      {"scan",
       {{"rays", c.scan.rays},
        {"seed", c.scan.seed},
        {"tol", c.scan.tol},
        {"drift_tolerance", c.scan.drift_tolerance},
        {"timelike_fraction", c.scan.timelike_fraction},
        {"directions_per_point", c.scan.directions_per_point}}},
      {"waves",
       {{"levels", c.waves.levels},
        {"strip_nx", c.waves.strip_nx},
        {"ambient_nx", c.waves.ambient_nx},
        {"phi_left", pulse(c.waves.phi_left)},
        {"phi_right", pulse(c.waves.phi_right)}}},
      {"witness",
       {{"half_width", c.witness.half_width},
        {"per_axis", c.witness.per_axis},
        {"tol_c", c.witness.tol_c},
        {"delta", c.witness.delta},
        {"eps0", c.witness.eps0}}},
      {"output_dir", c.output_dir},
  };
}

}  // namespace lorentz::app
