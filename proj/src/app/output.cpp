#include "lorentz/app/output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numbers>

#include "lorentz/spacetimes.hpp"

namespace lorentz::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

CsvTable sampled(std::string name, std::vector<std::string> columns, int count, double lo, double hi,
                 const std::function<std::vector<double>(double)>& row) {
  CsvTable t{std::move(name), std::move(columns), {}};
  for (int i = 0; i < count; ++i) t.rows.push_back(row(lo + (hi - lo) * i / (count - 1)));
  return t;
}

std::vector<CsvTable> outlines(const json& config) {
  const std::string scenario = config.at("scenario");
  const json& geo = config.at("geometry");
  std::vector<CsvTable> out;
  if (scenario == "hyperboloid") {
    const double a = geo.at("a");
    out.push_back(sampled("hyperboloid_boundary", {"t", "x_right", "x_left"}, 601, -3.0, 3.0, [a](double t) {
      const double b = hyperboloid_half_width(a, t);
      return std::vector<double>{t, b, -b};
    }));
    out.push_back(CsvTable{"diamond_outline",
                           {"t", "x"},
                           {{0, a / 2}, {a / 2, 0}, {0, -a / 2}, {-a / 2, 0}, {0, a / 2}}});
  } else if (scenario == "kruskal") {
    const double rs = geo.at("r_s");
    const double r0 = geo.at("r0");
    out.push_back(sampled("kruskal_horizons", {"R", "T_future", "T_past"}, 401, -2.0, 2.0,
                          [](double R) { return std::vector<double>{R, std::abs(R), -std::abs(R)}; }));
    out.push_back(sampled("kruskal_singularity", {"R", "T_future", "T_past"}, 401, -2.0, 2.0, [](double R) {
      const double T = std::sqrt(1 + R * R);
      return std::vector<double>{R, T, -T};
    }));
    const double rho = r0 / rs;
    const double w0 = (1 - rho) * std::exp(rho);  // T^2 - R^2 on r = r0, negative
    out.push_back(sampled("kruskal_r0", {"T", "R_right", "R_left"}, 401, -2.0, 2.0, [w0](double T) {
      const double R = std::sqrt(T * T - w0);
      return std::vector<double>{T, R, -R};
    }));
  } else {
    const double H = geo.at("H");
    const double R = geo.at("R_cylinder");
    const double span = std::numbers::pi / H;
    out.push_back(sampled("flrw_cones", {"eta", "r_U", "r_U_prime", "r_cylinder"}, 401, 0.0, span,
                          [span, R](double eta) {
                            return std::vector<double>{eta, std::max(0.0, eta + R - span),
                                                       std::max(0.0, R - eta), R};
                          }));
  }
  return out;
}

}  // namespace

json make_report(const std::string& command, const RunConfig& config, const std::vector<SuiteResult>& suites) {
  json list = json::array();
  bool passed = true;
  for (const SuiteResult& s : suites) {
    list.push_back(to_json(s));
    passed = passed && s.passed();
  }
  return json{{"tool", kToolName},       {"version", kToolVersion}, {"generated_at", utc_now()},
              {"command", command},      {"config", to_json(config)}, {"suites", list},
              {"passed", passed}};
}

std::string canonical_dump(const json& report) {
  json copy = report;
  copy.erase("generated_at");
  return copy.dump(2);
}

void write_csv(const fs::path& file, const CsvTable& table) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_value(row[i]);
    out << '\n';
  }
}

void write_outputs(const fs::path& dir, const json& report, const std::vector<SuiteResult>& suites) {
  ensure_dir(dir / "traces");
  std::ofstream out(dir / "report.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "report.json").string());
  out << report.dump(2) << '\n';
  for (const SuiteResult& s : suites)
    for (const CsvTable& t : s.traces) write_csv(dir / "traces" / (t.name + ".csv"), t);
}

std::vector<fs::path> emit_figures(const fs::path& reports_dir, const fs::path& out_dir) {
  const fs::path report_file = reports_dir / "report.json";
  std::ifstream in(report_file);
  if (!in) throw ConfigInvalid({report_file.string() + ": missing"});
  json report;
  try {
    report = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid({report_file.string() + ": " + e.what()});
  }
  if (!report.contains("config") || !report.contains("suites")) {
    throw ConfigInvalid({report_file.string() + ": not a " + std::string(kToolName) + " report"});
  }

  const fs::path fig = out_dir / "figures";
  ensure_dir(fig);
  std::vector<fs::path> written;
  for (const CsvTable& t : outlines(report.at("config"))) {
    written.push_back(fig / (t.name + ".csv"));
    write_csv(written.back(), t);
  }
  for (const json& suite : report.at("suites")) {
    for (const json& trace : suite.value("traces", json::array())) {
      const std::string rel = trace.get<std::string>();
      const fs::path name = fs::path(rel).filename();
      if (name.string().rfind("path_", 0) != 0) continue;
      const fs::path src = reports_dir / rel;
      if (!fs::exists(src)) throw ConfigInvalid({src.string() + ": referenced by the report but missing"});
      written.push_back(fig / name);
      fs::copy_file(src, written.back(), fs::copy_options::overwrite_existing);
    }
  }
  return written;
}

fs::path resolve_output_dir(const std::string& flag, const RunConfig& config) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("LORENTZ_OUT_DIR"); env && *env) return env;
  return config.output_dir;
}

}  // namespace lorentz::app
