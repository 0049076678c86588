#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "lorentz/app/config.hpp"
#include "lorentz/app/output.hpp"
#include "lorentz/app/suites.hpp"

using nlohmann::json;
using namespace lorentz::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lorentz_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("empty document yields defaults") {
  const RunConfig c = parse_config(json::object());
  CHECK(c.scenario == "hyperboloid");
  CHECK(c.n == 1);
  CHECK(c.a == 2.0);
  CHECK(c.scan.rays == 1000);
  CHECK(c.scan.seed == 42);
  CHECK(cylinder_radius(c) == doctest::Approx(std::numbers::pi + 0.5));
}

TEST_CASE("nested keys are read") {
  const RunConfig c = parse_config(json::parse(R"({
    "scenario": "kruskal", "geometry": {"r_s": 2.0, "r0": 3.5},
    "scan": {"rays": 10, "seed": 7}, "output_dir": "x"})"));
  CHECK(c.scenario == "kruskal");
  CHECK(c.r_s == 2.0);
  CHECK(c.r0 == 3.5);
  CHECK(c.scan.rays == 10);
  CHECK(c.scan.seed == 7);
  CHECK(c.output_dir == "x");
}

TEST_CASE("registry alias flrw-bounce") {
  CHECK(parse_config(json{{"scenario", "flrw-bounce"}}).scenario == "flrw");
}

TEST_CASE("invalid documents collect every problem") {
  try {
    parse_config(json::parse(R"({"scenario": "torus", "n": "one", "bogus": 1, "scan": {"rays": -3}})"));
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(e.problems().size() >= 4);
  }
}

TEST_CASE("scenario preconditions") {
  CHECK_THROWS_AS(parse_config(json::parse(R"({"scenario": "kruskal", "geometry": {"r0": 0.5}})")), ConfigInvalid);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"scenario": "flrw", "geometry": {"R_cylinder": 2.0}})")),
                  ConfigInvalid);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"bump": {"r_in": 0.6, "r_out": 0.5}})")), ConfigInvalid);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"n": 2, "bump": {"center": [0, 0]}})")), ConfigInvalid);
}

TEST_CASE("to_json round trip") {
  RunConfig c;
  c.scenario = "flrw";
  c.H = 2.0;
  c.scan.rays = 17;
  const json j = to_json(c);
  const RunConfig back = parse_config(j);
  CHECK(to_json(back) == j);
  CHECK(j.at("geometry").at("R_cylinder").get<double>() == doctest::Approx(std::numbers::pi / 2 + 0.5));
}

TEST_CASE("check helpers") {
  CHECK(check_le("x", 1.0, 2.0).passed);
  CHECK_FALSE(check_le("x", 3.0, 2.0).passed);
  CHECK_FALSE(check_le("x", NAN, 2.0).passed);
  CHECK(check_ge("x", 3.0, 2.0).passed);
  CHECK(check_in("x", 4.0, 3.0, 5.0).passed);
  CHECK_FALSE(check_in("x", NAN, 3.0, 5.0).passed);
  CHECK(check_eq("x", 0.0, 0.0).passed);
  SuiteResult s{"s", {info("i", NAN), check_le("y", 0.0, 1.0)}, json::object(), {}};
  CHECK(s.passed());
  s.checks.push_back(check_ge("z", 0.0, 1.0));
  CHECK_FALSE(s.passed());
}

TEST_CASE("CSV output uses round-trip precision") {
  const fs::path dir = scratch_dir("csv");
  fs::create_directories(dir);
  write_csv(dir / "t.csv", CsvTable{"t", {"a", "b"}, {{0.1, 1.0 / 3.0}, {NAN, INFINITY}}});
  const std::string text = slurp(dir / "t.csv");
  CHECK(text == "a,b\n0.10000000000000001,0.33333333333333331\nnan,inf\n");
}

TEST_CASE("witness suite writes a report and canonical dumps match") {
  RunConfig c;
  c.witness.per_axis = 21;
  const SuiteResult a = run_witness(c);
  const SuiteResult b = run_witness(c);
  CHECK(a.passed());
  const json ra = make_report("witness", c, {a});
  const json rb = make_report("witness", c, {b});
  CHECK(canonical_dump(ra) == canonical_dump(rb));
  CHECK(ra.contains("generated_at"));
  CHECK(canonical_dump(ra).find("generated_at") == std::string::npos);
  CHECK(ra.at("tool") == kToolName);

  const fs::path dir = scratch_dir("witness");
  write_outputs(dir, ra, {a});
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "traces" / "witness_scan.csv"));
  CHECK(json::parse(slurp(dir / "report.json")).at("passed") == true);
}

TEST_CASE("figures need a report") {
  const fs::path dir = scratch_dir("figures");
  fs::create_directories(dir);
  CHECK_THROWS_AS(emit_figures(dir, dir), ConfigInvalid);

  RunConfig c;
  c.scenario = "kruskal";
  std::ofstream(dir / "report.json") << make_report("verify causality", c, {}).dump();
  const auto files = emit_figures(dir, dir);
  CHECK(files.size() == 3);
  for (const auto& f : files) CHECK(fs::exists(f));
}

TEST_CASE("output directory precedence: flag, environment, config") {
  RunConfig c;
  c.output_dir = "from-config";
  ::unsetenv("LORENTZ_OUT_DIR");
  CHECK(resolve_output_dir("", c) == "from-config");
  ::setenv("LORENTZ_OUT_DIR", "from-env", 1);
  CHECK(resolve_output_dir("", c) == "from-env");
  CHECK(resolve_output_dir("from-flag", c) == "from-flag");
  ::unsetenv("LORENTZ_OUT_DIR");
}

TEST_CASE("comparison suites reject other scenarios") {
  RunConfig c;
  c.scenario = "flrw";
  CHECK_THROWS_AS(run_compare_dn(c), ConfigInvalid);
  c.scenario = "kruskal";
  CHECK_THROWS_AS(run_witness(c), ConfigInvalid);
}

TEST_CASE("hyperboloid comparison inputs scale with a") {
  RunConfig c;
  c.a = 3.0;
  c.waves.levels = 2;
  c.waves.strip_nx = 65;
  c.waves.ambient_nx = 129;
  const lorentz::ComparisonInputs in = hyperboloid_comparison_inputs(c, true, true);
  CHECK(in.strip_grids.size() == 2);
  CHECK(in.ambient_grids.size() == 2);
  const lorentz::CylinderDomain cyl = lorentz::hyperboloid_cylinder(c.a, 1);
  for (const auto& p : in.probes) CHECK(cyl.f(p) > 0);
  CHECK(in.future_of_region(1.0, 0.0));
  CHECK_FALSE(in.future_of_region(-2.0, 0.0));
}
