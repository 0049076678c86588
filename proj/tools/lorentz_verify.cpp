// Command-line front end: runs verification suites and writes report.json
// plus traces/*.csv. Exit 0 when every check passes, 1 on a failed verdict,
// 2 on invalid configuration or missing inputs.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lorentz/app/config.hpp"
#include "lorentz/app/output.hpp"
#include "lorentz/app/suites.hpp"

using nlohmann::json;
namespace app = lorentz::app;

namespace {

struct Overrides {
  std::string config_file;
  std::string out_dir;
  std::optional<std::string> scenario;
  std::optional<int> n;
  std::optional<double> a, H, R, r_s, r0;
  std::optional<int> rays;
  std::optional<long long> seed;
  std::optional<double> tol;
  std::optional<int> levels, strip_nx, ambient_nx;
  std::optional<double> Rc, r_in, r_out, pole;
  std::optional<std::vector<double>> center;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_file, "JSON run configuration");
  cmd->add_option("--out", o.out_dir, "output directory (overrides LORENTZ_OUT_DIR and the config)");
  cmd->add_option("--scenario", o.scenario, "hyperboloid | flrw | kruskal");
  cmd->add_option("--n", o.n, "spatial dimension");
  cmd->add_option("--a", o.a, "hyperboloid parameter a");
  cmd->add_option("--H", o.H, "FLRW expansion rate");
  cmd->add_option("--R", o.R, "FLRW cylinder radius");
  cmd->add_option("--rs", o.r_s, "Schwarzschild radius");
  cmd->add_option("--r0", o.r0, "Kruskal cylinder radius");
  cmd->add_option("--rays", o.rays, "initial points per scan");
  cmd->add_option("--seed", o.seed, "scan seed");
  cmd->add_option("--tol", o.tol, "integrator tolerance");
  cmd->add_option("--levels", o.levels, "refinement levels");
  cmd->add_option("--strip-nx", o.strip_nx, "coarsest strip grid nodes");
  cmd->add_option("--ambient-nx", o.ambient_nx, "coarsest ambient grid nodes");
  cmd->add_option("--Rc", o.Rc, "curvature radius of the de Sitter patch");
  cmd->add_option("--r-in", o.r_in, "bump inner radius");
  cmd->add_option("--r-out", o.r_out, "bump outer radius");
  cmd->add_option("--pole", o.pole, "de Sitter patch pole");
  cmd->add_option("--center", o.center, "bump center coordinates")->expected(1, 4);
}

json load_document(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw app::ConfigInvalid({path + ": cannot open"});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw app::ConfigInvalid({path + ": " + e.what()});
  }
}

app::RunConfig build_config(const Overrides& o) {
  json doc = load_document(o.config_file);
  if (!doc.is_object()) throw app::ConfigInvalid({"config: expected object"});
  auto set = [&](const char* section, const char* key, const auto& value) {
    if (!value) return;
    if (section) {
      doc[section][key] = *value;
    } else {
      doc[key] = *value;
    }
  };
  set(nullptr, "scenario", o.scenario);
  set(nullptr, "n", o.n);
  set("geometry", "a", o.a);
  set("geometry", "H", o.H);
  set("geometry", "R_cylinder", o.R);
  set("geometry", "r_s", o.r_s);
  set("geometry", "r0", o.r0);
  set("scan", "rays", o.rays);
  set("scan", "seed", o.seed);
  set("scan", "tol", o.tol);
  set("waves", "levels", o.levels);
  set("waves", "strip_nx", o.strip_nx);
  set("waves", "ambient_nx", o.ambient_nx);
  set("bump", "R_c", o.Rc);
  set("bump", "r_in", o.r_in);
  set("bump", "r_out", o.r_out);
  set("bump", "pole", o.pole);
  set("bump", "center", o.center);
  return app::parse_config(doc);
}

void print_suite(const app::SuiteResult& s) {
  for (const app::Check& c : s.checks) {
    const char* tag = c.relation == "info" ? "INFO" : (c.passed ? "PASS" : "FAIL");
    std::printf("%s  %s.%s = %.6g", tag, s.name.c_str(), c.name.c_str(), c.value);
    if (c.relation == "in") {
      std::printf("  in [%.6g, %.6g]", c.bound, c.bound_hi);
    } else if (c.relation != "info") {
      std::printf("  %s %.6g", c.relation.c_str(), c.bound);
    }
    if (!c.note.empty()) std::printf("  (%s)", c.note.c_str());
    std::printf("\n");
  }
}

int run_suites(const std::string& command, const Overrides& o,
               const std::function<app::SuiteResult(const app::RunConfig&)>& suite_fn) {
  const app::RunConfig config = build_config(o);
  const auto dir = app::resolve_output_dir(o.out_dir, config);
  std::vector<app::SuiteResult> suites{suite_fn(config)};
  const json report = app::make_report(command, config, suites);
  app::write_outputs(dir, report, suites);
  for (const auto& s : suites) print_suite(s);
  const bool ok = report.at("passed").get<bool>();
  std::printf("%s: %s  (report: %s)\n", command.c_str(), ok ? "passed" : "FAILED",
              (dir / "report.json").string().c_str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Verification toolkit for boundary-data counterexamples in Lorentzian geometry"};
  cli.require_subcommand(1);

  Overrides o;
  auto* verify = cli.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  auto* causality = verify->add_subcommand("causality", "unreachability ray scans");
  add_common(causality, o);

  auto* compare = cli.add_subcommand("compare", "g versus g' comparisons");
  compare->require_subcommand(1);
  auto* dn = compare->add_subcommand("dn", "Dirichlet-to-Neumann map comparison");
  add_common(dn, o);
  auto* sts = compare->add_subcommand("sts", "source-to-solution map comparison");
  add_common(sts, o);

  auto* witness = cli.add_subcommand("witness", "scalar-curvature non-isometry witness");
  add_common(witness, o);

  std::string reports_dir;
  std::string figures_out;
  auto* figures = cli.add_subcommand("figures", "outline and path CSVs from a report directory");
  figures->add_option("--reports", reports_dir, "directory holding report.json")->required();
  figures->add_option("--out", figures_out, "output directory (default: the reports directory)");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return 2;
  }

  try {
    if (*causality) return run_suites("verify causality", o, app::run_causality);
    if (*dn) return run_suites("compare dn", o, app::run_compare_dn);
    if (*sts) return run_suites("compare sts", o, app::run_compare_sts);
    if (*witness) return run_suites("witness", o, app::run_witness);
    if (*figures) {
      const auto out = figures_out.empty() ? std::filesystem::path(reports_dir) : std::filesystem::path(figures_out);
      for (const auto& f : app::emit_figures(reports_dir, out)) std::printf("%s\n", f.string().c_str());
      return 0;
    }
  } catch (const app::ConfigInvalid& e) {
    for (const auto& p : e.problems()) std::fprintf(stderr, "config error: %s\n", p.c_str());
    return 2;
  } catch (const lorentz::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
