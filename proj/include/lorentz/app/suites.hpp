#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lorentz/app/config.hpp"
#include "lorentz/causality.hpp"
#include "lorentz/waves.hpp"
#include "lorentz/witness.hpp"

namespace lorentz::app {

// One pass/fail line of a suite. `relation` is "<=", ">=", "==", "in" or
// "info"; informational checks never fail the suite.
struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
  double bound_hi = 0.0;  // upper end for "in"
  std::string relation;
  std::string note;
};

Check check_le(std::string name, double value, double bound, std::string note = {});
Check check_ge(std::string name, double value, double bound, std::string note = {});
Check check_in(std::string name, double value, double lo, double hi, std::string note = {});
Check check_eq(std::string name, double value, double expected, std::string note = {});
Check info(std::string name, double value, std::string note = {});

struct CsvTable {
  std::string name;  // file stem under traces/
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  nlohmann::json details = nlohmann::json::object();
  std::vector<CsvTable> traces;

  bool passed() const;
};

// --- scenario builders, shared with the tests -------------------------------

// Minkowski base, de Sitter patch, bump from the config, U = diamond.
PerturbationSpec hyperboloid_perturbation(const RunConfig& config);
// Same construction over the FLRW base with U the future-unreachable set.
PerturbationSpec flrw_perturbation(const RunConfig& config);

// Per-scenario integration budget: hyperboloid until |t| = 10a, FLRW until
// |t| = 10/H, Kruskal until s = 100 or the singularity.
ScanOptions scan_options(const RunConfig& config);

// Strip grids, exterior/late sources, probes and the interior source of the
// hyperboloid comparison. Either grid family may be skipped.
ComparisonInputs hyperboloid_comparison_inputs(const RunConfig& config, bool strip, bool ambient);

// Witness lattice: box of half-width witness.half_width around the bump center.
SampleGrid witness_grid(const RunConfig& config);

// --- suites --------------------------------------------------------------------

SuiteResult run_causality(const RunConfig& config);
SuiteResult run_compare_dn(const RunConfig& config);
SuiteResult run_compare_sts(const RunConfig& config);
SuiteResult run_witness(const RunConfig& config);

nlohmann::json to_json(const Check& check);
nlohmann::json to_json(const SuiteResult& suite);
nlohmann::json to_json(const ComparisonSeries& series);

}  // namespace lorentz::app
