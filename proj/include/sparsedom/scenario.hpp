#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sparsedom/checks.hpp"

namespace sparsedom {

// One configured run: which checks, on which grid, with which generators.
// Parsed either from key=value lines ('#' comments, dotted keys for
// sections) or from a flat JSON object with the same keys.
struct Scenario {
  std::string kernel = "hilbert";
  int dim = 1;
  long cells = 64;
  double h = 0.0;       // 0 means 1/cells
  double origin = 0.0;
  std::uint64_t seed = 1;

  std::string f_spec = "bumps(3)";
  std::string b_spec = "random(-1,1)";
  std::string w_spec = "constant(1)";
  std::string mu_spec, lam_spec;       // two-weight checks only
  double p = 2.0;
  std::string phi_spec = "phi_eps(0.5)";
  int lambda_count = 12;
  int fsuite_count = 4;
  std::string fsuite_spec = "random(0,1)";
  std::string family_path;             // serialized family, asp only

  std::vector<std::string> checks;     // fs, orlicz_fs, weakcomm, cor15, bloom, asp
  std::map<std::string, double> ceilings;  // by check name; absent = infinity

  std::string json_out, csv_out;

  static Scenario parse(const std::string& text);
  static Scenario load(const std::string& path);
};

struct ScenarioResult {
  int exit_code = 0;                  // 0 iff every report passes its ceiling
  std::vector<CheckReport> reports;   // ordered by check id
  std::string json, csv;
};

// Runs the configured checks and writes the report files when paths are set.
ScenarioResult run_scenario(const Scenario& sc);

}  // namespace sparsedom
