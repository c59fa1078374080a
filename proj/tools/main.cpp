#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "sparsedom/domination.hpp"
#include "sparsedom/scenario.hpp"

namespace {

using namespace sparsedom;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

bool looks_like_json(const std::string& text) {
  size_t i = text.find_first_not_of(" \t\r\n");
  return i != std::string::npos && text[i] == '{';
}

GridFunction load_function(const std::string& path) {
  std::string text = slurp(path);
  return looks_like_json(text) ? grid_function_from_json(text) : grid_function_from_text(text);
}

// Embed a data-box function into the 9x padded grid the construction
// evaluates on: same geometry, the data occupying the central block.
GridFunction embed_padded(const GridFunction& f) {
  Grid g = f.grid;
  long n = g.cells[0];
  if (g.dim == 2 && g.cells[1] != n)
    throw ParameterError("the padded embedding needs a square data box");
  Grid ext = g;
  ext.cells = {9 * n, g.dim == 2 ? 9 * n : 1};
  ext.origin[0] = g.origin[0] - 4.0 * static_cast<double>(n) * g.h;
  if (g.dim == 2) ext.origin[1] = g.origin[1] - 4.0 * static_cast<double>(n) * g.h;
  GridFunction out(ext, 0.0);
  for (long ix = 0; ix < g.cells[0]; ++ix)
    for (long iy = 0; iy < (g.dim == 1 ? 1 : g.cells[1]); ++iy)
      out.at(ix + 4 * n, g.dim == 1 ? 0 : iy + 4 * n) = f.at(ix, iy);
  return out;
}

int cmd_run(const std::string& path, long seed, long grid_cells,
            const std::string& json_out, const std::string& csv_out) {
  Scenario sc = Scenario::load(path);
  if (seed >= 0) sc.seed = static_cast<std::uint64_t>(seed);
  if (grid_cells > 0) sc.cells = grid_cells;
  if (!json_out.empty()) sc.json_out = json_out;
  if (!csv_out.empty()) sc.csv_out = csv_out;
  ScenarioResult res = run_scenario(sc);
  for (const CheckReport& r : res.reports)
    std::printf("%-12s %s  constant=%s  ceiling=%s\n", r.id.c_str(),
                r.pass ? "pass" : "FAIL", format_double(r.empirical_constant).c_str(),
                std::isfinite(r.ceiling) ? format_double(r.ceiling).c_str() : "inf");
  return res.exit_code;
}

int cmd_verify_family(const std::string& path, double eta) {
  std::string text = slurp(path);
  SparseFamily s =
      looks_like_json(text) ? SparseFamily::from_json(text) : SparseFamily::from_text(text);
  SparseVerification v = verify_sparse(s, eta);
  if (v.success) {
    std::printf("verified: %zu cubes, eta=%s, carleson=%s\n", s.size(),
                format_double(eta).c_str(), format_double(v.carleson).c_str());
    return 0;
  }
  std::printf("not %s-sparse: cube %zu has witness fraction %s\n", format_double(eta).c_str(),
              v.failing_cube, format_double(v.failing_fraction).c_str());
  return 1;
}

int cmd_dominate(const std::string& kernel_name, const std::string& f_path,
                 const std::string& b_path, const std::string& out_dir) {
  GridFunction f = embed_padded(load_function(f_path));
  KernelPtr kernel = make_kernel(kernel_name, f.grid);
  DominationResult res;
  if (b_path.empty()) {
    res = build_T_domination(*kernel, f);
  } else {
    GridFunction b = embed_padded(load_function(b_path));
    if (!b.grid.same_geometry(f.grid)) throw AlignmentError("f and b grids differ");
    res = build_commutator_domination(*kernel, b, f);
  }
  std::filesystem::create_directories(out_dir);
  spit(out_dir + "/result.json", res.to_json());
  spit(out_dir + "/lhs.txt", to_text(res.lhs));
  spit(out_dir + "/rhs.txt", to_text(res.rhs));
  for (size_t j = 0; j < res.families.size(); ++j)
    spit(out_dir + "/family_" + std::to_string(j) + ".txt", res.families[j].to_text());
  std::printf("constant=%s carleson=%s families=%zu\n",
              format_double(res.empirical_constant).c_str(),
              format_double(res.carleson_bound).c_str(), res.families.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse domination toolkit for commutators of singular integrals"};
  app.require_subcommand(1);

  std::string scenario_path, json_out, csv_out;
  long seed = -1, grid_cells = 0;
  CLI::App* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", scenario_path, "scenario config (key=value or JSON)")->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--grid-cells", grid_cells, "override the cell count per axis");
  run->add_option("--json-out", json_out, "write the JSON report here");
  run->add_option("--csv-out", csv_out, "write the CSV report here");

  std::string family_path;
  double eta = 0.5;
  CLI::App* vf = app.add_subcommand("verify-family", "certify a family's sparseness");
  vf->add_option("family", family_path, "serialized family file")->required();
  vf->add_option("--eta", eta, "density to certify")->required();

  std::string kernel_name, f_path, b_path, out_dir;
  CLI::App* dom = app.add_subcommand("dominate", "build a sparse domination certificate");
  dom->add_option("--kernel", kernel_name, "kernel name")->required();
  dom->add_option("--f", f_path, "data-box function file")->required();
  dom->add_option("--b", b_path, "symbol file (omit for the plain operator)");
  dom->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(scenario_path, seed, grid_cells, json_out, csv_out);
    if (vf->parsed()) return cmd_verify_family(family_path, eta);
    return cmd_dominate(kernel_name, f_path, b_path, out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
