#include "sparsedom/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sparsedom/rng.hpp"

namespace sparsedom {

namespace {

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

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      std::string t = trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

// flat key -> string map, from key=value lines or a one-level JSON object
std::map<std::string, std::string> to_flat_map(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::string body = trim(text);
  if (!body.empty() && body[0] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad JSON config: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("JSON config must be an object");
    auto put = [&](const std::string& key, const nlohmann::json& v) {
      if (v.is_string()) kv[key] = v.get<std::string>();
      else if (v.is_array()) {
        std::string joined;
        for (const auto& e : v) {
          if (!joined.empty()) joined += ",";
          joined += e.is_string() ? e.get<std::string>() : e.dump();
        }
        kv[key] = joined;
      } else kv[key] = v.dump();
    };
    for (const auto& [key, v] : j.items()) {
      if (v.is_object()) {
        for (const auto& [sub, sv] : v.items()) put(key + "." + sub, sv);
      } else {
        put(key, v);
      }
    }
    return kv;
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

double parse_num(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError("bad number for " + key + ": " + v);
  }
}

long parse_long(const std::string& key, const std::string& v) {
  double x = parse_num(key, v);
  long n = static_cast<long>(x);
  if (static_cast<double>(n) != x) throw ParseError("expected an integer for " + key + ": " + v);
  return n;
}

}  // namespace

Scenario Scenario::parse(const std::string& text) {
  Scenario sc;
  for (const auto& [key, v] : to_flat_map(text)) {
    if (key == "kernel") sc.kernel = v;
    else if (key == "grid.dim") sc.dim = static_cast<int>(parse_long(key, v));
    else if (key == "grid.cells") sc.cells = parse_long(key, v);
    else if (key == "grid.h") sc.h = parse_num(key, v);
    else if (key == "grid.origin") sc.origin = parse_num(key, v);
    else if (key == "seed") sc.seed = static_cast<std::uint64_t>(parse_long(key, v));
    else if (key == "f") sc.f_spec = v;
    else if (key == "b") sc.b_spec = v;
    else if (key == "w") sc.w_spec = v;
    else if (key == "mu") sc.mu_spec = v;
    else if (key == "lam") sc.lam_spec = v;
    else if (key == "p") sc.p = parse_num(key, v);
    else if (key == "phi") sc.phi_spec = v;
    else if (key == "lambda.count") sc.lambda_count = static_cast<int>(parse_long(key, v));
    else if (key == "fsuite.count") sc.fsuite_count = static_cast<int>(parse_long(key, v));
    else if (key == "fsuite.spec") sc.fsuite_spec = v;
    else if (key == "family") sc.family_path = v;
    else if (key == "checks") sc.checks = split_list(v);
    else if (key.rfind("ceiling.", 0) == 0) sc.ceilings[key.substr(8)] = parse_num(key, v);
    else if (key == "json_out") sc.json_out = v;
    else if (key == "csv_out") sc.csv_out = v;
    else throw ParseError("unknown config key: " + key);
  }
  if (sc.dim != 1 && sc.dim != 2) throw ParseError("grid.dim must be 1 or 2");
  if (sc.cells < 2) throw ParseError("grid.cells must be at least 2");
  return sc;
}

Scenario Scenario::load(const std::string& path) { return parse(slurp(path)); }

ScenarioResult run_scenario(const Scenario& sc) {
  Grid g;
  g.dim = sc.dim;
  g.h = sc.h > 0.0 ? sc.h : 1.0 / static_cast<double>(sc.cells);
  g.origin = {sc.origin, sc.origin};
  g.cells = {sc.cells, sc.dim == 2 ? sc.cells : 1};
  g.validate();

  Lcg rng(sc.seed);
  GridFunction f = generate_function(g, sc.f_spec, rng);
  GridFunction b = generate_function(g, sc.b_spec, rng);
  GridFunction w = generate_function(g, sc.w_spec, rng);

  auto needs = [&](const std::string& name) {
    return std::find(sc.checks.begin(), sc.checks.end(), name) != sc.checks.end();
  };
  GridFunction mu, lam;
  if (needs("bloom")) {
    if (sc.mu_spec.empty() || sc.lam_spec.empty())
      throw ParseError("the bloom check needs mu and lam generator specs");
    mu = generate_function(g, sc.mu_spec, rng);
    lam = generate_function(g, sc.lam_spec, rng);
  }
  std::vector<GridFunction> fsuite;
  if (needs("bloom") || needs("asp"))
    for (int i = 0; i < sc.fsuite_count; ++i)
      fsuite.push_back(generate_function(g, sc.fsuite_spec, rng));

  KernelPtr kernel;
  auto the_kernel = [&]() -> const CZKernel& {
    if (!kernel) kernel = make_kernel(sc.kernel, g);
    return *kernel;
  };
  YoungPtr phi = make_young(sc.phi_spec);

  ScenarioResult out;
  for (const std::string& name : sc.checks) {
    CheckReport r;
    if (name == "fs") {
      r = check_fs(w, f, default_lambda_grid(hl_maximal(f), sc.lambda_count));
    } else if (name == "orlicz_fs") {
      r = check_orlicz_fs(phi, w, f, default_lambda_grid(hl_maximal(f), sc.lambda_count));
    } else if (name == "weakcomm") {
      r = check_weakcomm(the_kernel(), b, f, w, phi,
                         default_lambda_grid(apply_T(the_kernel(), f), sc.lambda_count));
    } else if (name == "cor15") {
      r = check_cor15(the_kernel(), b, f, w,
                      default_lambda_grid(apply_T(the_kernel(), f), sc.lambda_count));
    } else if (name == "bloom") {
      r = check_bloom(the_kernel(), sc.p, mu, lam, b, fsuite);
    } else if (name == "asp") {
      if (sc.family_path.empty()) throw ParseError("the asp check needs a family file");
      std::string text = slurp(sc.family_path);
      SparseFamily s = trim(text).rfind('{', 0) == 0 ? SparseFamily::from_json(text)
                                                     : SparseFamily::from_text(text);
      std::vector<GridFunction> suite = fsuite;
      // sigma-weight test functions probe the lower bound the proof attains
      GridFunction sigma = sigma_weight(w, sc.p);
      suite.push_back(sigma);
      GridFunction half(g, 0.0);
      for (long ix = 0; ix < g.cells[0] / 2; ++ix)
        for (long iy = 0; iy < (g.dim == 1 ? 1 : g.cells[1] / 2); ++iy)
          half.at(ix, iy) = sigma.at(ix, iy);
      suite.push_back(half);
      r = check_asp(s, w, sc.p, suite);
    } else {
      throw ParseError("unknown check: " + name);
    }
    auto it = sc.ceilings.find(name);
    if (it != sc.ceilings.end()) {
      r.ceiling = it->second;
      r.close();
    }
    out.reports.push_back(std::move(r));
  }

  std::stable_sort(out.reports.begin(), out.reports.end(),
                   [](const CheckReport& a, const CheckReport& z) { return a.id < z.id; });
  for (const CheckReport& r : out.reports)
    if (!r.pass) out.exit_code = 1;
  out.json = to_json(out.reports);
  out.csv = to_csv(out.reports);
  if (!sc.json_out.empty()) spit(sc.json_out, out.json);
  if (!sc.csv_out.empty()) spit(sc.csv_out, out.csv);
  return out;
}

}  // namespace sparsedom
