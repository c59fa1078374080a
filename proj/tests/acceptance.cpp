// End-to-end gate: one line per criterion, nonzero exit when any fails.
// Ceilings marked "calibrated" were measured on the reference configuration
// and pinned with headroom; structural criteria carry no slack.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "sparsedom/checks.hpp"
#include "sparsedom/domination.hpp"
#include "sparsedom/orlicz_checks.hpp"
#include "sparsedom/rng.hpp"
#include "sparsedom/scenario.hpp"

using namespace sparsedom;

namespace {

// calibrated ceilings (reference machine, seeds below)
constexpr double kCommCertCeiling = 20.0;       // criterion 1, measured 13.3
constexpr double kWeakcommCeiling = 0.25;       // criterion 7, measured 0.139
constexpr double kBloomCeiling = 2.5;           // criterion 8, measured 1.99

Grid make_grid(int dim, long n, double h, double origin) {
  Grid g;
  g.dim = dim;
  g.h = h;
  g.origin = {origin, dim == 2 ? origin : 0.0};
  g.cells = {n, dim == 2 ? n : 1};
  return g;
}

GridFunction refine2(const GridFunction& f) {
  Grid g = f.grid;
  g.h *= 0.5;
  g.cells = {2 * f.grid.cells[0], f.grid.dim == 2 ? 2 * f.grid.cells[1] : 1};
  GridFunction out(g, 0.0);
  long ny = f.grid.dim == 1 ? 1 : f.grid.cells[1];
  for (long ix = 0; ix < f.grid.cells[0]; ++ix)
    for (long iy = 0; iy < ny; ++iy)
      for (long dx = 0; dx < 2; ++dx)
        for (long dy = 0; dy < (f.grid.dim == 1 ? 1 : 2); ++dy)
          out.at(2 * ix + dx, f.grid.dim == 1 ? 0 : 2 * iy + dy) = f.at(ix, iy);
  return out;
}

// data generated on [0,1) and placed on the central block of the 9x line
struct Padded {
  GridFunction f, b;
};

Padded padded_pair(long n, const std::string& fspec, const std::string& bspec,
                   std::uint64_t seed) {
  Grid data = make_grid(1, n, 1.0 / static_cast<double>(n), 0.0);
  Lcg rng(seed);
  GridFunction fd = generate_function(data, fspec, rng);
  GridFunction bd = generate_function(data, bspec, rng);
  Grid ext = make_grid(1, 9 * n, data.h, -4.0);
  Padded p{GridFunction(ext, 0.0), GridFunction(ext, 0.0)};
  for (long i = 0; i < n; ++i) {
    p.f.at(4 * n + i) = fd.at(i);
    p.b.at(4 * n + i) = bd.at(i);
  }
  return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> three_decade_grid(const GridFunction& ref, int count) {
  double m = 0.0;
  for (double v : ref.values) m = std::max(m, std::abs(v));
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(m * std::pow(10.0, -3.0 * (1.0 - static_cast<double>(i) / (count - 1))));
  return out;
}

// ---- criterion 1: pointwise domination certificates at scale ------------

bool criterion1(std::string& detail) {
  const long n = 2048;
  const char* bspecs[] = {"power(0.3)", "step(-1,1)", "bumps(2)", "sign", "bumps(3)"};
  double c_base = 0.0, c_fine = 0.0, carleson_max = 0.0, slowest = 0.0;
  for (int i = 0; i < 20; ++i) {
    std::string fspec = "bumps(" + std::to_string(2 + i % 4) + ")";
    Padded p = padded_pair(n, fspec, bspecs[i % 5], 100 + static_cast<std::uint64_t>(i));
    KernelPtr k = make_kernel("hilbert", p.f.grid);
    auto t0 = std::chrono::steady_clock::now();
    DominationResult r = build_commutator_domination(*k, p.b, p.f);
    double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    if (dt > 60.0) {
      detail = "pair " + std::to_string(i) + " took " + std::to_string(dt) + " s";
      return false;
    }
    if (r.families.size() != 3) {
      detail = "expected 3 shifted families";
      return false;
    }
    for (const SparseFamily& s : r.families) {
      double c = carleson_constant(s);
      carleson_max = std::max(carleson_max, c);
      if (c > 18.0 + 1e-9) {
        detail = "family overlap constant " + format_double(c) + " exceeds 18";
        return false;
      }
    }
    c_base = std::max(c_base, r.empirical_constant);

    DominationResult rf = build_commutator_domination(
        *make_kernel("hilbert", refine2(p.f).grid), refine2(p.b), refine2(p.f));
    for (const SparseFamily& s : rf.families)
      if (carleson_constant(s) > 18.0 + 1e-9) {
        detail = "refined family exceeds the overlap bound";
        return false;
      }
    c_fine = std::max(c_fine, rf.empirical_constant);
  }
  double drift = std::abs(c_fine / c_base - 1.0);
  std::ostringstream os;
  os << "constant " << c_base << " -> " << c_fine << " (drift " << 100.0 * drift
     << "%), overlap max " << carleson_max << ", slowest pair " << slowest << " s";
  detail = os.str();
  return c_base <= kCommCertCeiling && drift <= 0.20;
}

// ---- criterion 2: norm threshold law ------------------------------------

bool criterion2(std::string& detail) {
  const char* specs[] = {"phi_llogl",     "phi_eps(0.5)", "power(1.5)",
                         "power(3)",      "exp_minus_one", "phi_loglog(2)"};
  Lcg rng(2024);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    YoungPtr phi = make_young(specs[i % 6]);
    long len = rng.uniform_int(1, 64);
    long denom = len + rng.uniform_int(0, len);
    std::vector<double> vals(static_cast<size_t>(len));
    for (double& v : vals) v = rng.uniform(1e-3, 5.0);
    double nrm = luxemburg_norm_values(vals, denom, *phi);
    auto mean = [&](double lam) {
      double s = 0.0;
      for (double v : vals) s += phi->value(v / lam);
      return s / static_cast<double>(denom);
    };
    if (mean(nrm * (1 + 1e-6)) > 1.0 + 1e-8) ++bad;
    if (mean(nrm * (1 - 1e-6)) < 1.0 - 1e-8) ++bad;
    double c = rng.uniform(0.1, 4.0);
    std::vector<double> cv(static_cast<size_t>(len), c);
    double closed = c / phi->inverse(1.0);
    if (std::abs(luxemburg_norm_values(cv, len, *phi) - closed) > 1e-8 * closed) ++bad;
  }
  detail = std::to_string(bad) + " violations in 3000 comparisons";
  return bad == 0;
}

// ---- criterion 3: product estimates with the factor 2 -------------------

bool criterion3(std::string& detail) {
  Lcg rng(3030);
  Grid g = make_grid(1, 32, 1.0 / 32.0, 0.0);
  const char* pair_specs[] = {"phi_llogl", "phi_eps(0.5)", "power(2)", "power(1.5)",
                              "power(3)"};
  int bad = 0;
  for (int i = 0; i < 500; ++i) {
    GridFunction f(g), h(g);
    for (double& v : f.values) v = rng.uniform(0.0, 3.0);
    for (double& v : h.values) v = rng.uniform(0.0, 3.0);
    long side = 1L << rng.uniform_int(2, 5);
    CellBox q{{rng.uniform_int(0, 32 - side), 0}, side};
    CheckReport r = holder_pair(f, h, q, *make_young(pair_specs[i % 5]));
    if (!r.pass) ++bad;
  }
  struct Triple {
    const char *a, *b, *c;
  } triples[] = {{"power(2)", "power(2)", "identity"},
                 {"power(3)", "power(1.5)", "identity"},
                 {"power(2.5)", "power(1.6666666666666667)", "identity"}};
  for (int i = 0; i < 500; ++i) {
    GridFunction f(g), h(g);
    for (double& v : f.values) v = rng.uniform(0.0, 3.0);
    for (double& v : h.values) v = rng.uniform(0.0, 3.0);
    const Triple& t = triples[i % 3];
    CheckReport r = generalized_holder(f, h, CellBox{{0, 0}, 32}, *make_young(t.a),
                                       *make_young(t.b), *make_young(t.c));
    if (!r.pass) ++bad;
  }
  detail = std::to_string(bad) + " violations in 1000 instances";
  return bad == 0;
}

// ---- criterion 4: covering bound with its literal constants -------------

bool criterion4(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  double worst = 0.0;
  auto run_suite = [&](int dim, long n, int count, std::uint64_t seed) {
    Lcg rng(seed);
    Grid g = make_grid(dim, n, 1.0 / static_cast<double>(n), 0.0);
    for (int i = 0; i < count; ++i) {
      GridFunction f(g), w(g);
      for (double& v : f.values) v = rng.uniform(0.0, 4.0);
      for (double& v : w.values) v = std::exp(rng.uniform(-1.5, 1.5));
      double fmax = 0.0, fsum = 0.0;
      for (double v : f.values) {
        fmax = std::max(fmax, v);
        fsum += v;
      }
      double favg = fsum / static_cast<double>(g.cell_count());
      double lam = std::exp(rng.uniform(std::log(0.3 * favg), std::log(0.9 * fmax)));
      YoungPtr phi = make_young(i % 2 == 0 ? "phi_llogl" : "phi_eps(0.5)");
      CheckReport r = check_orlicz_fs(phi, w, f, {lam});
      worst = std::max(worst, r.empirical_constant);
      if (r.empirical_constant > 1.0 + 1e-9) ++bad;
    }
  };
  run_suite(1, 512, 200, 404);
  run_suite(2, 64, 50, 405);
  double dt = seconds_since(t0);
  std::ostringstream os;
  os << bad << " violations, worst ratio " << worst << ", " << dt << " s";
  detail = os.str();
  return bad == 0 && dt <= 120.0;
}

// ---- criterion 5: layered covering estimates ----------------------------

bool criterion5(std::string& detail) {
  Grid g = make_grid(1, 256, 1.0 / 256.0, 0.0);
  Lcg rng(505);
  GridFunction w1(g, 1.0), wr(g);
  for (double& v : wr.values) v = std::exp(rng.uniform(-1.0, 1.0));
  std::vector<char> everything(256, 1);

  struct Inst {
    YoungPtr psi;
    double lambda;
    SparseFamily fam;
  };
  std::vector<Inst> insts;
  YoungPtr ident = young_identity();
  YoungPtr prod = young_llogl();
  // chains, trees, random antichains at the densities the constants demand
  insts.push_back({ident, 4.0,
                   SparseFamily(g, {CellBox{{0, 0}, 256}, CellBox{{0, 0}, 32},
                                    CellBox{{0, 0}, 4}})});
  insts.push_back({ident, 4.0,
                   SparseFamily(g, {CellBox{{0, 0}, 256}, CellBox{{0, 0}, 16},
                                    CellBox{{128, 0}, 16}, CellBox{{0, 0}, 2},
                                    CellBox{{128, 0}, 2}})});
  insts.push_back({prod, 16.0,
                   SparseFamily(g, {CellBox{{0, 0}, 256}, CellBox{{0, 0}, 8}})});
  insts.push_back({prod, 16.0,
                   SparseFamily(g, {CellBox{{0, 0}, 256}, CellBox{{0, 0}, 2},
                                    CellBox{{64, 0}, 2}, CellBox{{128, 0}, 2},
                                    CellBox{{192, 0}, 2}})});
  for (std::uint64_t s : {1ull, 2ull, 3ull}) {
    Lcg r2(s);
    std::vector<CellBox> cubes;
    for (int j = 0; j < 8; ++j) cubes.push_back(CellBox{{r2.uniform_int(0, 31) * 8, 0}, 8});
    std::vector<CellBox> keep;
    for (const CellBox& c : cubes) {
      bool dup = false;
      for (const CellBox& k : keep) dup = dup || k.lo[0] == c.lo[0];
      if (!dup) keep.push_back(c);
    }
    insts.push_back({ident, 4.0, SparseFamily(g, keep)});
  }

  int bad = 0;
  double worst = 0.0;
  for (const Inst& inst : insts) {
    for (int k = 0; k <= 2; ++k) {
      double c = 0.8 * std::pow(4.0, -k) * inst.psi->inverse(1.0);
      GridFunction f(g, c);
      for (const GridFunction* w : {&w1, &wr}) {
        CheckReport r =
            key_lemma_check(*inst.psi, inst.lambda, f, inst.fam, k, true, *w, everything,
                            *young_llogl());
        worst = std::max(worst, r.empirical_constant);
        if (!r.pass) ++bad;
      }
    }
    // the mirrored norm window, one instance each
    GridFunction fbig(g, 0.8 * 4.0 * inst.psi->inverse(1.0));
    CheckReport r = key_lemma_check(*inst.psi, inst.lambda, fbig, inst.fam, 1, false, w1,
                                    everything, *young_llogl());
    worst = std::max(worst, r.empirical_constant);
    if (!r.pass) ++bad;
  }
  std::ostringstream os;
  os << bad << " violations across " << insts.size() * 7 << " runs, worst ratio " << worst;
  detail = os.str();
  return bad == 0;
}

// ---- criterion 6: oscillation refinement with the exact constant --------

bool criterion6(std::string& detail) {
  Grid g = make_grid(1, 128, 1.0 / 128.0, 0.0);
  const char* bspecs[] = {"random(-1,1)", "bumps(3)", "step(-1,1)", "power(0.4)", "sign"};
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    Lcg rng(600 + static_cast<std::uint64_t>(i));
    GridFunction b = generate_function(g, bspecs[i % 5], rng);
    SparseFamily s =
        i % 2 == 0
            ? SparseFamily(g, {CellBox{{0, 0}, 128}, CellBox{{0, 0}, 32},
                               CellBox{{rng.uniform_int(2, 3) * 32, 0}, 32}})
            : SparseFamily(g, {CellBox{{0, 0}, 128}, CellBox{{0, 0}, 64}});
    if (!verify_sparse(s, 0.5).success) {
      ++bad;
      continue;
    }
    try {
      OscillationCertificate cert = build_oscillation_family(b, s, 0.5);
      SparseFamily fam = cert.family;
      if (!cert.pointwise_holds || cert.worst_gap > 0.0 ||
          !verify_sparse(fam, 0.5 / 3.0).success)
        ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  detail = std::to_string(bad) + " failures in 50 instances";
  return bad == 0;
}

// ---- criterion 7: weak commutator bound across the function family ------

bool criterion7(std::string& detail) {
  const char* phis[] = {"phi_eps(0.25)", "phi_eps(0.5)", "phi_eps(1)", "phi_loglog(2)"};
  const char* bspecs[] = {"bumps(2)", "step(-1,1)", "power(0.3)"};
  double sup_base = 0.0, sup_fine = 0.0;
  for (int t = 0; t < 10; ++t) {
    Grid g = make_grid(1, 256, 1.0 / 256.0, 0.0);
    Lcg rng(700 + static_cast<std::uint64_t>(t));
    GridFunction f = generate_function(g, "bumps(" + std::to_string(2 + t % 3) + ")", rng);
    GridFunction b = generate_function(g, bspecs[t % 3], rng);
    GridFunction w = generate_function(g, "random(0.5,2)", rng);
    KernelPtr k = make_kernel("hilbert", g);
    GridFunction f2 = refine2(f), b2 = refine2(b), w2 = refine2(w);
    KernelPtr k2 = make_kernel("hilbert", f2.grid);
    for (const char* spec : phis) {
      YoungPtr phi = make_young(spec);
      CheckReport r =
          check_weakcomm(*k, b, f, w, phi, three_decade_grid(apply_T(*k, f), 10));
      sup_base = std::max(sup_base, r.empirical_constant);
      CheckReport r2 =
          check_weakcomm(*k2, b2, f2, w2, phi, three_decade_grid(apply_T(*k2, f2), 10));
      sup_fine = std::max(sup_fine, r2.empirical_constant);
    }
  }
  double drift = std::abs(sup_fine / sup_base - 1.0);
  bool band_ok = true;
  double band_lo = 1e300, band_hi = 0.0;
  for (int i = 1; i <= 10; ++i) {
    double eps = 0.1 * i;
    TailIntegral c = c_phi(*young_llogl_power(eps));
    if (!c.converged) band_ok = false;
    band_lo = std::min(band_lo, eps * c.value);
    band_hi = std::max(band_hi, eps * c.value);
  }
  band_ok = band_ok && band_lo >= 1.0 && band_hi <= 1.45;
  std::ostringstream os;
  os << "sup ratio " << sup_base << " -> " << sup_fine << " (drift " << 100.0 * drift
     << "%), scaled-constant band [" << band_lo << ", " << band_hi << "]";
  detail = os.str();
  return sup_base <= kWeakcommCeiling && drift <= 0.20 && band_ok;
}

// ---- criterion 8: two-weight bound on power weights ---------------------

bool criterion8(std::string& detail) {
  Grid g = make_grid(1, 128, 1.0 / 128.0, 0.0);
  Lcg rng(808);
  GridFunction b = generate_function(g, "bumps(2)", rng);
  std::vector<GridFunction> suite;
  for (int i = 0; i < 3; ++i) suite.push_back(generate_function(g, "random(0,1)", rng));
  KernelPtr k = make_kernel("hilbert", g);
  auto power_weight = [&](double a) {
    GridFunction w(g);
    for (long i = 0; i < 128; ++i) w.at(i) = std::pow(std::abs(g.center(0, i) - 0.5), a);
    return w;
  };
  double sup = 0.0;
  for (double a : {0.2, 0.5, 0.8}) {
    GridFunction mu = power_weight(a), lam = power_weight(-a);
    for (double p : {1.5, 2.0, 3.0}) {
      CheckReport r = check_bloom(*k, p, mu, lam, b, suite);
      sup = std::max(sup, r.empirical_constant);
    }
  }
  // exact bilinearity in the symbol
  GridFunction mu = power_weight(0.5), lam = power_weight(-0.5);
  CheckReport r1 = check_bloom(*k, 2.0, mu, lam, b, suite);
  GridFunction b2 = b;
  for (double& v : b2.values) v *= 2.0;
  CheckReport r2 = check_bloom(*k, 2.0, mu, lam, b2, suite);
  double bil = std::abs(r2.empirical_constant / r1.empirical_constant - 1.0);
  // one-weight specialization: the normalized ratio must not grow with the
  // characteristic (the doubled exponent is already divided out)
  std::vector<double> one;
  for (double a : {0.2, 0.5, 0.8})
    one.push_back(
        check_bloom(*k, 2.0, power_weight(a), power_weight(a), b, suite).empirical_constant);
  bool trend = one[2] <= one[0] * 1.10 && one[1] <= one[0] * 1.10;
  std::ostringstream os;
  os << "sup ratio " << sup << ", bilinearity gap " << bil << ", one-weight trend "
     << one[0] << " / " << one[1] << " / " << one[2];
  detail = os.str();
  return sup <= kBloomCeiling && bil <= 1e-12 && trend;
}

// ---- criterion 9: dual-weight identity ----------------------------------

bool criterion9(std::string& detail) {
  std::vector<GridFunction> weights;
  Grid g1 = make_grid(1, 32, 1.0 / 32.0, 0.0);
  for (std::uint64_t s : {90ull, 91ull}) {
    Lcg rng(s);
    GridFunction w(g1);
    for (double& v : w.values) v = std::exp(rng.uniform(-1.5, 1.5));
    weights.push_back(w);
  }
  for (double a : {0.5, -0.5}) {
    GridFunction w(g1);
    for (long i = 0; i < 32; ++i) w.at(i) = std::pow(std::abs(g1.center(0, i) - 0.5), a);
    weights.push_back(w);
  }
  {
    GridFunction w(g1);
    for (long i = 0; i < 32; ++i) w.at(i) = i < 16 ? 0.5 : 2.0;
    weights.push_back(w);
  }
  Grid g2 = make_grid(2, 8, 1.0 / 8.0, 0.0);
  {
    Lcg rng(92);
    GridFunction w(g2);
    for (double& v : w.values) v = std::exp(rng.uniform(-1.0, 1.0));
    weights.push_back(w);
  }
  int bad = 0;
  double worst = 0.0;
  for (const GridFunction& w : weights)
    for (double p : {1.5, 2.0, 3.0}) {
      GridFunction sigma = sigma_weight(w, p);
      double pp = p / (p - 1.0);
      for (const CellBox& q : all_cellboxes(w.grid)) {
        double aw = ap_constant(w, p, {q});
        double as = ap_constant(sigma, pp, {q});
        double err = std::abs(as / std::pow(aw, 1.0 / (p - 1.0)) - 1.0);
        worst = std::max(worst, err);
        if (err > 1e-12) ++bad;
      }
    }
  std::ostringstream os;
  os << bad << " cube violations, worst relative error " << worst;
  detail = os.str();
  return bad == 0;
}

// ---- criterion 10: determinism ------------------------------------------

bool criterion10(std::string& detail) {
  Scenario sc = Scenario::load(std::string(ACCEPT_DATA_DIR) + "/golden.cfg");
  ScenarioResult a = run_scenario(sc);
  ScenarioResult b = run_scenario(sc);
  bool reports_ok = !a.json.empty() && a.json == b.json && a.csv == b.csv;

  Padded p = padded_pair(32, "bumps(3)", "bumps(2)", 1010);
  DominationResult r =
      build_commutator_domination(*make_kernel("hilbert", p.f.grid), p.b, p.f);
  bool families_ok = true;
  for (SparseFamily s : r.families) {
    verify_sparse(s, 1.0 / 18.0);
    std::string text = s.to_text();
    families_ok = families_ok && SparseFamily::from_text(text).to_text() == text;
    std::string json = s.to_json();
    families_ok = families_ok && SparseFamily::from_json(json).to_json() == json;
  }
  detail = std::string("reports ") + (reports_ok ? "byte-identical" : "DIFFER") +
           ", families " + (families_ok ? "round-trip bit-exactly" : "DO NOT round-trip");
  return reports_ok && families_ok;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    bool (*fn)(std::string&);
  } criteria[] = {
      {1, "pointwise domination certificate", criterion1},
      {2, "norm threshold law", criterion2},
      {3, "product estimates", criterion3},
      {4, "covering bound, literal constants", criterion4},
      {5, "layered covering estimates", criterion5},
      {6, "oscillation refinement, exact constant", criterion6},
      {7, "weak commutator bound", criterion7},
      {8, "two-weight bound", criterion8},
      {9, "dual-weight identity", criterion9},
      {10, "determinism", criterion10},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("criterion %2d (%s): %s  [%s]\n", c.id, c.name, ok ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
