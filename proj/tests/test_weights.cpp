#include <cmath>

#include "doctest.h"
#include "sparsedom/luxemburg.hpp"
#include "sparsedom/rng.hpp"
#include "sparsedom/weights.hpp"

using namespace sparsedom;

namespace {

Grid unit_grid(int dim, long n) {
  Grid g;
  g.dim = dim;
  g.h = 1.0 / static_cast<double>(n);
  g.origin = {0.0, 0.0};
  g.cells = {n, dim == 2 ? n : 1};
  return g;
}

GridFunction random_weight(const Grid& g, Lcg& rng) {
  GridFunction w(g);
  for (double& v : w.values) v = std::exp(rng.uniform(-1.5, 1.5));
  return w;
}

}  // namespace

TEST_CASE("weights must be strictly positive") {
  GridFunction w(unit_grid(1, 8), 1.0);
  require_weight(w);
  w.values[3] = 0.0;
  CHECK_THROWS_AS(require_weight(w), DataError);
}

TEST_CASE("dual-weight identity holds per cube to 1e-12") {
  Lcg rng(41);
  for (int dim : {1, 2}) {
    Grid g = unit_grid(dim, dim == 1 ? 32 : 8);
    GridFunction w = random_weight(g, rng);
    for (double p : {1.5, 2.0, 3.0}) {
      GridFunction sigma = sigma_weight(w, p);
      double pp = p / (p - 1.0);
      for (const CellBox& q : all_cellboxes(g)) {
        double aw = ap_constant(w, p, {q});
        double as = ap_constant(sigma, pp, {q});
        CHECK(as == doctest::Approx(std::pow(aw, 1.0 / (p - 1.0))).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("constant weights have unit characteristics") {
  Grid g = unit_grid(1, 16);
  GridFunction w(g, 3.7);
  CHECK(ap_constant(w, 2.0, all_cellboxes(g)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a1_constant(w) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ainf_constant(w, all_cellboxes(g)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("characteristics are at least one and ordered") {
  Lcg rng(42);
  Grid g = unit_grid(1, 32);
  GridFunction w = random_weight(g, rng);
  double a1 = a1_constant(w);
  double a2 = ap_constant(w, 2.0, all_cellboxes(g));
  double ainf = ainf_constant(w, all_cellboxes(g));
  CHECK(a1 >= 1.0 - 1e-12);
  CHECK(a2 >= 1.0 - 1e-12);
  CHECK(ainf >= 1.0 - 1e-12);
  CHECK(a2 <= a1 * (1 + 1e-9));  // A_1 is the strongest class
}

TEST_CASE("oscillation of steps and constants") {
  Grid g = unit_grid(1, 16);
  GridFunction b(g, 2.0);
  CHECK(bmo_norm(b, all_cellboxes(g)) == 0.0);
  for (long i = 0; i < 16; ++i) b.at(i) = i < 8 ? -1.0 : 1.0;
  CHECK(mean_oscillation(b, CellBox{{0, 0}, 16}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bmo_norm(b, all_cellboxes(g)) == doctest::Approx(1.0).epsilon(1e-12));
  // against the constant reference weight the norms agree
  GridFunction one(g, 1.0);
  CHECK(weighted_bmo_norm(b, one, all_cellboxes(g)) ==
        doctest::Approx(bmo_norm(b, all_cellboxes(g))).epsilon(1e-12));
}

TEST_CASE("distribution functions count level sets exactly") {
  Grid g = unit_grid(1, 8);
  GridFunction w(g, 2.0), f(g, 0.0);
  for (long i = 0; i < 8; ++i) f.at(i) = static_cast<double>(i);
  CHECK(level_set_measure(f, 4.5) == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
  CHECK(distribution(w, f, 4.5) == doctest::Approx(2.0 * 3.0 / 8.0).epsilon(1e-12));
  CHECK(distribution(w, f, 100.0) == 0.0);
}

TEST_CASE("oscillation decay stays under the exponential envelope") {
  Lcg rng(43);
  Grid g = unit_grid(1, 64);
  GridFunction b(g);
  for (long i = 0; i < 64; ++i) b.at(i) = i < 32 ? -1.0 : 1.0;
  double bmo = bmo_norm(b, all_cellboxes(g));
  OscillationProfile prof = john_nirenberg_profile(b, CellBox{{0, 0}, 64}, bmo);
  CHECK(prof.under_envelope);
  CHECK(prof.envelope_rate == doctest::Approx(1.0 / (2.0 * std::exp(1.0) * bmo)).epsilon(1e-12));
  GridFunction br(g);
  for (double& v : br.values) v = rng.uniform(-1.0, 1.0);
  double bmor = bmo_norm(br, all_cellboxes(g));
  OscillationProfile pr = john_nirenberg_profile(br, CellBox{{0, 0}, 64}, bmor);
  CHECK(pr.under_envelope);
}

TEST_CASE("local dyadic maximal matches brute force") {
  Lcg rng(44);
  Grid g = unit_grid(1, 16);
  GridFunction f(g);
  for (double& v : f.values) v = rng.uniform(-2.0, 2.0);
  CellBox q{{8, 0}, 8};
  GridFunction m = dyadic_local_maximal(f, q);
  for (long x = 0; x < 16; ++x) {
    if (x < 8) {
      CHECK(m.at(x) == 0.0);
      continue;
    }
    double best = 0.0;
    for (long side = 1; side <= 8; side *= 2) {
      long a = 8 + ((x - 8) / side) * side;
      double s = 0.0;
      for (long i = a; i < a + side; ++i) s += std::abs(f.at(i));
      best = std::max(best, s / static_cast<double>(side));
    }
    CHECK(m.at(x) == doctest::Approx(best).epsilon(1e-12));
  }
  CHECK_THROWS_AS(dyadic_local_maximal(f, CellBox{{0, 0}, 6}), ParameterError);
}
