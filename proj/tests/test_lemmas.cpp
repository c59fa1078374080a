#include <cmath>

#include "doctest.h"
#include "sparsedom/domination.hpp"
#include "sparsedom/rng.hpp"
#include "sparsedom/weights.hpp"

using namespace sparsedom;

namespace {

Grid unit_grid(long n) {
  Grid g;
  g.dim = 1;
  g.h = 1.0 / static_cast<double>(n);
  g.origin = {0.0, 0.0};
  g.cells = {n, 1};
  return g;
}

}  // namespace

TEST_CASE("oscillation refinement certifies the literal pointwise constant") {
  Grid g = unit_grid(128);
  for (std::uint64_t seed : {71ull, 72ull, 73ull}) {
    Lcg rng(seed);
    GridFunction b = generate_function(g, "random(-1,1)", rng);
    SparseFamily s(g, {CellBox{{0, 0}, 128}, CellBox{{0, 0}, 32}, CellBox{{64, 0}, 32}});
    REQUIRE(verify_sparse(s, 0.5).success);
    OscillationCertificate cert = build_oscillation_family(b, s, 0.5);
    CHECK(cert.pointwise_holds);
    CHECK(cert.worst_gap <= 0.0);
    CHECK(cert.eta == doctest::Approx(0.5 / (2.0 * 1.5)).epsilon(1e-12));
    SparseFamily fam = cert.family;
    CHECK(verify_sparse(fam, cert.eta).success);
    // the refinement contains the base family
    for (const CellBox& q : s.cubes()) {
      bool found = false;
      for (const CellBox& r : fam.cubes())
        if (r == q) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("a smooth symbol yields a shallow refinement") {
  Grid g = unit_grid(64);
  GridFunction b(g);
  for (long i = 0; i < 64; ++i) b.at(i) = g.center(0, i);
  SparseFamily s(g, {CellBox{{0, 0}, 64}});
  REQUIRE(verify_sparse(s, 0.5).success);
  OscillationCertificate cert = build_oscillation_family(b, s, 0.5);
  CHECK(cert.pointwise_holds);
}

TEST_CASE("layered covering bound holds with its literal constants") {
  Grid g = unit_grid(64);
  GridFunction w1(g, 1.0);
  Lcg rng(74);
  GridFunction wr(g);
  for (double& v : wr.values) v = std::exp(rng.uniform(-1.0, 1.0));
  std::vector<char> everything(64, 1);

  // a constant function puts every cube in the same norm window
  GridFunction f(g, 0.2);
  SUBCASE("identity integrand on a chain") {
    // chain with 1/8 steps: 7/8-sparse as required for lambda = 4
    SparseFamily fk(g, {CellBox{{0, 0}, 64}, CellBox{{0, 0}, 8}, CellBox{{0, 0}, 1}});
    for (const GridFunction* w : {&w1, &wr}) {
      CheckReport r = key_lemma_check(*young_identity(), 4.0, f, fk, 1, true, *w,
                                      everything, *young_llogl());
      CHECK(r.pass);
      CHECK(r.empirical_constant <= 1.0 + 1e-8);
    }
  }
  SUBCASE("product integrand on a tree") {
    // norm of a constant under the product function: c / Phi^-1(1)
    YoungPtr psi = young_llogl();
    GridFunction fc(g, 0.2 * psi->inverse(1.0));
    // lambda = 16 demands 31/32 density: children may claim at most 2 cells
    SparseFamily fk(g, {CellBox{{0, 0}, 64}, CellBox{{0, 0}, 1}, CellBox{{32, 0}, 1}});
    CheckReport r = key_lemma_check(*psi, 16.0, fc, fk, 1, true, wr, everything,
                                    *young_llogl());
    CHECK(r.pass);
    CHECK(r.empirical_constant <= 1.0 + 1e-8);
  }
}

TEST_CASE("layered covering check rejects a bad growth constant") {
  Grid g = unit_grid(64);
  GridFunction f(g, 0.2), w(g, 1.0);
  SparseFamily fk(g, {CellBox{{0, 0}, 64}});
  std::vector<char> everything(64, 1);
  // identity has Psi(4t) = 4 Psi(t) > 2 Psi(t)
  CHECK_THROWS_AS(key_lemma_check(*young_identity(), 2.0, f, fk, 1, true, w, everything,
                                  *young_llogl()),
                  ParameterError);
}

TEST_CASE("oscillation ladder splits the sparse commutator operator exactly") {
  Grid g = unit_grid(128);
  Lcg rng(75);
  GridFunction b = generate_function(g, "random(-1,1)", rng);
  GridFunction f = generate_function(g, "random(0,0.2)", rng);
  SparseFamily s(g, {CellBox{{0, 0}, 128}, CellBox{{0, 0}, 32}, CellBox{{64, 0}, 32}});
  double bnorm = bmo_norm(b, all_cellboxes(g));
  TbfSplit split = tbf_decomposition(b, s, f, bnorm);
  CHECK(split.split_exact);
  CHECK(split.k_of_cube.size() == s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    CHECK(split.fraction[i] >= 0.0);
    CHECK(split.fraction[i] <= 1.0);
    CHECK(split.envelope[i] <= 1.0);
    CHECK(split.envelope[i] > 0.0);
  }
  CHECK(std::isfinite(split.worst_fraction_ratio));
}
