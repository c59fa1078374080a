#include <cmath>

#include "doctest.h"
#include "sparsedom/orlicz_checks.hpp"
#include "sparsedom/rng.hpp"

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

GridFunction random_fn(const Grid& g, Lcg& rng) {
  GridFunction f(g);
  for (double& v : f.values) v = rng.uniform(0.0, 3.0);
  return f;
}

}  // namespace

TEST_CASE("two-function estimate holds with the factor 2") {
  Lcg rng(31);
  Grid g = unit_grid(32);
  for (const char* spec : {"phi_llogl", "power(2)", "power(1.5)"}) {
    YoungPtr phi = make_young(spec);
    for (int i = 0; i < 20; ++i) {
      GridFunction f = random_fn(g, rng), h = random_fn(g, rng);
      CheckReport r = holder_pair(f, h, CellBox{{0, 0}, 32}, *phi);
      CHECK(r.pass);
      CHECK(r.empirical_constant <= 1.0 + 1e-8);
    }
  }
}

TEST_CASE("three-function estimate holds for admissible triples") {
  Lcg rng(32);
  Grid g = unit_grid(32);
  GridFunction f = random_fn(g, rng), h = random_fn(g, rng);
  // conjugate powers multiply into the identity
  CheckReport r = generalized_holder(f, h, CellBox{{4, 0}, 16}, *young_power(2.0),
                                     *young_power(2.0), *young_identity());
  CHECK(r.pass);
  r = generalized_holder(f, h, CellBox{{0, 0}, 32}, *young_power(3.0), *young_power(1.5),
                         *young_identity());
  CHECK(r.pass);
}

TEST_CASE("three-function estimate rejects inadmissible triples") {
  Lcg rng(33);
  Grid g = unit_grid(16);
  GridFunction f = random_fn(g, rng), h = random_fn(g, rng);
  // A^-1 B^-1 = t grows past 2 C^-1 = 2 sqrt(t)
  CHECK_THROWS_AS(generalized_holder(f, h, CellBox{{0, 0}, 16}, *young_power(2.0),
                                     *young_power(2.0), *young_power(2.0)),
                  ParameterError);
}

TEST_CASE("the product function is submultiplicative up to a factor 2") {
  CheckReport r = submultiplicativity_check();
  CHECK(r.pass);
  CHECK(r.empirical_constant <= 1.0 + 1e-12);
}

TEST_CASE("composed constants stay within a factor of the base constant") {
  CheckReport r = composed_constant_check(*make_young("phi_eps(0.5)"));
  CHECK(r.pass);
  CHECK(r.empirical_constant > 0.0);
  CHECK(std::isfinite(r.empirical_constant));
}
