#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "sparsedom/kernel.hpp"
#include "sparsedom/rng.hpp"

using namespace sparsedom;

namespace {

Grid sym_grid1(long n, double half = 2.0) {
  Grid g;
  g.dim = 1;
  g.h = 2.0 * half / static_cast<double>(n);
  g.origin = {-half, 0.0};
  g.cells = {n, 1};
  return g;
}

}  // namespace

TEST_CASE("combined kernel constants") {
  Grid g = sym_grid1(16);
  KernelPtr hk = make_kernel("hilbert", g);
  CHECK(hk->c_t() == doctest::Approx(3.141592653589793 + 1.0 + 2.0).epsilon(1e-12));
  CHECK_FALSE(hk->norm_is_estimate());
  Grid g2;
  g2.dim = 2;
  g2.h = 0.25;
  g2.origin = {-1.0, -1.0};
  g2.cells = {8, 8};
  KernelPtr rk = make_kernel("riesz2d_x", g2);
  CHECK(rk->c_t() == doctest::Approx(2.0 * 3.141592653589793 + 1.0 + 32.0).epsilon(1e-12));
  CHECK_THROWS(make_kernel("no_such_kernel", g));
}

TEST_CASE("discretized transform matches the closed form away from the support") {
  long n = 512;
  Grid g = sym_grid1(n, 2.0);
  GridFunction f(g, 0.0);
  // f = indicator of [0,1): Tf(x) = log|x / (x-1)| off the support
  for (long i = 0; i < n; ++i) {
    double c = g.center(0, i);
    if (c >= 0.0 && c < 1.0) f.at(i) = 1.0;
  }
  GridFunction tf = apply_T(*make_kernel("hilbert", g), f);
  for (double x : {-1.5, -0.75, 1.5, 1.9}) {
    long i = static_cast<long>((x - g.origin[0]) / g.h);
    double exact = std::log(std::abs(g.center(0, i) / (g.center(0, i) - 1.0)));
    CHECK(tf.at(i) == doctest::Approx(exact).epsilon(2e-2));
  }
}

TEST_CASE("odd kernel with even data gives an odd transform") {
  long n = 64;
  Grid g = sym_grid1(n, 1.0);
  GridFunction f(g, 0.0);
  for (long i = 0; i < n; ++i)
    if (std::abs(g.center(0, i)) < 0.5) f.at(i) = 1.0;
  GridFunction tf = apply_T(*make_kernel("hilbert", g), f);
  for (long i = 0; i < n; ++i)
    CHECK(tf.at(i) == doctest::Approx(-tf.at(n - 1 - i)).epsilon(1e-10));
}

TEST_CASE("maximal truncations dominate the full transform") {
  Lcg rng(51);
  Grid g = sym_grid1(64, 1.0);
  GridFunction f(g);
  for (double& v : f.values) v = rng.uniform(-1.0, 1.0);
  KernelPtr k = make_kernel("hilbert", g);
  GridFunction tf = apply_T(*k, f);
  GridFunction ts = maximal_truncated(*k, f);
  for (long i = 0; i < 64; ++i) CHECK(ts.at(i) >= std::abs(tf.at(i)) - 1e-12);
}

TEST_CASE("a linear symbol turns the commutator into plain integration") {
  // b(x) = x: (x - y) K(x,y) = 1, so [b,T]f(x_i) = sum_{j != i} f_j h
  Lcg rng(52);
  Grid g = sym_grid1(32, 1.0);
  GridFunction f(g), b(g);
  for (double& v : f.values) v = rng.uniform(-1.0, 1.0);
  for (long i = 0; i < 32; ++i) b.at(i) = g.center(0, i);
  GridFunction c = commutator(*make_kernel("hilbert", g), b, f);
  double total = 0.0;
  for (double v : f.values) total += v * g.h;
  for (long i = 0; i < 32; ++i)
    CHECK(c.at(i) == doctest::Approx(total - f.at(i) * g.h).epsilon(1e-10));
}

TEST_CASE("constant symbols commute") {
  Lcg rng(53);
  Grid g = sym_grid1(32, 1.0);
  GridFunction f(g), b(g, 4.2);
  for (double& v : f.values) v = rng.uniform(-1.0, 1.0);
  GridFunction c = commutator(*make_kernel("hilbert", g), b, f);
  for (double v : c.values) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("tabulated kernels reproduce the sampled analytic kernel") {
  Grid g = sym_grid1(16, 1.0);
  KernelPtr hk = make_kernel("hilbert", g);
  long n = g.cell_count();
  std::string path = "/tmp/ktab_test.bin";
  {
    std::ofstream out(path, std::ios::binary);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        double v = i == j ? 0.0
                          : hk->eval({g.center(0, i), 0.0}, {g.center(0, j), 0.0});
        out.write(reinterpret_cast<const char*>(&v), sizeof v);
      }
  }
  KernelPtr tk = make_kernel("tabulated:" + path, g);
  CHECK(tk->norm_is_estimate());
  Lcg rng(54);
  GridFunction f(g);
  for (double& v : f.values) v = rng.uniform(-1.0, 1.0);
  GridFunction a = apply_T(*hk, f), b = apply_T(*tk, f);
  for (long i = 0; i < 16; ++i) CHECK(a.at(i) == doctest::Approx(b.at(i)).epsilon(1e-12));
  std::remove(path.c_str());
}

TEST_CASE("boxed application only sees the restricted data") {
  Lcg rng(55);
  Grid g = sym_grid1(32, 1.0);
  GridFunction f(g);
  for (double& v : f.values) v = rng.uniform(-1.0, 1.0);
  KernelPtr k = make_kernel("hilbert", g);
  CellBox box{{8, 0}, 16};
  GridFunction restricted(g, 0.0);
  for (long i = 8; i < 24; ++i) restricted.at(i) = f.at(i);
  GridFunction a = apply_T_boxed(*k, f, box), b = apply_T(*k, restricted);
  for (long i = 0; i < 32; ++i) CHECK(a.at(i) == doctest::Approx(b.at(i)).epsilon(1e-13));
}

TEST_CASE("local grand maximal vanishes off its root cube") {
  Lcg rng(56);
  Grid g = sym_grid1(64, 1.0);
  GridFunction f(g);
  for (double& v : f.values) v = rng.uniform(0.0, 1.0);
  KernelPtr k = make_kernel("hilbert", g);
  CellBox q0{{16, 0}, 16};
  GridFunction m = local_grand_maximal(*k, f, q0);
  for (long i = 0; i < 64; ++i) {
    if (i < 16 || i >= 32) CHECK(m.at(i) == 0.0);
    else CHECK(m.at(i) >= 0.0);
  }
  CHECK_THROWS_AS(local_grand_maximal(*k, f, CellBox{{0, 0}, 6}), ParameterError);
}
