#include "sparsedom/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace sparsedom {

namespace {

long floor_div(long a, long b) {
  long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

long mod3(long a) {
  long r = a % 3;
  return r < 0 ? r + 3 : r;
}

bool is_pow2(long v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(long v) {
  int g = 0;
  while ((1L << g) < v) ++g;
  return g;
}

CellBox default_trunc(const Grid& g) {
  long s = std::max(g.cells[0], g.dim == 2 ? g.cells[1] : 1L);
  return CellBox{{-4 * s, -4 * s}, 9 * s};
}

}  // namespace

DyadicLattice DyadicLattice::standard(const Grid& g, int gen_max) {
  g.validate();
  DyadicLattice d;
  d.geom_ = g;
  d.shifted_ = false;
  d.gen_max_ = gen_max;
  d.trunc_ = default_trunc(g);
  return d;
}

DyadicLattice DyadicLattice::shifted(const Grid& g, std::array<int, 2> residues, int gen_max) {
  g.validate();
  for (int a = 0; a < g.dim; ++a)
    if (residues[a] < 0 || residues[a] > 2) throw ParameterError("lattice residue must be in {0,1,2}");
  DyadicLattice d;
  d.geom_ = g;
  d.shifted_ = true;
  d.res_ = residues;
  d.gen_max_ = gen_max;
  d.trunc_ = default_trunc(g);
  return d;
}

int DyadicLattice::residue(int axis, int g) const {
  if (!shifted_) return 0;
  int r = res_[axis];
  if (r == 0) return 0;
  return (g % 2 == 0) ? r : (2 * r) % 3;
}

bool DyadicLattice::is_member(const CellBox& q) const {
  long s = q.side;
  if (shifted_) {
    if (s % 3 != 0 || !is_pow2(s / 3)) return false;
    int g = log2_exact(s / 3);
    if (g > gen_max_) return false;
    long u = 1L << g;
    for (int a = 0; a < geom_.dim; ++a) {
      if (q.lo[a] % u != 0) return false;
      if (mod3(q.lo[a] / u) != residue(a, g)) return false;
    }
  } else {
    if (!is_pow2(s)) return false;
    int g = log2_exact(s);
    if (g > gen_max_) return false;
    for (int a = 0; a < geom_.dim; ++a)
      if (q.lo[a] % s != 0) return false;
  }
  return trunc_.contains(q);
}

std::vector<CellBox> DyadicLattice::children(const CellBox& q) const {
  if (q.side % 2 != 0) throw ParameterError("cube has no grid-resolvable children");
  long hside = q.side / 2;
  std::vector<CellBox> out;
  if (geom_.dim == 1) {
    out.push_back(CellBox{{q.lo[0], 0}, hside});
    out.push_back(CellBox{{q.lo[0] + hside, 0}, hside});
  } else {
    for (int dx = 0; dx < 2; ++dx)
      for (int dy = 0; dy < 2; ++dy)
        out.push_back(CellBox{{q.lo[0] + dx * hside, q.lo[1] + dy * hside}, hside});
  }
  return out;
}

CellBox DyadicLattice::triple_covering(const CellBox& q) const {
  if (!shifted_) throw StructuralError("triple_covering requires a shifted lattice");
  if (!is_pow2(q.side)) throw ParameterError("triple_covering expects a standard-lattice member");
  int g = log2_exact(q.side);
  long u = q.side;
  CellBox r;
  r.side = 3 * u;
  for (int a = 0; a < geom_.dim; ++a) {
    long k = q.lo[a] / u;
    long want = residue(a, g);
    long m = k - mod3(k - want);  // largest m <= k with m = want (mod 3)
    r.lo[a] = m * u;
  }
  if (!r.contains(q)) throw StructuralError("triple covering does not contain its cube");
  return r;
}

std::vector<CellBox> DyadicLattice::cubes_at_generation(int g, const CellBox& window) const {
  std::vector<CellBox> out;
  if (g < 0 || g > gen_max_) return out;
  long s = side_cells(g);
  long off[2] = {0, 0};
  if (shifted_) {
    long u = 1L << g;
    for (int a = 0; a < geom_.dim; ++a) off[a] = residue(a, g) * u;
  }
  auto ceil_div = [](long a, long b) { return floor_div(a + b - 1, b); };
  long x_first = off[0] + s * ceil_div(window.lo[0] - off[0] - s + 1, s);
  long x_last = window.lo[0] + window.side;  // exclusive bound on anchors
  if (geom_.dim == 1) {
    for (long x = x_first; x < x_last; x += s) {
      CellBox q{{x, 0}, s};
      if (trunc_.contains(q)) out.push_back(q);
    }
  } else {
    long y_first = off[1] + s * ceil_div(window.lo[1] - off[1] - s + 1, s);
    long y_last = window.lo[1] + window.side;
    for (long x = x_first; x < x_last; x += s)
      for (long y = y_first; y < y_last; y += s) {
        CellBox q{{x, y}, s};
        if (trunc_.contains(q)) out.push_back(q);
      }
  }
  return out;
}

std::vector<DyadicLattice> three_lattice_shifts(const DyadicLattice& base) {
  std::vector<DyadicLattice> out;
  const Grid& g = base.geometry();
  if (g.dim == 1) {
    for (int r = 0; r < 3; ++r) out.push_back(DyadicLattice::shifted(g, {r, 0}, base.gen_max()));
  } else {
    for (int r0 = 0; r0 < 3; ++r0)
      for (int r1 = 0; r1 < 3; ++r1)
        out.push_back(DyadicLattice::shifted(g, {r0, r1}, base.gen_max()));
  }
  return out;
}

CoveringResult covering_cube(const CellBox& q, const std::vector<DyadicLattice>& shifts) {
  if (shifts.empty()) throw ParameterError("no shifted lattices given");
  const DyadicLattice& d0 = shifts.front();
  const CellBox& trunc = d0.truncation_box();
  const int dim = d0.dim();
  for (int a = 0; a < dim; ++a) {
    if (q.lo[a] - 3 * q.side < trunc.lo[a] ||
        q.lo[a] + 4 * q.side > trunc.lo[a] + trunc.side)
      throw DomainError("cube too close to the truncation boundary for covering");
  }
  int gstar = 0;
  while ((2L << gstar) <= q.side) ++gstar;  // 2^gstar <= side < 2^(gstar+1)
  for (int g = gstar; g >= 0; --g) {
    long u = 1L << g;
    for (size_t j = 0; j < shifts.size(); ++j) {
      const DyadicLattice& d = shifts[j];
      CellBox p;
      p.side = 3 * u;
      bool ok = true;
      for (int a = 0; a < dim && ok; ++a) {
        long mmax = floor_div(q.lo[a], u);
        long want = d.residue(a, g);
        long m = mmax - mod3(mmax - want);
        if ((m + 3) * u < q.lo[a] + q.side) { ok = false; break; }
        p.lo[a] = m * u;
      }
      if (ok && p.contains(q)) return CoveringResult{static_cast<int>(j), p};
    }
  }
  throw StructuralError("no covering cube found (should not happen)");
}

}  // namespace sparsedom
