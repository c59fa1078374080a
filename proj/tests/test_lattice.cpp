#include <set>

#include "doctest.h"
#include "sparsedom/lattice.hpp"

using namespace sparsedom;

namespace {

Grid base_grid(int dim, long n) {
  Grid g;
  g.dim = dim;
  g.h = 1.0 / static_cast<double>(n);
  g.origin = {0.0, 0.0};
  g.cells = {n, dim == 2 ? n : 1};
  return g;
}

}  // namespace

TEST_CASE("standard lattice membership") {
  DyadicLattice lat = DyadicLattice::standard(base_grid(1, 16), 4);
  CHECK(lat.is_member(CellBox{{3, 0}, 1}));
  CHECK(lat.is_member(CellBox{{4, 0}, 2}));
  CHECK_FALSE(lat.is_member(CellBox{{3, 0}, 2}));
  CHECK(lat.is_member(CellBox{{8, 0}, 8}));
  CHECK_FALSE(lat.is_member(CellBox{{8, 0}, 3}));
}

TEST_CASE("children partition their parent") {
  for (int dim : {1, 2}) {
    DyadicLattice lat = DyadicLattice::standard(base_grid(dim, 16), 4);
    CellBox q{{4, dim == 2 ? 8 : 0}, 4};
    auto kids = lat.children(q);
    CHECK(kids.size() == (dim == 1 ? 2u : 4u));
    long covered = 0;
    for (const CellBox& c : kids) {
      CHECK(q.contains(c));
      CHECK(lat.is_member(c));
      covered += c.cell_count(dim);
    }
    CHECK(covered == q.cell_count(dim));
  }
}

TEST_CASE("every triple of a standard cube lies in exactly one shifted lattice") {
  for (int dim : {1, 2}) {
    Grid g = base_grid(dim, 16);
    DyadicLattice base = DyadicLattice::standard(g, 3);
    auto shifts = three_lattice_shifts(base);
    CHECK(shifts.size() == (dim == 1 ? 3u : 9u));
    for (int gen = 0; gen <= 2; ++gen) {
      long side = 1L << gen;
      for (long a = 0; a + side <= 16; a += side) {
        CellBox q{{a, dim == 2 ? a : 0}, side};
        int owners = 0;
        for (const DyadicLattice& s : shifts)
          if (s.is_member(q.tripled())) ++owners;
        CHECK(owners == 1);
      }
    }
  }
}

TEST_CASE("shifted lattice children stay in the same lattice") {
  Grid g = base_grid(1, 64);
  auto shifts = three_lattice_shifts(DyadicLattice::standard(g, 5));
  for (const DyadicLattice& s : shifts) {
    for (const CellBox& q : s.cubes_at_generation(3, CellBox{{-64, 0}, 192})) {
      for (const CellBox& c : s.children(q)) {
        CHECK(q.contains(c));
        CHECK(s.is_member(c));
      }
    }
  }
}

TEST_CASE("triple covering finds the unique containing triple") {
  Grid g = base_grid(1, 64);
  DyadicLattice base = DyadicLattice::standard(g, 5);
  auto shifts = three_lattice_shifts(base);
  for (long a = 0; a + 4 <= 64; a += 4) {
    CellBox q{{a, 0}, 4};
    int owners = 0;
    for (const DyadicLattice& s : shifts) {
      if (!s.is_member(q.tripled())) continue;
      ++owners;
      CellBox r = s.triple_covering(q);
      CHECK(r.side == 3 * q.side);
      CHECK(r.lo[0] == q.lo[0] - q.side);
    }
    CHECK(owners == 1);
  }
}

TEST_CASE("covering cube contains Q with at most triple side") {
  Grid g = base_grid(1, 64);
  auto shifts = three_lattice_shifts(DyadicLattice::standard(g, 5));
  for (long a : {8L, 13L, 27L, 40L}) {
    CellBox q{{a, 0}, 3};
    CoveringResult cr = covering_cube(q, shifts);
    CHECK(cr.cube.contains(q));
    CHECK(cr.cube.side <= 3 * q.side);
    CHECK(shifts[static_cast<size_t>(cr.shift_index)].is_member(cr.cube));
  }
}

TEST_CASE("residues alternate with generation parity") {
  Grid g = base_grid(1, 16);
  auto shifts = three_lattice_shifts(DyadicLattice::standard(g, 4));
  for (const DyadicLattice& s : shifts) {
    int r0 = s.residue(0, 0);
    CHECK(s.residue(0, 1) == (2 * r0) % 3);
    CHECK(s.residue(0, 2) == r0);
  }
  std::set<int> residues;
  for (const DyadicLattice& s : shifts) residues.insert(s.residue(0, 0));
  CHECK(residues == std::set<int>{0, 1, 2});
}
