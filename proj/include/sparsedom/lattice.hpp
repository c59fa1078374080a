#pragma once

#include <optional>
#include <vector>

#include "sparsedom/grid.hpp"

namespace sparsedom {

// Dyadic lattices aligned with a reference grid, truncated to a finite range
// of generations and to cubes meeting an enclosing box (9x the data box).
//
// Standard lattice: generation-g cubes (g >= 0) have side h*2^g and anchor
// cell index k*2^g.  The grid cells are the generation-0 cubes.
//
// Shifted lattices D^(j): the triples {3Q : Q standard} split into 3^n
// lattices.  A generation-g cube of D^(j) has side 3h*2^g and anchor cell
// index m*2^g with m congruent (mod 3) to a residue that alternates with the
// generation parity: residue(j, g) = j for even g and 2j mod 3 for odd g.
// This is the unique assignment under which each cube's 2^n dyadic children
// belong to the same lattice.
class DyadicLattice {
 public:
  static DyadicLattice standard(const Grid& g, int gen_max);
  static DyadicLattice shifted(const Grid& g, std::array<int, 2> residues, int gen_max);

  int dim() const { return geom_.dim; }
  bool is_shifted() const { return shifted_; }
  std::array<int, 2> residues() const { return res_; }
  int gen_max() const { return gen_max_; }
  const Grid& geometry() const { return geom_; }
  const CellBox& truncation_box() const { return trunc_; }

  // side of a generation-g cube, in cells
  long side_cells(int g) const { return (shifted_ ? 3L : 1L) << g; }
  int residue(int axis, int g) const;

  bool is_member(const CellBox& q) const;
  bool is_member(const Cube& q) const { return is_member(to_cellbox(geom_, q)); }

  // The 2^n dyadic children of a member (generation g >= 1 cubes only).
  std::vector<CellBox> children(const CellBox& q) const;

  // The unique member of this (shifted) lattice with side 3*l_Q containing
  // the given standard-lattice member Q.  Exists by the three-lattice
  // theorem; throws StructuralError if this lattice is not shifted.
  CellBox triple_covering(const CellBox& q) const;

  // All member cubes of generation g that intersect the given cell range
  // (clipped to the truncation box).
  std::vector<CellBox> cubes_at_generation(int g, const CellBox& window) const;

 private:
  Grid geom_;
  bool shifted_ = false;
  std::array<int, 2> res_{0, 0};
  int gen_max_ = 0;
  CellBox trunc_;  // enclosing box, in cell units (9x the data box)
};

// The 3^n shifted lattices of the three-lattice theorem, ordered by residue
// (lexicographic over axes).
std::vector<DyadicLattice> three_lattice_shifts(const DyadicLattice& base);

struct CoveringResult {
  int shift_index = 0;  // index into the three_lattice_shifts order
  CellBox cube;
};

// Some P in one of the shifted lattices with Q inside P and l_P <= 3 l_Q.
// Deterministic: the largest admissible scale, then smallest shift index
// (the containing member at a fixed scale and shift is unique).
// Q must sit inside the truncation box with margin >= 3 l_Q.
CoveringResult covering_cube(const CellBox& q, const std::vector<DyadicLattice>& shifts);

}  // namespace sparsedom
