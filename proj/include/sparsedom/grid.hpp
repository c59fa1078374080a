#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsedom/errors.hpp"

namespace sparsedom {

// Geometry of a uniform half-open grid over a box in R^n, n in {1,2}.
// Cell (i,j) is the half-open cube [origin + i*h, origin + (i+1)*h) x ...
struct Grid {
  int dim = 1;
  std::array<double, 2> origin{0.0, 0.0};
  double h = 1.0;
  std::array<long, 2> cells{1, 1};  // cells[1] == 1 when dim == 1

  long cell_count() const { return dim == 1 ? cells[0] : cells[0] * cells[1]; }
  double cell_volume() const { return dim == 1 ? h : h * h; }

  double coord(int axis, long i) const { return origin[axis] + h * static_cast<double>(i); }
  // midpoint of cell i along an axis
  double center(int axis, long i) const { return origin[axis] + h * (static_cast<double>(i) + 0.5); }

  long index(long ix, long iy = 0) const { return dim == 1 ? ix : ix * cells[1] + iy; }
  bool in_range(long ix, long iy = 0) const {
    return ix >= 0 && ix < cells[0] && (dim == 1 || (iy >= 0 && iy < cells[1]));
  }

  void validate() const;
  bool same_geometry(const Grid& other, double tol = 1e-9) const;
};

// A real-valued function on a grid, one sample per cell, interpreted as
// constant on the cell.
struct GridFunction {
  Grid grid;
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(const Grid& g, double fill = 0.0)
      : grid(g), values(static_cast<size_t>(g.cell_count()), fill) {}

  double& at(long ix, long iy = 0) { return values[static_cast<size_t>(grid.index(ix, iy))]; }
  double at(long ix, long iy = 0) const { return values[static_cast<size_t>(grid.index(ix, iy))]; }

  void validate() const;  // finite values, matching length
};

// A half-open cube prod_i [anchor_i, anchor_i + side) with real coordinates.
struct Cube {
  std::array<double, 2> anchor{0.0, 0.0};
  double side = 0.0;
};

// The same cube expressed in integer cell units of some grid: the cube
// covers cells lo[axis] .. lo[axis]+side-1 along each axis.  May extend
// beyond the grid's own cell range.
struct CellBox {
  std::array<long, 2> lo{0, 0};
  long side = 1;

  bool contains(const CellBox& other) const {
    return other.lo[0] >= lo[0] && other.lo[0] + other.side <= lo[0] + side &&
           other.lo[1] >= lo[1] && other.lo[1] + other.side <= lo[1] + side;
  }
  bool contains_cell(long ix, long iy) const {
    return ix >= lo[0] && ix < lo[0] + side && iy >= lo[1] && iy < lo[1] + side;
  }
  bool intersects(const CellBox& other) const {
    return lo[0] < other.lo[0] + other.side && other.lo[0] < lo[0] + side &&
           lo[1] < other.lo[1] + other.side && other.lo[1] < lo[1] + side;
  }
  bool operator==(const CellBox& other) const {
    return lo == other.lo && side == other.side;
  }
  long cell_count(int dim) const { return dim == 1 ? side : side * side; }
  // concentric triple 3Q (side must stay integral in cell units)
  CellBox tripled() const { return CellBox{{lo[0] - side, lo[1] - side}, 3 * side}; }
};

// Round a real coordinate to a cell index; throws AlignmentError when it is
// not an integer multiple of h (relative tolerance 1e-9).
long to_cell_index(const Grid& g, int axis, double x);

// Convert a real cube to cell units; throws AlignmentError.
CellBox to_cellbox(const Grid& g, const Cube& q);
Cube to_cube(const Grid& g, const CellBox& b);

// (1/|Q|) int_Q f, exact for the piecewise-constant model.
// Q must be grid-aligned and inside f's box.
double cube_average(const GridFunction& f, const Cube& q);
double cube_average(const GridFunction& f, const CellBox& b);

// Average with f extended by zero outside its box (the denominator is the
// full |Q|).  Used for cubes of the truncated lattice that stick out.
double cube_average_clipped(const GridFunction& f, const CellBox& b);

// Sum of f over the part of b inside the grid (no volume factor).
double cell_sum_clipped(const GridFunction& f, const CellBox& b);

// ---- serialization ----------------------------------------------------
// Plain-text: header lines (dim, origin, h, cells) then whitespace
// separated values, all reals with 17 significant digits.
std::string to_text(const GridFunction& f);
GridFunction grid_function_from_text(const std::string& text);

std::string to_json(const GridFunction& f);
GridFunction grid_function_from_json(const std::string& text);

// 17-significant-digit decimal, round-trip exact for doubles.
std::string format_double(double x);

}  // namespace sparsedom
