#include "sparsedom/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace sparsedom {

void Grid::validate() const {
  if (dim != 1 && dim != 2) throw ParameterError("grid dim must be 1 or 2");
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("grid spacing must be positive");
  if (cells[0] <= 0 || (dim == 2 && cells[1] <= 0)) throw ParameterError("cell counts must be positive");
  if (dim == 1 && cells[1] != 1) throw ParameterError("cells[1] must be 1 for dim 1");
  for (int a = 0; a < dim; ++a)
    if (!std::isfinite(origin[a])) throw ParameterError("grid origin must be finite");
}

bool Grid::same_geometry(const Grid& other, double tol) const {
  if (dim != other.dim || cells != other.cells) return false;
  if (std::abs(h - other.h) > tol * h) return false;
  for (int a = 0; a < dim; ++a)
    if (std::abs(origin[a] - other.origin[a]) > tol * h) return false;
  return true;
}

void GridFunction::validate() const {
  grid.validate();
  if (static_cast<long>(values.size()) != grid.cell_count())
    throw DataError("value count does not match grid");
  for (double v : values)
    if (!std::isfinite(v)) throw DataError("non-finite sample in grid function");
}

long to_cell_index(const Grid& g, int axis, double x) {
  double r = (x - g.origin[axis]) / g.h;
  double n = std::round(r);
  if (std::abs(r - n) > 1e-9 * std::max(1.0, std::abs(r)))
    throw AlignmentError("coordinate is not grid-aligned");
  return static_cast<long>(n);
}

CellBox to_cellbox(const Grid& g, const Cube& q) {
  if (!(q.side > 0)) throw ParameterError("cube side must be positive");
  CellBox b;
  for (int a = 0; a < g.dim; ++a) b.lo[a] = to_cell_index(g, a, q.anchor[a]);
  double r = q.side / g.h;
  double n = std::round(r);
  if (n < 1.0 || std::abs(r - n) > 1e-9 * std::max(1.0, r))
    throw AlignmentError("cube side is not a multiple of the grid spacing");
  b.side = static_cast<long>(n);
  if (g.dim == 1) b.lo[1] = 0;
  return b;
}

Cube to_cube(const Grid& g, const CellBox& b) {
  Cube q;
  for (int a = 0; a < g.dim; ++a) q.anchor[a] = g.coord(a, b.lo[a]);
  q.side = g.h * static_cast<double>(b.side);
  return q;
}

static void require_inside(const Grid& g, const CellBox& b) {
  if (b.lo[0] < 0 || b.lo[0] + b.side > g.cells[0] ||
      (g.dim == 2 && (b.lo[1] < 0 || b.lo[1] + b.side > g.cells[1])))
    throw DomainError("cube reaches outside the grid box");
}

double cube_average(const GridFunction& f, const CellBox& b) {
  require_inside(f.grid, b);
  double s = 0.0;
  if (f.grid.dim == 1) {
    for (long i = b.lo[0]; i < b.lo[0] + b.side; ++i) s += f.at(i);
  } else {
    for (long i = b.lo[0]; i < b.lo[0] + b.side; ++i)
      for (long j = b.lo[1]; j < b.lo[1] + b.side; ++j) s += f.at(i, j);
  }
  return s / static_cast<double>(b.cell_count(f.grid.dim));
}

double cube_average(const GridFunction& f, const Cube& q) {
  return cube_average(f, to_cellbox(f.grid, q));
}

double cell_sum_clipped(const GridFunction& f, const CellBox& b) {
  const Grid& g = f.grid;
  long x0 = std::max(b.lo[0], 0L), x1 = std::min(b.lo[0] + b.side, g.cells[0]);
  double s = 0.0;
  if (g.dim == 1) {
    for (long i = x0; i < x1; ++i) s += f.at(i);
  } else {
    long y0 = std::max(b.lo[1], 0L), y1 = std::min(b.lo[1] + b.side, g.cells[1]);
    for (long i = x0; i < x1; ++i)
      for (long j = y0; j < y1; ++j) s += f.at(i, j);
  }
  return s;
}

double cube_average_clipped(const GridFunction& f, const CellBox& b) {
  return cell_sum_clipped(f, b) / static_cast<double>(b.cell_count(f.grid.dim));
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_text(const GridFunction& f) {
  std::ostringstream os;
  os << "dim " << f.grid.dim << "\n";
  os << "origin";
  for (int a = 0; a < f.grid.dim; ++a) os << ' ' << format_double(f.grid.origin[a]);
  os << "\n";
  os << "h " << format_double(f.grid.h) << "\n";
  os << "cells";
  for (int a = 0; a < f.grid.dim; ++a) os << ' ' << f.grid.cells[a];
  os << "\n";
  os << "values\n";
  for (size_t i = 0; i < f.values.size(); ++i) {
    os << format_double(f.values[i]);
    os << (((i + 1) % 8 == 0) ? '\n' : ' ');
  }
  os << "\n";
  return os.str();
}

GridFunction grid_function_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  GridFunction f;
  auto expect = [&](const char* kw) {
    if (!(is >> tok) || tok != kw) throw ParseError(std::string("expected '") + kw + "' in grid text");
  };
  expect("dim");
  if (!(is >> f.grid.dim)) throw ParseError("bad dim");
  if (f.grid.dim != 1 && f.grid.dim != 2) throw ParseError("dim must be 1 or 2");
  expect("origin");
  for (int a = 0; a < f.grid.dim; ++a)
    if (!(is >> f.grid.origin[a])) throw ParseError("bad origin");
  expect("h");
  if (!(is >> f.grid.h)) throw ParseError("bad h");
  expect("cells");
  for (int a = 0; a < f.grid.dim; ++a)
    if (!(is >> f.grid.cells[a])) throw ParseError("bad cells");
  if (f.grid.dim == 1) f.grid.cells[1] = 1;
  expect("values");
  long n = f.grid.cell_count();
  f.values.resize(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i)
    if (!(is >> f.values[static_cast<size_t>(i)])) throw ParseError("missing values");
  f.validate();
  return f;
}

std::string to_json(const GridFunction& f) {
  nlohmann::ordered_json j;
  j["dim"] = f.grid.dim;
  j["origin"] = std::vector<double>(f.grid.origin.begin(), f.grid.origin.begin() + f.grid.dim);
  j["h"] = f.grid.h;
  j["cells"] = std::vector<long>(f.grid.cells.begin(), f.grid.cells.begin() + f.grid.dim);
  j["values"] = f.values;
  return j.dump();
}

GridFunction grid_function_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad grid json: ") + e.what());
  }
  GridFunction f;
  f.grid.dim = j.at("dim").get<int>();
  auto o = j.at("origin").get<std::vector<double>>();
  auto c = j.at("cells").get<std::vector<long>>();
  if (static_cast<int>(o.size()) != f.grid.dim || static_cast<int>(c.size()) != f.grid.dim)
    throw ParseError("origin/cells length mismatch");
  for (int a = 0; a < f.grid.dim; ++a) {
    f.grid.origin[a] = o[static_cast<size_t>(a)];
    f.grid.cells[a] = c[static_cast<size_t>(a)];
  }
  if (f.grid.dim == 1) f.grid.cells[1] = 1;
  f.grid.h = j.at("h").get<double>();
  f.values = j.at("values").get<std::vector<double>>();
  f.validate();
  return f;
}

}  // namespace sparsedom
