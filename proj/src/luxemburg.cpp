#include "sparsedom/luxemburg.hpp"

#include <algorithm>
#include <cmath>

namespace sparsedom {

namespace {

// Collect the |f| samples of b.  With clip the box is intersected with the
// grid range (missing cells are dropped, the caller keeps the full
// denominator); without it the box must lie inside the range.
void gather_abs(const GridFunction& f, const CellBox& b, bool clip, std::vector<double>& out) {
  const Grid& g = f.grid;
  long x0 = b.lo[0], x1 = b.lo[0] + b.side;
  long y0 = b.lo[1], y1 = b.lo[1] + b.side;
  if (g.dim == 1) { y0 = 0; y1 = 1; }
  if (clip) {
    x0 = std::max(x0, 0L); x1 = std::min(x1, g.cells[0]);
    y0 = std::max(y0, 0L); y1 = std::min(y1, g.dim == 1 ? 1L : g.cells[1]);
  } else if (x0 < 0 || x1 > g.cells[0] || (g.dim == 2 && (y0 < 0 || y1 > g.cells[1]))) {
    throw DomainError("cube extends outside the grid box");
  }
  out.clear();
  for (long ix = x0; ix < x1; ++ix)
    for (long iy = y0; iy < y1; ++iy)
      out.push_back(std::abs(f.at(ix, iy)));
}

}  // namespace

double luxemburg_norm_values(const std::vector<double>& values, long denom,
                             const YoungFunction& phi) {
  if (denom <= 0) throw ParameterError("Luxemburg norm needs a positive cell count");
  double r = phi.power_form();
  if (r > 0.0) {
    double s = 0.0;
    for (double v : values) s += std::pow(std::abs(v), r);
    return std::pow(s / static_cast<double>(denom), 1.0 / r);
  }
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  auto mean = [&](double lam) {
    double s = 0.0;
    for (double v : values) s += phi.value(std::abs(v) / lam);
    return s / static_cast<double>(denom);
  };
  double hi = m;
  while (mean(hi) > 1.0) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw ContractError("Luxemburg norm failed to bracket");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (mean(mid) <= 1.0 ? hi : lo) = mid;
  }
  return hi;
}

double luxemburg_norm(const GridFunction& f, const CellBox& b, const YoungFunction& phi) {
  std::vector<double> vals;
  gather_abs(f, b, false, vals);
  return luxemburg_norm_values(vals, b.cell_count(f.grid.dim), phi);
}

double luxemburg_norm(const GridFunction& f, const Cube& q, const YoungFunction& phi) {
  return luxemburg_norm(f, to_cellbox(f.grid, q), phi);
}

double luxemburg_norm_clipped(const GridFunction& f, const CellBox& b, const YoungFunction& phi) {
  std::vector<double> vals;
  gather_abs(f, b, true, vals);
  return luxemburg_norm_values(vals, b.cell_count(f.grid.dim), phi);
}

namespace {

void take_max_over_box(GridFunction& out, const CellBox& b, double v) {
  const Grid& g = out.grid;
  long x0 = std::max(b.lo[0], 0L), x1 = std::min(b.lo[0] + b.side, g.cells[0]);
  long y0 = 0, y1 = 1;
  if (g.dim == 2) {
    y0 = std::max(b.lo[1], 0L);
    y1 = std::min(b.lo[1] + b.side, g.cells[1]);
  }
  for (long ix = x0; ix < x1; ++ix)
    for (long iy = y0; iy < y1; ++iy) {
      double& slot = out.at(ix, iy);
      slot = std::max(slot, v);
    }
}

template <class NormOf>
GridFunction all_cubes_sup(const GridFunction& f, NormOf norm_of) {
  const Grid& g = f.grid;
  GridFunction out(g, 0.0);
  long nx = g.cells[0], ny = g.dim == 1 ? 1 : g.cells[1];
  long max_side = g.dim == 1 ? nx : std::min(nx, ny);
  for (long side = 1; side <= max_side; ++side)
    for (long x0 = 0; x0 + side <= nx; ++x0)
      for (long y0 = 0; y0 + (g.dim == 1 ? 1 : side) <= ny; ++y0) {
        CellBox b{{x0, y0}, side};
        take_max_over_box(out, b, norm_of(b));
      }
  return out;
}

}  // namespace

GridFunction orlicz_maximal(const GridFunction& f, const YoungFunction& phi,
                            MaximalMode mode, const DyadicLattice* lattice) {
  f.validate();
  if (mode == MaximalMode::AllCubes) {
    std::vector<double> buf;
    return all_cubes_sup(f, [&](const CellBox& b) {
      gather_abs(f, b, false, buf);
      return luxemburg_norm_values(buf, b.cell_count(f.grid.dim), phi);
    });
  }
  if (lattice == nullptr) throw ParameterError("one-lattice maximal needs a lattice");
  if (!lattice->geometry().same_geometry(f.grid))
    throw AlignmentError("lattice and function live on different grids");
  const Grid& g = f.grid;
  GridFunction out(g, 0.0);
  CellBox window{{0, 0}, std::max(g.cells[0], g.dim == 1 ? 1L : g.cells[1])};
  for (int gen = 0; gen <= lattice->gen_max(); ++gen)
    for (const CellBox& q : lattice->cubes_at_generation(gen, window))
      take_max_over_box(out, q, luxemburg_norm_clipped(f, q, phi));
  return out;
}

GridFunction orlicz_maximal_shifted(const GridFunction& f, const YoungFunction& phi,
                                    const std::vector<DyadicLattice>& shifts) {
  f.validate();
  double inv1 = phi.inverse(1.0);
  GridFunction out(f.grid, 0.0);
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = std::abs(f.values[i]) / inv1;
  for (const DyadicLattice& lat : shifts) {
    GridFunction one = orlicz_maximal(f, phi, MaximalMode::OneLattice, &lat);
    for (size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = std::max(out.values[i], one.values[i]);
  }
  return out;
}

std::vector<char> orlicz_maximal_level_set(const GridFunction& f, const YoungFunction& phi,
                                           double lambda) {
  if (!(lambda > 0.0)) throw ParameterError("level-set threshold must be positive");
  f.validate();
  const Grid& g = f.grid;
  long nx = g.cells[0], ny = g.dim == 1 ? 1 : g.cells[1];
  // ||f||_{phi,Q} > lambda iff sum_Q phi(|f|/lambda) > #cells(Q); scanning
  // cubes over prefix sums of phi(|f|/lambda) avoids every bisection.
  std::vector<double> pre(static_cast<size_t>((nx + 1) * (ny + 1)), 0.0);
  auto P = [&](long ix, long iy) -> double& { return pre[static_cast<size_t>(ix * (ny + 1) + iy)]; };
  for (long ix = 0; ix < nx; ++ix)
    for (long iy = 0; iy < ny; ++iy)
      P(ix + 1, iy + 1) = phi.value(std::abs(f.at(ix, iy)) / lambda) +
                          P(ix, iy + 1) + P(ix + 1, iy) - P(ix, iy);
  std::vector<long> diff(static_cast<size_t>((nx + 1) * (ny + 1)), 0);
  auto D = [&](long ix, long iy) -> long& { return diff[static_cast<size_t>(ix * (ny + 1) + iy)]; };
  long max_side = g.dim == 1 ? nx : std::min(nx, ny);
  for (long side = 1; side <= max_side; ++side) {
    long sy = g.dim == 1 ? 1 : side;
    double count = static_cast<double>(side * sy);
    for (long x0 = 0; x0 + side <= nx; ++x0)
      for (long y0 = 0; y0 + sy <= ny; ++y0) {
        double s = P(x0 + side, y0 + sy) - P(x0, y0 + sy) - P(x0 + side, y0) + P(x0, y0);
        if (s > count) {
          ++D(x0, y0); --D(x0 + side, y0); --D(x0, y0 + sy); ++D(x0 + side, y0 + sy);
        }
      }
  }
  std::vector<char> marked(static_cast<size_t>(nx * ny), 0);
  std::vector<long> acc(static_cast<size_t>(ny), 0);
  long run = 0;
  for (long ix = 0; ix < nx; ++ix) {
    run = 0;
    for (long iy = 0; iy < ny; ++iy) {
      acc[static_cast<size_t>(iy)] += D(ix, iy);
      run += acc[static_cast<size_t>(iy)];
      marked[static_cast<size_t>(g.index(ix, iy))] = run > 0 ? 1 : 0;
    }
  }
  return marked;
}

GridFunction hl_maximal(const GridFunction& f) {
  f.validate();
  const Grid& g = f.grid;
  long nx = g.cells[0], ny = g.dim == 1 ? 1 : g.cells[1];
  std::vector<double> pre(static_cast<size_t>((nx + 1) * (ny + 1)), 0.0);
  auto P = [&](long ix, long iy) -> double& { return pre[static_cast<size_t>(ix * (ny + 1) + iy)]; };
  for (long ix = 0; ix < nx; ++ix)
    for (long iy = 0; iy < ny; ++iy)
      P(ix + 1, iy + 1) = std::abs(f.at(ix, iy)) + P(ix, iy + 1) + P(ix + 1, iy) - P(ix, iy);
  return all_cubes_sup(f, [&](const CellBox& b) {
    long sy = g.dim == 1 ? 1 : b.side;
    double s = P(b.lo[0] + b.side, b.lo[1] + sy) - P(b.lo[0], b.lo[1] + sy) -
               P(b.lo[0] + b.side, b.lo[1]) + P(b.lo[0], b.lo[1]);
    return s / static_cast<double>(b.side * sy);
  });
}

GridFunction power_maximal(const GridFunction& w, double r) {
  if (!(r > 0.0)) throw ParameterError("power maximal needs a positive exponent");
  GridFunction wr = w;
  for (double& v : wr.values) v = std::pow(std::abs(v), r);
  GridFunction m = hl_maximal(wr);
  for (double& v : m.values) v = std::pow(v, 1.0 / r);
  return m;
}

}  // namespace sparsedom
