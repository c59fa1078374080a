#include "sparsedom/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace sparsedom {

namespace {

double dist(int dim, const std::array<double, 2>& x, const std::array<double, 2>& y) {
  double dx = x[0] - y[0];
  if (dim == 1) return std::abs(dx);
  double dy = x[1] - y[1];
  return std::hypot(dx, dy);
}

class HilbertKernel final : public CZKernel {
 public:
  int dim() const override { return 1; }
  double eval(const std::array<double, 2>& x, const std::array<double, 2>& y) const override {
    return 1.0 / (x[0] - y[0]);
  }
  double size_constant() const override { return 1.0; }
  double omega(double t) const override { return 2.0 * t; }
  double dini() const override { return 2.0; }
  double operator_norm() const override { return std::numbers::pi; }
  std::string name() const override { return "hilbert"; }
};

class Riesz2dXKernel final : public CZKernel {
 public:
  int dim() const override { return 2; }
  double eval(const std::array<double, 2>& x, const std::array<double, 2>& y) const override {
    double r = dist(2, x, y);
    return (x[0] - y[0]) / (r * r * r);
  }
  double size_constant() const override { return 1.0; }
  // |grad K| <= 4/|u|^3 and the far point stays at distance >= |x-y|/2
  double omega(double t) const override { return 32.0 * t; }
  double dini() const override { return 32.0; }
  double operator_norm() const override { return 2.0 * std::numbers::pi; }
  std::string name() const override { return "riesz2d_x"; }
};

class TabulatedKernel final : public CZKernel {
 public:
  TabulatedKernel(const Grid& g, std::string path) : geom_(g), path_(std::move(path)) {
    geom_.validate();
    long n = geom_.cell_count();
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw DataError("cannot open kernel table: " + path_);
    table_.resize(static_cast<size_t>(n * n));
    in.read(reinterpret_cast<char*>(table_.data()),
            static_cast<std::streamsize>(table_.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(table_.size() * sizeof(double)))
      throw DataError("kernel table has wrong size (want n*n doubles, n = cell count)");
    calibrate();
  }

  int dim() const override { return geom_.dim; }
  double eval(const std::array<double, 2>& x, const std::array<double, 2>& y) const override {
    return table_[static_cast<size_t>(cell_of(x) * geom_.cell_count() + cell_of(y))];
  }
  double size_constant() const override { return c_k_; }
  double omega(double t) const override { return c_omega_ * t; }
  double dini() const override { return c_omega_; }
  double operator_norm() const override { return norm_; }
  bool norm_is_estimate() const override { return true; }
  std::string name() const override { return "tabulated:" + path_; }

 private:
  long cell_of(const std::array<double, 2>& x) const {
    long ix = static_cast<long>(std::floor((x[0] - geom_.origin[0]) / geom_.h));
    long iy = geom_.dim == 1
                  ? 0
                  : static_cast<long>(std::floor((x[1] - geom_.origin[1]) / geom_.h));
    if (!geom_.in_range(ix, iy)) throw DomainError("tabulated kernel evaluated off its grid");
    return geom_.index(ix, iy);
  }

  std::array<double, 2> center(long idx) const {
    if (geom_.dim == 1) return {geom_.center(0, idx), 0.0};
    return {geom_.center(0, idx / geom_.cells[1]), geom_.center(1, idx % geom_.cells[1])};
  }

  void calibrate() {
    long n = geom_.cell_count();
    int d = geom_.dim;
    c_k_ = 0.0;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        if (i == j) continue;
        double r = dist(d, center(i), center(j));
        c_k_ = std::max(c_k_, std::abs(table_[static_cast<size_t>(i * n + j)]) *
                                  std::pow(r, d));
      }
    // modulus slope from sampled triples with |x-y| > 2|x-x'|
    c_omega_ = 0.0;
    for (long i = 0; i < n; ++i)
      for (long ip = 0; ip < n; ++ip) {
        double dxx = dist(d, center(i), center(ip));
        if (dxx == 0.0) continue;
        for (long j = 0; j < n; ++j) {
          double r = dist(d, center(i), center(j));
          if (r <= 2.0 * dxx) continue;
          double diff = std::abs(table_[static_cast<size_t>(i * n + j)] -
                                 table_[static_cast<size_t>(ip * n + j)]);
          double t = dxx / r;
          c_omega_ = std::max(c_omega_, diff * std::pow(r, d) / t);
        }
      }
    // largest singular value of (K_ij h^n) by power iteration on A^T A
    double hn = geom_.cell_volume();
    std::vector<double> v(static_cast<size_t>(n)), av(static_cast<size_t>(n)),
        atav(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) v[static_cast<size_t>(i)] = 1.0 + 0.25 * (i % 3);
    double sigma = 0.0;
    for (int it = 0; it < 200; ++it) {
      for (long i = 0; i < n; ++i) {
        double s = 0.0;
        for (long j = 0; j < n; ++j)
          if (i != j) s += table_[static_cast<size_t>(i * n + j)] * v[static_cast<size_t>(j)];
        av[static_cast<size_t>(i)] = s * hn;
      }
      for (long j = 0; j < n; ++j) {
        double s = 0.0;
        for (long i = 0; i < n; ++i)
          if (i != j) s += table_[static_cast<size_t>(i * n + j)] * av[static_cast<size_t>(i)];
        atav[static_cast<size_t>(j)] = s * hn;
      }
      double nv = 0.0, dot = 0.0;
      for (long j = 0; j < n; ++j) {
        dot += v[static_cast<size_t>(j)] * atav[static_cast<size_t>(j)];
        nv += v[static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
      }
      sigma = std::sqrt(std::max(0.0, dot / nv));
      double norm2 = 0.0;
      for (double x : atav) norm2 += x * x;
      norm2 = std::sqrt(norm2);
      if (norm2 == 0.0) break;
      for (long j = 0; j < n; ++j) v[static_cast<size_t>(j)] = atav[static_cast<size_t>(j)] / norm2;
    }
    norm_ = sigma;
  }

  Grid geom_;
  std::string path_;
  std::vector<double> table_;
  double c_k_ = 0.0, c_omega_ = 0.0, norm_ = 0.0;
};

std::array<double, 2> cell_center(const Grid& g, long ix, long iy) {
  return {g.center(0, ix), g.dim == 1 ? 0.0 : g.center(1, iy)};
}

void require_dim(const CZKernel& k, const GridFunction& f) {
  f.validate();
  if (k.dim() != f.grid.dim)
    throw DomainError("kernel dimension does not match the grid");
}

}  // namespace

KernelPtr kernel_hilbert() { return std::make_shared<HilbertKernel>(); }
KernelPtr kernel_riesz2d_x() { return std::make_shared<Riesz2dXKernel>(); }
KernelPtr kernel_tabulated(const Grid& g, const std::string& path) {
  return std::make_shared<TabulatedKernel>(g, path);
}

KernelPtr make_kernel(const std::string& name, const Grid& g) {
  if (name == "hilbert") return kernel_hilbert();
  if (name == "riesz2d_x") return kernel_riesz2d_x();
  if (name.rfind("tabulated:", 0) == 0) return kernel_tabulated(g, name.substr(10));
  throw ParseError("unknown kernel: " + name);
}

GridFunction apply_T_boxed(const CZKernel& k, const GridFunction& f, const CellBox& box) {
  require_dim(k, f);
  const Grid& g = f.grid;
  long sx0 = std::max(box.lo[0], 0L), sx1 = std::min(box.lo[0] + box.side, g.cells[0]);
  long sy0 = 0, sy1 = 1;
  if (g.dim == 2) {
    sy0 = std::max(box.lo[1], 0L);
    sy1 = std::min(box.lo[1] + box.side, g.cells[1]);
  }
  double hn = g.cell_volume();
  GridFunction out(g, 0.0);
  long ny = g.dim == 1 ? 1 : g.cells[1];
  for (long ix = 0; ix < g.cells[0]; ++ix)
    for (long iy = 0; iy < ny; ++iy) {
      auto x = cell_center(g, ix, iy);
      double acc = 0.0;
      for (long jx = sx0; jx < sx1; ++jx)
        for (long jy = sy0; jy < sy1; ++jy) {
          if (jx == ix && jy == iy) continue;
          double fv = f.at(jx, jy);
          if (fv == 0.0) continue;
          acc += k.eval(x, cell_center(g, jx, jy)) * fv;
        }
      out.at(ix, iy) = acc * hn;
    }
  return out;
}

GridFunction apply_T(const CZKernel& k, const GridFunction& f) {
  long side = std::max(f.grid.cells[0], f.grid.dim == 1 ? 1L : f.grid.cells[1]);
  return apply_T_boxed(k, f, CellBox{{0, 0}, side});
}

GridFunction maximal_truncated(const CZKernel& k, const GridFunction& f) {
  require_dim(k, f);
  const Grid& g = f.grid;
  double hn = g.cell_volume();
  GridFunction out(g, 0.0);
  long ny = g.dim == 1 ? 1 : g.cells[1];
  std::vector<std::pair<double, double>> terms;  // (distance, K*f contribution)
  for (long ix = 0; ix < g.cells[0]; ++ix)
    for (long iy = 0; iy < ny; ++iy) {
      auto x = cell_center(g, ix, iy);
      terms.clear();
      for (long jx = 0; jx < g.cells[0]; ++jx)
        for (long jy = 0; jy < ny; ++jy) {
          if (jx == ix && jy == iy) continue;
          double fv = f.at(jx, jy);
          if (fv == 0.0) continue;
          auto y = cell_center(g, jx, jy);
          terms.emplace_back(dist(g.dim, x, y), k.eval(x, y) * fv * hn);
        }
      // accumulate from the farthest ring inward; a truncation radius can
      // only cut between distinct distances, so record at group boundaries
      std::sort(terms.begin(), terms.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
      double acc = 0.0, best = 0.0;
      for (size_t t = 0; t < terms.size(); ++t) {
        acc += terms[t].second;
        if (t + 1 == terms.size() || terms[t + 1].first < terms[t].first)
          best = std::max(best, std::abs(acc));
      }
      out.at(ix, iy) = best;
    }
  return out;
}

GridFunction commutator(const CZKernel& k, const GridFunction& b, const GridFunction& f) {
  if (!b.grid.same_geometry(f.grid)) throw AlignmentError("b and f live on different grids");
  GridFunction tf = apply_T(k, f);
  GridFunction bf = f;
  for (size_t i = 0; i < bf.values.size(); ++i) bf.values[i] *= b.values[i];
  GridFunction tbf = apply_T(k, bf);
  GridFunction out = tf;
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = b.values[i] * tf.values[i] - tbf.values[i];
  return out;
}

namespace {

// max over the in-range cells of q of |a - b| where a, b are given per cell
double sup_abs_diff_on(const GridFunction& a, const GridFunction& b, const CellBox& q) {
  const Grid& g = a.grid;
  long x0 = std::max(q.lo[0], 0L), x1 = std::min(q.lo[0] + q.side, g.cells[0]);
  long y0 = 0, y1 = 1;
  if (g.dim == 2) {
    y0 = std::max(q.lo[1], 0L);
    y1 = std::min(q.lo[1] + q.side, g.cells[1]);
  }
  double m = 0.0;
  for (long ix = x0; ix < x1; ++ix)
    for (long iy = y0; iy < y1; ++iy)
      m = std::max(m, std::abs(a.at(ix, iy) - b.at(ix, iy)));
  return m;
}

}  // namespace

GridFunction grand_maximal(const CZKernel& k, const GridFunction& f,
                           const std::vector<DyadicLattice>& shifts) {
  require_dim(k, f);
  const Grid& g = f.grid;
  GridFunction tf = apply_T(k, f);
  GridFunction out(g, 0.0);
  CellBox window{{0, 0}, std::max(g.cells[0], g.dim == 1 ? 1L : g.cells[1])};
  for (const DyadicLattice& lat : shifts) {
    if (!lat.geometry().same_geometry(g))
      throw AlignmentError("lattice and function live on different grids");
    for (int gen = 0; gen <= lat.gen_max(); ++gen)
      for (const CellBox& q : lat.cubes_at_generation(gen, window)) {
        // T(f chi_{outside 3Q}) = Tf - T(f chi_{3Q}) at every cell of Q
        GridFunction t3q = apply_T_boxed(k, f, q.tripled());
        double m = sup_abs_diff_on(tf, t3q, q);
        long x0 = std::max(q.lo[0], 0L), x1 = std::min(q.lo[0] + q.side, g.cells[0]);
        long y0 = 0, y1 = 1;
        if (g.dim == 2) {
          y0 = std::max(q.lo[1], 0L);
          y1 = std::min(q.lo[1] + q.side, g.cells[1]);
        }
        for (long ix = x0; ix < x1; ++ix)
          for (long iy = y0; iy < y1; ++iy) {
            double& slot = out.at(ix, iy);
            slot = std::max(slot, m);
          }
      }
  }
  return out;
}

namespace {

// Evaluate T(f chi_src)(xi) for the in-range cells xi of eval_box, where src
// is already clipped to the grid.
void t_boxed_on(const CZKernel& k, const GridFunction& f, const CellBox& src,
                const CellBox& eval_box, GridFunction& out) {
  const Grid& g = f.grid;
  long sx0 = std::max(src.lo[0], 0L), sx1 = std::min(src.lo[0] + src.side, g.cells[0]);
  long sy0 = 0, sy1 = 1;
  long ex0 = std::max(eval_box.lo[0], 0L), ex1 = std::min(eval_box.lo[0] + eval_box.side, g.cells[0]);
  long ey0 = 0, ey1 = 1;
  if (g.dim == 2) {
    sy0 = std::max(src.lo[1], 0L);
    sy1 = std::min(src.lo[1] + src.side, g.cells[1]);
    ey0 = std::max(eval_box.lo[1], 0L);
    ey1 = std::min(eval_box.lo[1] + eval_box.side, g.cells[1]);
  }
  double hn = g.cell_volume();
  for (long ix = ex0; ix < ex1; ++ix)
    for (long iy = ey0; iy < ey1; ++iy) {
      auto x = cell_center(g, ix, iy);
      double acc = 0.0;
      for (long jx = sx0; jx < sx1; ++jx)
        for (long jy = sy0; jy < sy1; ++jy) {
          if (jx == ix && jy == iy) continue;
          double fv = f.at(jx, jy);
          if (fv == 0.0) continue;
          acc += k.eval(x, cell_center(g, jx, jy)) * fv;
        }
      out.at(ix, iy) = acc * hn;
    }
}

}  // namespace

GridFunction local_grand_maximal(const CZKernel& k, const GridFunction& f, const CellBox& q0) {
  require_dim(k, f);
  if (q0.side < 1 || (q0.side & (q0.side - 1)) != 0)
    throw ParameterError("local grand maximal needs a power-of-two side");
  const Grid& g = f.grid;
  CellBox t0 = q0.tripled();
  GridFunction t3q0(g, 0.0);
  t_boxed_on(k, f, t0, q0, t3q0);
  GridFunction out(g, 0.0);
  GridFunction scratch(g, 0.0);
  // walk the proper dyadic descendants of q0; the complement is taken inside
  // 3q0, so the per-cube field is t3q0 - T(f chi_{3Q /\ 3Q0})
  std::vector<CellBox> level{q0};
  while (level.front().side > 1) {
    std::vector<CellBox> next;
    for (const CellBox& q : level) {
      long half = q.side / 2;
      for (int cx = 0; cx < 2; ++cx)
        for (int cy = 0; cy < (g.dim == 1 ? 1 : 2); ++cy)
          next.push_back(CellBox{{q.lo[0] + cx * half, q.lo[1] + cy * half}, half});
    }
    for (const CellBox& q : next) {
      // 3Q sits inside 3Q0 for every descendant, so no extra clipping
      t_boxed_on(k, f, q.tripled(), q, scratch);
      double m = sup_abs_diff_on(t3q0, scratch, q);
      for (long ix = std::max(q.lo[0], 0L); ix < std::min(q.lo[0] + q.side, g.cells[0]); ++ix) {
        long y0 = 0, y1 = 1;
        if (g.dim == 2) {
          y0 = std::max(q.lo[1], 0L);
          y1 = std::min(q.lo[1] + q.side, g.cells[1]);
        }
        for (long iy = y0; iy < y1; ++iy) {
          double& slot = out.at(ix, iy);
          slot = std::max(slot, m);
        }
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace sparsedom
