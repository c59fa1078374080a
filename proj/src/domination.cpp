#include "sparsedom/domination.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "sparsedom/weights.hpp"

namespace sparsedom {

namespace {

long pow2l(int e) { return 1L << e; }

bool is_pow2(long v) { return v >= 1 && (v & (v - 1)) == 0; }

// Counts mask cells inside sub-boxes of a root box via a local prefix sum.
class BoxCounter {
 public:
  BoxCounter(const Grid& g, const CellBox& root, const std::vector<char>& mask)
      : root_(root), dim_(g.dim) {
    long s = root.side;
    long sy = dim_ == 1 ? 1 : s;
    pre_.assign(static_cast<size_t>((s + 1) * (sy + 1)), 0);
    for (long ix = 0; ix < s; ++ix)
      for (long iy = 0; iy < sy; ++iy) {
        long v = mask[static_cast<size_t>(g.index(root.lo[0] + ix,
                                                  dim_ == 1 ? 0 : root.lo[1] + iy))]
                     ? 1
                     : 0;
        at(ix + 1, iy + 1) = v + at(ix, iy + 1) + at(ix + 1, iy) - at(ix, iy);
      }
  }

  long count(const CellBox& b) const {
    long x0 = b.lo[0] - root_.lo[0], y0 = dim_ == 1 ? 0 : b.lo[1] - root_.lo[1];
    long sy = dim_ == 1 ? 1 : b.side;
    return at(x0 + b.side, y0 + sy) - at(x0, y0 + sy) - at(x0 + b.side, y0) + at(x0, y0);
  }

 private:
  long& at(long i, long j) {
    return pre_[static_cast<size_t>(i * ((dim_ == 1 ? 1 : root_.side) + 1) + j)];
  }
  long at(long i, long j) const {
    return pre_[static_cast<size_t>(i * ((dim_ == 1 ? 1 : root_.side) + 1) + j)];
  }

  CellBox root_;
  int dim_;
  std::vector<long> pre_;
};

// Maximal strict dyadic descendants P of q whose mask fraction exceeds
// 2^-(dim+1); q itself is never selected.
std::vector<CellBox> cz_cubes(const BoxCounter& counter, const CellBox& q, int dim) {
  std::vector<CellBox> out;
  std::vector<CellBox> stack;
  auto push_halves = [&](const CellBox& p) {
    long half = p.side / 2;
    for (int cx = 0; cx < 2; ++cx)
      for (int cy = 0; cy < (dim == 1 ? 1 : 2); ++cy)
        stack.push_back(CellBox{{p.lo[0] + cx * half, p.lo[1] + cy * half}, half});
  };
  if (q.side == 1) return out;
  push_halves(q);
  long height_inv = pow2l(dim + 1);  // fraction > 1/2^(n+1)
  while (!stack.empty()) {
    CellBox p = stack.back();
    stack.pop_back();
    long c = counter.count(p);
    if (c * height_inv > p.cell_count(dim)) {
      out.push_back(p);
    } else if (p.side > 1 && c > 0) {
      push_halves(p);
    }
  }
  return out;
}

double clipped_abs_average(const GridFunction& f, const CellBox& b) {
  const Grid& g = f.grid;
  long x0 = std::max(b.lo[0], 0L), x1 = std::min(b.lo[0] + b.side, g.cells[0]);
  long y0 = 0, y1 = 1;
  if (g.dim == 2) {
    y0 = std::max(b.lo[1], 0L);
    y1 = std::min(b.lo[1] + b.side, g.cells[1]);
  }
  double s = 0.0;
  for (long ix = x0; ix < x1; ++ix)
    for (long iy = y0; iy < y1; ++iy) s += std::abs(f.at(ix, iy));
  return s / static_cast<double>(b.cell_count(g.dim));
}

struct Builder {
  const CZKernel* kernel;
  const GridFunction* f;
  const GridFunction* b;  // null for the plain T construction
  Grid grid;
  int dim;
  double ct;

  std::vector<CellBox> local_cubes;
  std::vector<NodeDiagnostics> diags;

  std::vector<std::array<long, 2>> cells_of(const CellBox& q) const {
    std::vector<std::array<long, 2>> cells;
    long y1 = dim == 1 ? 1 : q.lo[1] + q.side;
    for (long ix = q.lo[0]; ix < q.lo[0] + q.side; ++ix)
      for (long iy = (dim == 1 ? 0 : q.lo[1]); iy < y1; ++iy)
        cells.push_back({ix, iy});
    return cells;
  }

  // smallest integer multiple of base whose level set on the given values
  // has at most `allowed` cells; the realized multiple is written back
  double threshold(std::vector<double> vals, double base, long allowed, double* multiple) const {
    if (base <= 0.0) {
      *multiple = 0.0;
      return 0.0;
    }
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    double cut = allowed < static_cast<long>(vals.size())
                     ? vals[static_cast<size_t>(allowed)]
                     : 0.0;
    auto count_above = [&](double t) {
      return static_cast<long>(std::upper_bound(vals.begin(), vals.end(), t,
                                                std::greater<double>()) -
                               vals.begin());
    };
    long m = std::max(1L, static_cast<long>(std::ceil(cut / base)));
    while (count_above(static_cast<double>(m) * base) > allowed) ++m;
    while (m > 1 && count_above(static_cast<double>(m - 1) * base) <= allowed) --m;
    *multiple = static_cast<double>(m);
    return static_cast<double>(m) * base;
  }

  void process(const CellBox& q, int depth) {
    if (depth > 80) throw StructuralError("domination recursion exceeded its depth bound");
    local_cubes.push_back(q);
    NodeDiagnostics diag;
    diag.node = q;
    if (q.side == 1) {
      diags.push_back(diag);
      return;
    }
    CellBox r = q.tripled();
    double a1 = clipped_abs_average(*f, r);
    if (a1 == 0.0) {
      diags.push_back(diag);
      return;
    }
    auto cells = cells_of(q);
    long total = q.cell_count(dim);
    long allowed = total / pow2l(dim + 4);

    std::vector<std::vector<double>> comp;
    std::vector<double> bases;
    {
      std::vector<double> c1;
      for (auto& c : cells) c1.push_back(std::abs(f->at(c[0], c[1])));
      comp.push_back(std::move(c1));
      bases.push_back(a1);
    }
    {
      GridFunction mt = local_grand_maximal(*kernel, *f, q);
      std::vector<double> c2;
      for (auto& c : cells) c2.push_back(mt.at(c[0], c[1]));
      comp.push_back(std::move(c2));
      bases.push_back(ct * a1);
    }
    if (b != nullptr) {
      double br = cube_average_clipped(*b, r);
      GridFunction g(grid, 0.0);
      long x0 = std::max(r.lo[0], 0L), x1 = std::min(r.lo[0] + r.side, grid.cells[0]);
      long y0 = 0, y1 = 1;
      if (dim == 2) {
        y0 = std::max(r.lo[1], 0L);
        y1 = std::min(r.lo[1] + r.side, grid.cells[1]);
      }
      for (long ix = x0; ix < x1; ++ix)
        for (long iy = y0; iy < y1; ++iy)
          g.at(ix, iy) = (b->at(ix, iy) - br) * f->at(ix, iy);
      double a3 = clipped_abs_average(g, r);
      std::vector<double> c3;
      for (auto& c : cells) c3.push_back(std::abs(g.at(c[0], c[1])));
      comp.push_back(std::move(c3));
      bases.push_back(a3);
      GridFunction mt = local_grand_maximal(*kernel, g, q);
      std::vector<double> c4;
      for (auto& c : cells) c4.push_back(mt.at(c[0], c[1]));
      comp.push_back(std::move(c4));
      bases.push_back(ct * a3);
    }

    std::vector<char> mask(f->values.size(), 0);
    long e_count = 0;
    for (size_t ci = 0; ci < comp.size(); ++ci) {
      double t = threshold(comp[ci], bases[ci], allowed, &diag.multiples[ci]);
      if (bases[ci] <= 0.0) continue;
      for (size_t i = 0; i < cells.size(); ++i)
        if (comp[ci][i] > t) {
          char& m = mask[static_cast<size_t>(grid.index(cells[i][0], cells[i][1]))];
          if (!m) {
            m = 1;
            ++e_count;
          }
        }
    }
    diag.exceptional_fraction = static_cast<double>(e_count) / static_cast<double>(total);
    if (e_count * pow2l(dim + 2) > total)
      throw StructuralError("exceptional set exceeded its measure budget");

    std::vector<CellBox> children;
    if (e_count > 0) {
      BoxCounter counter(grid, q, mask);
      children = cz_cubes(counter, q, dim);
      long child_total = 0;
      for (const CellBox& p : children) child_total += p.cell_count(dim);
      if (2 * child_total > total)
        throw StructuralError("selected cubes exceeded half the parent measure");
    }
    diag.children = static_cast<int>(children.size());
    diags.push_back(diag);
    for (const CellBox& p : children) process(p, depth + 1);
  }
};

// smallest standard-lattice cube containing the support of f
bool support_cube(const GridFunction& f, CellBox* out) {
  const Grid& g = f.grid;
  long nx = g.cells[0], ny = g.dim == 1 ? 1 : g.cells[1];
  long lox = nx, hix = -1, loy = ny, hiy = -1;
  for (long ix = 0; ix < nx; ++ix)
    for (long iy = 0; iy < ny; ++iy)
      if (f.at(ix, iy) != 0.0) {
        lox = std::min(lox, ix);
        hix = std::max(hix, ix);
        loy = std::min(loy, iy);
        hiy = std::max(hiy, iy);
      }
  if (hix < 0) return false;
  for (long side = 1;; side *= 2) {
    long ax = (lox >= 0 ? lox / side : (lox - side + 1) / side) * side;
    long ay = (loy >= 0 ? loy / side : (loy - side + 1) / side) * side;
    if (ax + side > hix && (g.dim == 1 || ay + side > hiy)) {
      *out = CellBox{{ax, g.dim == 1 ? 0 : ay}, side};
      return true;
    }
    if (side > 4 * std::max(nx, ny)) throw StructuralError("support cube search ran away");
  }
}

DominationResult build_impl(const CZKernel& k, const GridFunction* b, const GridFunction& f) {
  f.validate();
  if (b) {
    b->validate();
    if (!b->grid.same_geometry(f.grid)) throw AlignmentError("b and f live on different grids");
  }
  if (k.dim() != f.grid.dim) throw DomainError("kernel dimension does not match the grid");
  const Grid& grid = f.grid;
  int dim = grid.dim;
  double two9n = 2.0 * std::pow(9.0, dim);

  DominationResult res;
  res.c_t = k.c_t();
  res.lhs = GridFunction(grid, 0.0);
  res.rhs = GridFunction(grid, 0.0);

  CellBox q0;
  if (!support_cube(f, &q0)) {
    // f identically zero: empty certificate
    res.families.assign(static_cast<size_t>(std::lround(std::pow(3, dim))),
                        SparseFamily(grid, {}));
    res.f_avg.resize(res.families.size());
    res.osc_avg.resize(res.families.size());
    res.local_family = SparseFamily(grid, {});
    res.eval_box = CellBox{{0, 0}, 1};
    return res;
  }
  if (!is_pow2(q0.side)) throw StructuralError("support cube side is not a power of two");
  res.eval_box = q0.tripled();

  Builder builder{&k, &f, b, grid, dim, k.c_t(), {}, {}};
  // partition: Q0 plus its 3^n - 1 congruent neighbors cover the window
  for (int ox = -1; ox <= 1; ++ox)
    for (int oy = (dim == 1 ? 0 : -1); oy <= (dim == 1 ? 0 : 1); ++oy) {
      CellBox part{{q0.lo[0] + ox * q0.side, q0.lo[1] + oy * q0.side}, q0.side};
      builder.process(part, 0);
    }
  res.diagnostics = std::move(builder.diags);
  res.local_family = SparseFamily(grid, builder.local_cubes);

  // lift every node to its triple and group by shifted lattice
  int gen_max = 1;
  while (pow2l(gen_max) < 4 * q0.side) ++gen_max;
  auto shifts = three_lattice_shifts(DyadicLattice::standard(grid, gen_max));
  std::vector<std::vector<CellBox>> grouped(shifts.size());
  for (const CellBox& q : builder.local_cubes) {
    CellBox r = q.tripled();
    bool placed = false;
    for (size_t j = 0; j < shifts.size(); ++j)
      if (shifts[j].is_member(r)) {
        grouped[j].push_back(r);
        placed = true;
        break;
      }
    if (!placed) throw StructuralError("triple of a recursion cube fits no shifted lattice");
  }

  GridFunction absf = f;
  for (double& v : absf.values) v = std::abs(v);

  res.carleson_bound = 0.0;
  for (size_t j = 0; j < grouped.size(); ++j) {
    SparseFamily fam(grid, grouped[j]);
    double carleson = carleson_constant(fam);
    if (carleson > two9n + 1e-9)
      throw StructuralError("family " + std::to_string(j) + " exceeds the Carleson bound");
    res.carleson_bound = std::max(res.carleson_bound, carleson);

    std::vector<double> favg, oavg;
    for (const CellBox& r : fam.cubes()) {
      favg.push_back(cube_average_clipped(absf, r));
      if (b) {
        double br = cube_average_clipped(*b, r);
        double s = 0.0;
        long x0 = std::max(r.lo[0], 0L), x1 = std::min(r.lo[0] + r.side, grid.cells[0]);
        long y0 = 0, y1 = 1;
        if (dim == 2) {
          y0 = std::max(r.lo[1], 0L);
          y1 = std::min(r.lo[1] + r.side, grid.cells[1]);
        }
        for (long ix = x0; ix < x1; ++ix)
          for (long iy = y0; iy < y1; ++iy)
            s += std::abs(b->at(ix, iy) - br) * std::abs(f.at(ix, iy));
        oavg.push_back(s / static_cast<double>(r.cell_count(dim)));
      } else {
        oavg.push_back(0.0);
      }
    }
    res.f_avg.push_back(std::move(favg));
    res.osc_avg.push_back(std::move(oavg));

    GridFunction part(grid, 0.0);
    if (b) {
      GridFunction t1 = sparse_apply(fam, absf, SparseVariant::Comm, b);
      GridFunction t2 = sparse_apply(fam, absf, SparseVariant::CommStar, b);
      for (size_t i = 0; i < part.values.size(); ++i)
        part.values[i] = t1.values[i] + t2.values[i];
    } else {
      part = sparse_apply(fam, absf, SparseVariant::Plain);
    }
    for (size_t i = 0; i < res.rhs.values.size(); ++i)
      res.rhs.values[i] += part.values[i];
    res.families.push_back(std::move(fam));
  }

  GridFunction raw = b ? commutator(k, *b, f) : apply_T(k, f);
  for (size_t i = 0; i < raw.values.size(); ++i) res.lhs.values[i] = std::abs(raw.values[i]);

  // certificate window: the tripled support cube, clipped to the grid
  const CellBox& w = res.eval_box;
  long x0 = std::max(w.lo[0], 0L), x1 = std::min(w.lo[0] + w.side, grid.cells[0]);
  long y0 = 0, y1 = 1;
  if (dim == 2) {
    y0 = std::max(w.lo[1], 0L);
    y1 = std::min(w.lo[1] + w.side, grid.cells[1]);
  }
  double best = 0.0;
  for (long ix = x0; ix < x1; ++ix)
    for (long iy = y0; iy < y1; ++iy) {
      double lhs = res.lhs.at(ix, iy), rhs = res.rhs.at(ix, iy);
      if (lhs == 0.0) continue;
      best = rhs == 0.0 ? std::numeric_limits<double>::infinity()
                        : std::max(best, lhs / rhs);
    }
  res.empirical_constant = best;
  return res;
}

}  // namespace

DominationResult build_commutator_domination(const CZKernel& k, const GridFunction& b,
                                             const GridFunction& f) {
  return build_impl(k, &b, f);
}

DominationResult build_T_domination(const CZKernel& k, const GridFunction& f) {
  return build_impl(k, nullptr, f);
}

GridFunction sparse_apply(const SparseFamily& s, const GridFunction& f, SparseVariant variant,
                          const GridFunction* b) {
  f.validate();
  bool needs_b = variant == SparseVariant::Comm || variant == SparseVariant::CommStar;
  if (needs_b) {
    if (b == nullptr) throw ParameterError("commutator sparse variant needs b");
    if (!b->grid.same_geometry(f.grid)) throw AlignmentError("b and f live on different grids");
  }
  const Grid& g = f.grid;
  if (!s.empty()) {
    // cell indices only transfer when the lattice geometry matches; the
    // family does not carry a box, so cells are not compared
    const Grid& sg = s.geometry();
    bool ok = sg.dim == g.dim && std::abs(sg.h - g.h) <= 1e-9 * g.h &&
              std::abs(sg.origin[0] - g.origin[0]) <= 1e-9 * g.h &&
              (g.dim == 1 || std::abs(sg.origin[1] - g.origin[1]) <= 1e-9 * g.h);
    if (!ok) throw AlignmentError("family and f live on different lattices");
  }
  auto llogl = young_llogl();
  GridFunction out(g, 0.0);
  for (const CellBox& q : s.cubes()) {
    long x0 = std::max(q.lo[0], 0L), x1 = std::min(q.lo[0] + q.side, g.cells[0]);
    long y0 = 0, y1 = 1;
    if (g.dim == 2) {
      y0 = std::max(q.lo[1], 0L);
      y1 = std::min(q.lo[1] + q.side, g.cells[1]);
    }
    double bq = needs_b ? cube_average_clipped(*b, q) : 0.0;
    switch (variant) {
      case SparseVariant::Plain: {
        double v = cube_average_clipped(f, q);
        for (long ix = x0; ix < x1; ++ix)
          for (long iy = y0; iy < y1; ++iy) out.at(ix, iy) += v;
        break;
      }
      case SparseVariant::LLogL: {
        double v = luxemburg_norm_clipped(f, q, *llogl);
        for (long ix = x0; ix < x1; ++ix)
          for (long iy = y0; iy < y1; ++iy) out.at(ix, iy) += v;
        break;
      }
      case SparseVariant::Comm: {
        double v = cube_average_clipped(f, q);
        for (long ix = x0; ix < x1; ++ix)
          for (long iy = y0; iy < y1; ++iy)
            out.at(ix, iy) += std::abs(b->at(ix, iy) - bq) * v;
        break;
      }
      case SparseVariant::CommStar: {
        double s2 = 0.0;
        for (long ix = x0; ix < x1; ++ix)
          for (long iy = y0; iy < y1; ++iy)
            s2 += std::abs(b->at(ix, iy) - bq) * f.at(ix, iy);
        double v = s2 / static_cast<double>(q.cell_count(g.dim));
        for (long ix = x0; ix < x1; ++ix)
          for (long iy = y0; iy < y1; ++iy) out.at(ix, iy) += v;
        break;
      }
    }
  }
  return out;
}

OscillationCertificate build_oscillation_family(const GridFunction& b, const SparseFamily& s,
                                                double gamma) {
  b.validate();
  if (!(gamma > 0.0) || gamma > 1.0) throw ParameterError("gamma must lie in (0, 1]");
  const Grid& grid = b.grid;
  int dim = grid.dim;
  long levelset_factor = pow2l(dim + 2);

  std::vector<SparseFamily> per_cube;
  for (const CellBox& q : s.cubes()) {
    if (!is_pow2(q.side)) throw ParameterError("oscillation family cubes need power-of-two sides");
    std::vector<CellBox> nodes;
    std::vector<CellBox> stack{q};
    while (!stack.empty()) {
      CellBox p = stack.back();
      stack.pop_back();
      nodes.push_back(p);
      if (p.side == 1) continue;
      double omega = mean_oscillation(b, p);
      if (omega <= 0.0) continue;
      double bp = cube_average(b, p);
      GridFunction dev(grid, 0.0);
      long y1 = dim == 1 ? 1 : p.lo[1] + p.side;
      for (long ix = p.lo[0]; ix < p.lo[0] + p.side; ++ix)
        for (long iy = (dim == 1 ? 0 : p.lo[1]); iy < y1; ++iy)
          dev.at(ix, iy) = b.at(ix, iy) - bp;
      GridFunction md = dyadic_local_maximal(dev, p);
      std::vector<char> mask(b.values.size(), 0);
      long e_count = 0;
      double cut = static_cast<double>(levelset_factor) * omega;
      for (long ix = p.lo[0]; ix < p.lo[0] + p.side; ++ix)
        for (long iy = (dim == 1 ? 0 : p.lo[1]); iy < y1; ++iy)
          if (md.at(ix, iy) > cut) {
            mask[static_cast<size_t>(grid.index(ix, iy))] = 1;
            ++e_count;
          }
      if (e_count * levelset_factor > p.cell_count(dim))
        throw StructuralError("oscillation level set exceeded the dyadic weak-type budget");
      if (e_count == 0) continue;
      BoxCounter counter(grid, p, mask);
      for (const CellBox& child : cz_cubes(counter, p, dim)) stack.push_back(child);
    }
    per_cube.emplace_back(grid, std::move(nodes));
  }

  OscillationCertificate cert;
  cert.family = augment(s, per_cube, 0.5, gamma);
  cert.eta = cert.family.certified_eta();

  // pointwise (literal-constant) certificate on every root cube
  cert.pointwise_holds = true;
  cert.worst_gap = -std::numeric_limits<double>::infinity();
  for (const CellBox& q : s.cubes()) {
    double bq = cube_average(b, q);
    GridFunction acc(grid, 0.0);
    for (const CellBox& r : cert.family.cubes()) {
      if (!q.contains(r)) continue;
      double om = mean_oscillation(b, r);
      long ry1 = dim == 1 ? 1 : r.lo[1] + r.side;
      for (long ix = r.lo[0]; ix < r.lo[0] + r.side; ++ix)
        for (long iy = (dim == 1 ? 0 : r.lo[1]); iy < ry1; ++iy)
          acc.at(ix, iy) += om;
    }
    double scale = 1.0 + std::abs(bq);
    long y1 = dim == 1 ? 1 : q.lo[1] + q.side;
    for (long ix = q.lo[0]; ix < q.lo[0] + q.side; ++ix)
      for (long iy = (dim == 1 ? 0 : q.lo[1]); iy < y1; ++iy) {
        double lhs = std::abs(b.at(ix, iy) - bq);
        double rhs = static_cast<double>(levelset_factor) * acc.at(ix, iy);
        double gap = lhs - rhs;
        if (gap > cert.worst_gap) {
          cert.worst_gap = gap;
          cert.worst_cube = q;
        }
        if (gap > 1e-9 * scale) cert.pointwise_holds = false;
      }
  }
  if (!cert.pointwise_holds)
    throw StructuralError("pointwise oscillation certificate failed (constant 2^(n+2))");
  return cert;
}

CheckReport key_lemma_check(const YoungFunction& psi, double lambda_psi,
                            const GridFunction& f, const SparseFamily& fk, int k,
                            bool reciprocal_window, const GridFunction& w,
                            const std::vector<char>& e_mask, const YoungFunction& phi) {
  if (!(lambda_psi > 1.0)) throw ParameterError("Lambda must exceed 1");
  if (k < 0) throw ParameterError("layer exponent k must be >= 0");
  f.validate();
  w.validate();
  const Grid& g = f.grid;
  if (e_mask.size() != f.values.size()) throw DataError("level-set mask has the wrong length");

  // growth condition Psi(4t) <= Lambda Psi(t) on a log grid
  for (int i = 0; i < 60; ++i) {
    double t = std::pow(10.0, -3.0 + 9.0 * i / 59.0);
    if (psi.value(4.0 * t) > lambda_psi * psi.value(t) * (1.0 + 1e-9))
      throw ParameterError("Psi(4t) <= Lambda Psi(t) fails at t = " + std::to_string(t));
  }
  // required sparseness 1 - 1/(2 Lambda)
  {
    SparseFamily copy = fk;
    auto v = verify_sparse(copy, 1.0 - 1.0 / (2.0 * lambda_psi));
    if (!v.success) throw ParameterError("family is not (1 - 1/(2 Lambda))-sparse");
  }
  double fourk = std::pow(4.0, k);
  // norm window per cube
  for (const CellBox& q : fk.cubes()) {
    double nrm = luxemburg_norm_clipped(f, q, psi);
    double up = reciprocal_window ? std::pow(4.0, -k) : std::pow(4.0, k);
    double down = up / 4.0;
    if (!(nrm > down * (1.0 - 1e-9) && nrm <= up * (1.0 + 1e-9)))
      throw ParameterError("family cube violates the norm window");
  }

  CheckReport r;
  r.id = "key_lemma";
  r.inputs_digest =
      Digest().mix(f.values).mix(w.values).mix(psi.name()).mix(phi.name()).mix(double(k)).hex();

  LayerDecomposition layers = layer_decomposition(fk, k);
  double hn = g.cell_volume();
  const auto& cubes = fk.cubes();
  for (size_t i = 0; i < cubes.size(); ++i) {
    double integral = 0.0;
    for (const auto& c : layers.witness_cells[i])
      integral += psi.value(fourk * std::abs(f.at(c[0], c[1]))) * hn;
    double q_measure = static_cast<double>(cubes[i].cell_count(g.dim)) * hn;
    double rhs = 2.0 * lambda_psi / q_measure * integral;
    r.add("estimeq_" + std::to_string(i), 1.0, rhs);
  }

  // conclusion
  std::vector<long> overlap(f.values.size(), 0);
  for (const CellBox& q : cubes) {
    long x0 = std::max(q.lo[0], 0L), x1 = std::min(q.lo[0] + q.side, g.cells[0]);
    long y0 = 0, y1 = 1;
    if (g.dim == 2) {
      y0 = std::max(q.lo[1], 0L);
      y1 = std::min(q.lo[1] + q.side, g.cells[1]);
    }
    for (long ix = x0; ix < x1; ++ix)
      for (long iy = y0; iy < y1; ++iy) ++overlap[static_cast<size_t>(g.index(ix, iy))];
  }
  double lhs = 0.0, we = 0.0;
  for (size_t i = 0; i < e_mask.size(); ++i)
    if (e_mask[i]) {
      lhs += static_cast<double>(overlap[i]) * w.values[i] * hn;
      we += w.values[i] * hn;
    }
  double twok = std::pow(2.0, k);
  double arg = std::pow(2.0 * lambda_psi, twok);
  double phibar_inv = complementary_inverse(phi, arg);
  GridFunction mw = orlicz_maximal(w, phi, MaximalMode::AllCubes);
  double integral = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i)
    integral += psi.value(fourk * std::abs(f.values[i])) * mw.values[i] * hn;
  double rhs = twok * we + 4.0 * lambda_psi / phibar_inv * integral;
  r.add("conclusion", lhs, rhs);
  r.extras["phibar_inv"] = phibar_inv;
  r.extras["w_E"] = we;
  r.ceiling = 1.0 + 1e-8;
  r.close();
  return r;
}

TbfSplit tbf_decomposition(const GridFunction& b, const SparseFamily& s, const GridFunction& f,
                           double b_norm) {
  if (!b.grid.same_geometry(f.grid)) throw AlignmentError("b and f live on different grids");
  const Grid& g = f.grid;
  int dim = g.dim;
  TbfSplit out;
  out.t1 = GridFunction(g, 0.0);
  out.t2 = GridFunction(g, 0.0);
  for (const CellBox& q : s.cubes()) {
    double fq = cube_average_clipped(f, q);
    double bq = cube_average_clipped(b, q);
    long x0 = std::max(q.lo[0], 0L), x1 = std::min(q.lo[0] + q.side, g.cells[0]);
    long y0 = 0, y1 = 1;
    if (dim == 2) {
      y0 = std::max(q.lo[1], 0L);
      y1 = std::min(q.lo[1] + q.side, g.cells[1]);
    }
    int kq = -1;
    if (fq > 0.0 && fq <= 1.0) {
      kq = 0;
      while (fq <= std::pow(4.0, -kq - 1)) ++kq;
    }
    out.k_of_cube.push_back(kq);
    if (kq < 0) {
      // above the ladder: whole contribution goes left, empty level set
      out.envelope.push_back(1.0);
      out.fraction.push_back(0.0);
      for (long ix = x0; ix < x1; ++ix)
        for (long iy = y0; iy < y1; ++iy)
          out.t1.at(ix, iy) += std::abs(b.at(ix, iy) - bq) * fq;
      continue;
    }
    double cut = std::pow(1.5, kq) * b_norm;
    long in_set = 0;
    for (long ix = x0; ix < x1; ++ix)
      for (long iy = y0; iy < y1; ++iy) {
        double term = std::abs(b.at(ix, iy) - bq) * fq;
        if (std::abs(b.at(ix, iy) - bq) > cut) {
          out.t2.at(ix, iy) += term;
          ++in_set;
        } else {
          out.t1.at(ix, iy) += term;
        }
      }
    double alpha = std::min(
        1.0, std::exp(1.0 - std::pow(1.5, kq) / (std::pow(2.0, dim) * std::numbers::e)));
    out.envelope.push_back(alpha);
    out.fraction.push_back(static_cast<double>(in_set) /
                           static_cast<double>(q.cell_count(dim)));
  }
  for (size_t i = 0; i < out.fraction.size(); ++i)
    if (out.envelope[i] > 0.0)
      out.worst_fraction_ratio = std::max(out.worst_fraction_ratio,
                                          out.fraction[i] / out.envelope[i]);

  GridFunction full = sparse_apply(s, f, SparseVariant::Comm, &b);
  GridFunction mf = hl_maximal(f);
  out.split_exact = true;
  double scale = 0.0;
  for (double v : full.values) scale = std::max(scale, std::abs(v));
  for (size_t i = 0; i < full.values.size(); ++i) {
    if (mf.values[i] > 0.25) continue;
    double diff = std::abs(full.values[i] - out.t1.values[i] - out.t2.values[i]);
    if (diff > 1e-9 * (scale + 1.0)) out.split_exact = false;
  }
  return out;
}

std::string DominationResult::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "domination-result/1";
  j["c_t"] = format_double(c_t);
  j["carleson_bound"] = format_double(carleson_bound);
  j["empirical_constant"] = format_double(empirical_constant);
  j["eval_box"] = {eval_box.lo[0], eval_box.lo[1], eval_box.side};
  nlohmann::ordered_json fams = nlohmann::ordered_json::array();
  for (size_t i = 0; i < families.size(); ++i) {
    nlohmann::ordered_json fj = nlohmann::ordered_json::parse(families[i].to_json());
    nlohmann::ordered_json favg = nlohmann::ordered_json::array();
    nlohmann::ordered_json oavg = nlohmann::ordered_json::array();
    for (double v : f_avg[i]) favg.push_back(format_double(v));
    for (double v : osc_avg[i]) oavg.push_back(format_double(v));
    fj["f_avg"] = favg;
    fj["osc_avg"] = oavg;
    fams.push_back(fj);
  }
  j["families"] = fams;
  nlohmann::ordered_json diag = nlohmann::ordered_json::array();
  for (const NodeDiagnostics& d : diagnostics) {
    nlohmann::ordered_json dj;
    dj["node"] = {d.node.lo[0], d.node.lo[1], d.node.side};
    dj["exceptional_fraction"] = format_double(d.exceptional_fraction);
    dj["multiples"] = {format_double(d.multiples[0]), format_double(d.multiples[1]),
                       format_double(d.multiples[2]), format_double(d.multiples[3])};
    dj["children"] = d.children;
    diag.push_back(dj);
  }
  j["diagnostics"] = diag;
  return j.dump(2);
}

}  // namespace sparsedom
