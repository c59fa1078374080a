#include "sparsedom/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sparsedom/luxemburg.hpp"

namespace sparsedom {

void require_weight(const GridFunction& w) {
  w.validate();
  for (double v : w.values)
    if (!(v > 0.0)) throw DataError("weight values must be strictly positive");
}

GridFunction sigma_weight(const GridFunction& w, double p) {
  if (!(p > 1.0)) throw ParameterError("sigma weight needs p > 1");
  require_weight(w);
  GridFunction s = w;
  for (double& v : s.values) v = std::pow(v, -1.0 / (p - 1.0));
  return s;
}

std::vector<CellBox> all_cellboxes(const Grid& g) {
  std::vector<CellBox> out;
  long nx = g.cells[0], ny = g.dim == 1 ? 1 : g.cells[1];
  long max_side = g.dim == 1 ? nx : std::min(nx, ny);
  for (long side = 1; side <= max_side; ++side)
    for (long x0 = 0; x0 + side <= nx; ++x0)
      for (long y0 = 0; y0 + (g.dim == 1 ? 1 : side) <= ny; ++y0)
        out.push_back(CellBox{{x0, y0}, side});
  return out;
}

double ap_constant(const GridFunction& w, double p, const std::vector<CellBox>& cubes,
                   CellBox* attained) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("A_p constant needs p in (1, inf)");
  require_weight(w);
  GridFunction sigma = sigma_weight(w, p);
  double best = 0.0;
  for (const CellBox& q : cubes) {
    double c = cube_average(w, q) * std::pow(cube_average(sigma, q), p - 1.0);
    if (c > best) {
      best = c;
      if (attained) *attained = q;
    }
  }
  return best;
}

double a1_constant(const GridFunction& w) {
  require_weight(w);
  GridFunction m = hl_maximal(w);
  double best = 0.0;
  for (size_t i = 0; i < w.values.size(); ++i)
    best = std::max(best, m.values[i] / w.values[i]);
  return best;
}

double ainf_constant(const GridFunction& w, const std::vector<CellBox>& cubes,
                     CellBox* attained) {
  require_weight(w);
  const Grid& g = w.grid;
  double best = 0.0;
  for (const CellBox& q : cubes) {
    GridFunction wq(g, 0.0);
    long y1 = g.dim == 1 ? 1 : q.lo[1] + q.side;
    for (long ix = q.lo[0]; ix < q.lo[0] + q.side; ++ix)
      for (long iy = (g.dim == 1 ? 0 : q.lo[1]); iy < y1; ++iy) {
        if (!g.in_range(ix, iy)) throw DomainError("cube extends outside the grid box");
        wq.at(ix, iy) = w.at(ix, iy);
      }
    GridFunction m = hl_maximal(wq);
    double num = 0.0, den = 0.0;
    for (long ix = q.lo[0]; ix < q.lo[0] + q.side; ++ix)
      for (long iy = (g.dim == 1 ? 0 : q.lo[1]); iy < y1; ++iy) {
        num += m.at(ix, iy);
        den += w.at(ix, iy);
      }
    double c = num / den;
    if (c > best) {
      best = c;
      if (attained) *attained = q;
    }
  }
  return best;
}

double mean_oscillation(const GridFunction& b, const CellBox& q) {
  double avg = cube_average(b, q);
  double osc = 0.0;
  long y1 = b.grid.dim == 1 ? 1 : q.lo[1] + q.side;
  for (long ix = q.lo[0]; ix < q.lo[0] + q.side; ++ix)
    for (long iy = (b.grid.dim == 1 ? 0 : q.lo[1]); iy < y1; ++iy)
      osc += std::abs(b.at(ix, iy) - avg);
  return osc / static_cast<double>(q.cell_count(b.grid.dim));
}

double bmo_norm(const GridFunction& b, const std::vector<CellBox>& cubes,
                CellBox* attained) {
  double best = 0.0;
  for (const CellBox& q : cubes) {
    double c = mean_oscillation(b, q);
    if (c > best) {
      best = c;
      if (attained) *attained = q;
    }
  }
  return best;
}

double weighted_bmo_norm(const GridFunction& b, const GridFunction& nu,
                         const std::vector<CellBox>& cubes, CellBox* attained) {
  require_weight(nu);
  if (!b.grid.same_geometry(nu.grid)) throw AlignmentError("b and nu live on different grids");
  double hn = b.grid.cell_volume();
  double best = 0.0;
  for (const CellBox& q : cubes) {
    double avg = cube_average(b, q);
    double osc = 0.0, nuq = 0.0;
    long y1 = b.grid.dim == 1 ? 1 : q.lo[1] + q.side;
    for (long ix = q.lo[0]; ix < q.lo[0] + q.side; ++ix)
      for (long iy = (b.grid.dim == 1 ? 0 : q.lo[1]); iy < y1; ++iy) {
        osc += std::abs(b.at(ix, iy) - avg) * hn;
        nuq += nu.at(ix, iy) * hn;
      }
    double c = osc / nuq;
    if (c > best) {
      best = c;
      if (attained) *attained = q;
    }
  }
  return best;
}

double distribution(const GridFunction& w, const GridFunction& f, double lambda) {
  if (!w.grid.same_geometry(f.grid)) throw AlignmentError("w and f live on different grids");
  double hn = f.grid.cell_volume();
  double total = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i)
    if (std::abs(f.values[i]) > lambda) total += w.values[i] * hn;
  return total;
}

double level_set_measure(const GridFunction& f, double lambda) {
  double hn = f.grid.cell_volume();
  double total = 0.0;
  for (double v : f.values)
    if (std::abs(v) > lambda) total += hn;
  return total;
}

OscillationProfile john_nirenberg_profile(const GridFunction& b, const CellBox& q,
                                          double bmo) {
  OscillationProfile prof;
  double avg = cube_average(b, q);
  std::vector<double> dev;
  long y1 = b.grid.dim == 1 ? 1 : q.lo[1] + q.side;
  for (long ix = q.lo[0]; ix < q.lo[0] + q.side; ++ix)
    for (long iy = (b.grid.dim == 1 ? 0 : q.lo[1]); iy < y1; ++iy)
      dev.push_back(std::abs(b.at(ix, iy) - avg));
  double top = *std::max_element(dev.begin(), dev.end());
  double cells = static_cast<double>(dev.size());
  prof.envelope_rate =
      bmo > 0.0 ? 1.0 / (std::pow(2.0, b.grid.dim) * std::numbers::e * bmo) : 0.0;
  prof.under_envelope = true;
  double sxx = 0.0, sxy = 0.0;
  int fitted = 0;
  for (int i = 1; i <= 40; ++i) {
    double lam = top * static_cast<double>(i) / 40.0;
    double frac =
        static_cast<double>(std::count_if(dev.begin(), dev.end(),
                                          [&](double d) { return d > lam; })) /
        cells;
    prof.lambdas.push_back(lam);
    prof.fractions.push_back(frac);
    if (bmo > 0.0 && frac > std::numbers::e * std::exp(-prof.envelope_rate * lam))
      prof.under_envelope = false;
    if (frac > 0.0) {
      // through-origin fit of -log(frac/e) = rate * lambda
      double y = -(std::log(frac) - 1.0);
      sxx += lam * lam;
      sxy += lam * y;
      ++fitted;
    }
  }
  prof.fitted_rate = fitted > 0 && sxx > 0.0 ? sxy / sxx : 0.0;
  return prof;
}

GridFunction dyadic_local_maximal(const GridFunction& g, const CellBox& q) {
  if (q.side < 1 || (q.side & (q.side - 1)) != 0)
    throw ParameterError("dyadic local maximal needs a power-of-two side");
  GridFunction out(g.grid, 0.0);
  GridFunction absg = g;
  for (double& v : absg.values) v = std::abs(v);
  struct Frame {
    CellBox box;
    double running;
  };
  std::vector<Frame> stack{{q, 0.0}};
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    double m = std::max(fr.running, cube_average(absg, fr.box));
    if (fr.box.side == 1) {
      out.at(fr.box.lo[0], fr.box.lo[1]) = m;
      continue;
    }
    long half = fr.box.side / 2;
    for (int cx = 0; cx < 2; ++cx)
      for (int cy = 0; cy < (g.grid.dim == 1 ? 1 : 2); ++cy)
        stack.push_back(
            {CellBox{{fr.box.lo[0] + cx * half, fr.box.lo[1] + cy * half}, half}, m});
  }
  return out;
}

}  // namespace sparsedom
