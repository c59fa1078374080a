#pragma once

#include <vector>

#include "sparsedom/grid.hpp"

namespace sparsedom {

// Weights are plain GridFunctions kept strictly positive; this guards the
// convention at API boundaries.
void require_weight(const GridFunction& w);

// w^(-1/(p-1)) cell-wise, the dual weight of the A_p theory.
GridFunction sigma_weight(const GridFunction& w, double p);

// every grid-aligned cube inside the box (the enumerated sup set)
std::vector<CellBox> all_cellboxes(const Grid& g);

// sup over the cube set of avg_Q(w) * avg_Q(sigma_w)^(p-1); p in (1, inf).
// attained, when non-null, receives the maximizing cube.
double ap_constant(const GridFunction& w, double p, const std::vector<CellBox>& cubes,
                   CellBox* attained = nullptr);

// sup over cells of Mw/w, M the all-cubes maximal operator
double a1_constant(const GridFunction& w);

// Fujii-Wilson sup over the cube set of (1/w(Q)) int_Q M(w chi_Q)
double ainf_constant(const GridFunction& w, const std::vector<CellBox>& cubes,
                     CellBox* attained = nullptr);

// (1/|Q|) int_Q |b - b_Q|
double mean_oscillation(const GridFunction& b, const CellBox& q);

double bmo_norm(const GridFunction& b, const std::vector<CellBox>& cubes,
                CellBox* attained = nullptr);

// sup over the cube set of (1/nu(Q)) int_Q |b - b_Q|
double weighted_bmo_norm(const GridFunction& b, const GridFunction& nu,
                         const std::vector<CellBox>& cubes, CellBox* attained = nullptr);

// w{|f| > lambda} = sum of w h^n over cells with |f| > lambda
double distribution(const GridFunction& w, const GridFunction& f, double lambda);
// Lebesgue measure of {|f| > lambda}
double level_set_measure(const GridFunction& f, double lambda);

// lambda -> |{x in Q : |b - b_Q| > lambda}| / |Q| sampled on a lambda grid,
// with the exponential-decay envelope e * exp(-lambda / (2^n e * bmo)).
struct OscillationProfile {
  std::vector<double> lambdas;
  std::vector<double> fractions;
  double envelope_rate = 0.0;   // 1 / (2^n e bmo)
  double fitted_rate = 0.0;     // least-squares slope of -log(fraction)
  bool under_envelope = false;
};
OscillationProfile john_nirenberg_profile(const GridFunction& b, const CellBox& q,
                                          double bmo);

// M^d_Q g: sup of averages of |g| over the dyadic descendants of Q (Q
// included) containing x; zero outside Q.  side of Q must be a power of two.
GridFunction dyadic_local_maximal(const GridFunction& g, const CellBox& q);

}  // namespace sparsedom
