#pragma once

#include <vector>

#include "sparsedom/grid.hpp"
#include "sparsedom/lattice.hpp"
#include "sparsedom/young.hpp"

namespace sparsedom {

// Normalized Luxemburg norm inf{ lam > 0 : (1/|Q|) int_Q phi(|f|/lam) <= 1 }.
// Bisection on the monotone map, relative tolerance 1e-10; power-type phi
// short-circuits to the exact closed form (avg |f|^r)^(1/r).
// Q must be grid-aligned and inside f's box.
double luxemburg_norm(const GridFunction& f, const Cube& q, const YoungFunction& phi);
double luxemburg_norm(const GridFunction& f, const CellBox& b, const YoungFunction& phi);

// Same with f extended by zero outside its box; the denominator is the full
// |Q|.  Used for truncated-lattice cubes that stick out of the box.
double luxemburg_norm_clipped(const GridFunction& f, const CellBox& b, const YoungFunction& phi);

// Norm from raw samples: values are the |f| samples on Q, denom the full
// cell count of Q (missing cells count as zeros).
double luxemburg_norm_values(const std::vector<double>& values, long denom, const YoungFunction& phi);

enum class MaximalMode {
  AllCubes,    // all grid-aligned cubes inside the (padded) box
  OneLattice,  // members of one dyadic lattice, clipped to the box
};

// M_{phi(L)} f per cell: sup of Luxemburg norms over the cube set.
// OneLattice mode needs the lattice argument and uses clipped norms.
GridFunction orlicz_maximal(const GridFunction& f, const YoungFunction& phi,
                            MaximalMode mode, const DyadicLattice* lattice = nullptr);

// Max over the 3^n shifted lattices of the one-lattice maximal operators,
// floored at the single-cell norm |f(x)|/phi^-1(1).  Cheaper surrogate for
// the all-cubes sup at large grids (exact up to the three-lattice covering).
GridFunction orlicz_maximal_shifted(const GridFunction& f, const YoungFunction& phi,
                                    const std::vector<DyadicLattice>& shifts);

// The set {M_{phi(L)} f > lambda} for the all-cubes operator, computed
// without any bisection: a cube witnesses the level set iff
// sum_Q phi(|f|/lambda) > |Q|, which is the norm law read at threshold
// lambda.  One char per cell.
std::vector<char> orlicz_maximal_level_set(const GridFunction& f, const YoungFunction& phi,
                                           double lambda);

// Hardy-Littlewood maximal operator (all cubes), exact averages.
GridFunction hl_maximal(const GridFunction& f);

// M_{L^r} w = (M(w^r))^{1/r}, cell-exact.
GridFunction power_maximal(const GridFunction& w, double r);

}  // namespace sparsedom
