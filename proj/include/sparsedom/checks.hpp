#pragma once

#include "sparsedom/domination.hpp"
#include "sparsedom/integrals.hpp"
#include "sparsedom/kernel.hpp"
#include "sparsedom/report.hpp"
#include "sparsedom/weights.hpp"

namespace sparsedom {

// log-spaced grid over [0.01 * max|ref|, max|ref|]
std::vector<double> default_lambda_grid(const GridFunction& ref, int count = 12);

// weighted weak (1,1) of the maximal operator:
// lambda * w{Mf > lambda} <= C * int |f| Mw
CheckReport check_fs(const GridFunction& w, const GridFunction& f,
                     const std::vector<double>& lambdas);

// Orlicz endpoint with its literal constants:
// w{M_{phi(L)} f > lambda} <= 3^n int phi(9^n |f| / lambda) Mw,
// plus the empirical-constant variant with both factors stripped.
CheckReport check_orlicz_fs(const YoungPtr& phi, const GridFunction& w, const GridFunction& f,
                            const std::vector<double>& lambdas);

// weak-type bound for the commutator:
// w_{[b,T]f}(lambda) <= C * C_T C_phi int Phi(||b|| |f| / lambda) M_{(Phi o phi)(L)} w
CheckReport check_weakcomm(const CZKernel& k, const GridFunction& b, const GridFunction& f,
                           const GridFunction& w, const YoungPtr& phi,
                           const std::vector<double>& lambdas);

// A_1 endpoint: RHS carries [w]_{A1} Phi([w]_{Ainf}), plus the two proof
// steps (log t <= t^a / a maximal comparison and the calibrated
// M_{L^r} w <= 2 M w step) recorded in extras.
CheckReport check_cor15(const CZKernel& k, const GridFunction& b, const GridFunction& f,
                        const GridFunction& w, const std::vector<double>& lambdas);

// two-weight commutator bound with nu = (mu/lambda)^(1/p)
CheckReport check_bloom(const CZKernel& k, double p, const GridFunction& mu,
                        const GridFunction& lam, const GridFunction& b,
                        const std::vector<GridFunction>& fsuite);

// sparse-operator L^p(w) bound against [w]_{A_p}^max(1, 1/(p-1))
CheckReport check_asp(const SparseFamily& s, const GridFunction& w, double p,
                      const std::vector<GridFunction>& fsuite);

}  // namespace sparsedom
