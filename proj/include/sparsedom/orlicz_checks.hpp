#pragma once

#include "sparsedom/integrals.hpp"
#include "sparsedom/luxemburg.hpp"
#include "sparsedom/report.hpp"

namespace sparsedom {

// Three-function Hoelder estimate ||fg||_{C,Q} <= 2 ||f||_{A,Q} ||g||_{B,Q},
// valid whenever A^-1(t) B^-1(t) <= C^-1(t).  The hypothesis is verified on a
// log-spaced t grid first; a violation raises ParameterError and the norm
// check is not run.
CheckReport generalized_holder(const GridFunction& f, const GridFunction& g, const CellBox& q,
                               const YoungFunction& A, const YoungFunction& B,
                               const YoungFunction& C);

// Two-function form: avg_Q |fg| <= 2 ||f||_{phi,Q} ||g||_{phibar,Q}.
CheckReport holder_pair(const GridFunction& f, const GridFunction& g, const CellBox& q,
                        const YoungFunction& phi);

// Phi(ab) <= 2 Phi(a) Phi(b) for Phi(t) = t log(e+t), exhaustive log grid
// over (0, 1e3]^2.
CheckReport submultiplicativity_check();

// int_1^inf phi^-1(Phi^-1(t))/t^2 dt certified finite and <= c * C_phi with
// the empirical c recorded.
CheckReport composed_constant_check(const YoungFunction& phi);

}  // namespace sparsedom
