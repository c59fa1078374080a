#pragma once

#include <functional>

#include "sparsedom/young.hpp"

namespace sparsedom {

// Result of an improper integral over [1, infinity).  When the tail monitor
// decides the integral diverges, converged is false and value holds the
// partial sum only (callers must branch on the flag, not the number).
struct TailIntegral {
  bool converged = false;
  double value = 0.0;
  double tail = 0.0;            // estimated contribution beyond the last segment
  int segments = 0;
  double decay_exponent = 0.0;  // fitted p with segment mass ~ k^-p
};

// Adaptive Simpson on [a, b], relative tolerance on the total.
double adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                        double rel_tol = 1e-12);

// int_1^inf g(t) dt for positive g decaying at worst like a power of log t
// over t.  Substitutes t = e^s and integrates octave segments t in
// [2^k, 2^(k+1)]; the segment masses then behave like k^-p, and the tail is
// completed from a local power-law fit.  Stops early when the estimated tail
// drops below 1e-10 of the running value; declares divergence when the fitted
// p stays at 1 (within 0.05) once the segment budget is spent.
TailIntegral integrate_to_infinity(const std::function<double(double)>& g);

// C: int_1^inf phi^-1(t) / (t^2 log(e+t)) dt
TailIntegral c_phi(const YoungFunction& phi);

// K: same with an extra log log(e^2+t) factor
TailIntegral k_phi(const YoungFunction& phi);

// int_1^inf phi^-1(Phi^-1(t)) / t^2 dt with Phi(t) = t log(e+t)
TailIntegral composed_tail_integral(const YoungFunction& phi);

}  // namespace sparsedom
