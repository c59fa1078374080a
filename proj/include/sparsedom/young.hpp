#pragma once

#include <functional>
#include <memory>
#include <string>

#include "sparsedom/errors.hpp"

namespace sparsedom {

// A continuous, convex, strictly increasing function with phi(0)=0 and
// phi(t)/t -> infinity (convexity is only spot-checked where a caller
// needs it; several callers deliberately admit non-convex instances).
class YoungFunction {
 public:
  virtual ~YoungFunction() = default;

  virtual double value(double t) const = 0;
  // Numeric by default (monotone bracket + bisection); builtins override
  // where a closed form exists.
  virtual double inverse(double s) const;
  virtual std::string name() const = 0;

  // r when phi(t) = t^r (1 for the identity), 0 otherwise.  Lets norm code
  // use the exact closed form (avg |f|^r)^(1/r) instead of bisection.
  virtual double power_form() const { return 0.0; }
};

using YoungPtr = std::shared_ptr<const YoungFunction>;

// ---- builtins ----------------------------------------------------------
YoungPtr young_llogl();                  // Phi(t) = t log(e + t)
YoungPtr young_llogl_power(double eps);  // t log^eps(e + t)
YoungPtr young_loglog(double alpha);     // t (log log(e^e + t))^alpha
YoungPtr young_exp_minus_one();          // e^t - 1
YoungPtr young_power(double r);          // t^r, r > 1 (r = 1 allowed: identity)
YoungPtr young_identity();               // t
YoungPtr young_compose_llogl(YoungPtr inner);  // Phi(phi(t))

// Generic wrappers for tests and derived constructions.
YoungPtr young_from_callable(std::string name, std::function<double(double)> value);
// Defined through its inverse: value(t) solves inv(s) = t.
YoungPtr young_from_inverse(std::string name, std::function<double(double)> inv);

// Config-addressable registry: "phi_llogl", "phi_eps(0.5)", "phi_loglog(2)",
// "exp_minus_one", "power(2)", "identity", "compose_llogl(phi_eps(0.5))".
YoungPtr make_young(const std::string& spec);

// Complementary function bar-phi(t) = sup_{x>=0} (x t - phi(x)), computed by
// ternary search on the concave inner map with bracket doubling.
YoungPtr complementary(YoungPtr phi);

// Solve bar-phi(x) = s for the complementary of phi without materialising it.
double complementary_inverse(const YoungFunction& phi, double s);

// Monotone scalar solve: smallest x with fn(x) >= target, fn increasing.
// Relative tolerance on x.
double solve_increasing(const std::function<double(double)>& fn, double target,
                        double hint = 1.0, double rel_tol = 1e-12);

}  // namespace sparsedom
