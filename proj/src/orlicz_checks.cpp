#include "sparsedom/orlicz_checks.hpp"

#include <cmath>

namespace sparsedom {

namespace {

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g) {
  if (!f.grid.same_geometry(g.grid)) throw AlignmentError("product of functions on different grids");
  GridFunction out = f;
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] *= g.values[i];
  return out;
}

}  // namespace

CheckReport generalized_holder(const GridFunction& f, const GridFunction& g, const CellBox& q,
                               const YoungFunction& A, const YoungFunction& B,
                               const YoungFunction& C) {
  // hypothesis: A^-1 B^-1 <= C^-1 on t in [1e-3, 1e6], 60 log-spaced points
  for (int i = 0; i < 60; ++i) {
    double t = std::pow(10.0, -3.0 + 9.0 * i / 59.0);
    double lhs = A.inverse(t) * B.inverse(t);
    double rhs = C.inverse(t);
    if (lhs > rhs * (1.0 + 1e-9))
      throw ParameterError("Hoelder hypothesis A^-1 B^-1 <= C^-1 fails at t = " +
                           std::to_string(t));
  }
  CheckReport r;
  r.id = "generalized_holder";
  r.inputs_digest = Digest()
                        .mix(f.values)
                        .mix(g.values)
                        .mix(A.name())
                        .mix(B.name())
                        .mix(C.name())
                        .hex();
  double lhs = luxemburg_norm(pointwise_product(f, g), q, C);
  double rhs = 2.0 * luxemburg_norm(f, q, A) * luxemburg_norm(g, q, B);
  r.add(A.name() + "*" + B.name() + "->" + C.name(), lhs, rhs);
  r.ceiling = 1.0 + 1e-8;
  r.close();
  return r;
}

CheckReport holder_pair(const GridFunction& f, const GridFunction& g, const CellBox& q,
                        const YoungFunction& phi) {
  CheckReport r;
  r.id = "holder_pair";
  r.inputs_digest = Digest().mix(f.values).mix(g.values).mix(phi.name()).hex();
  GridFunction absfg = pointwise_product(f, g);
  for (double& v : absfg.values) v = std::abs(v);
  double lhs = cube_average(absfg, q);
  auto phibar = complementary(YoungPtr(&phi, [](const YoungFunction*) {}));
  double rhs = 2.0 * luxemburg_norm(f, q, phi) * luxemburg_norm(g, q, *phibar);
  r.add(phi.name(), lhs, rhs);
  r.ceiling = 1.0 + 1e-8;
  r.close();
  return r;
}

CheckReport submultiplicativity_check() {
  auto llogl = young_llogl();
  CheckReport r;
  r.id = "submultiplicativity";
  r.inputs_digest = Digest().mix(llogl->name()).hex();
  double worst = 0.0, worst_a = 0.0, worst_b = 0.0;
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 200; ++j) {
      double a = std::pow(10.0, -3.0 + 6.0 * i / 199.0);
      double b = std::pow(10.0, -3.0 + 6.0 * j / 199.0);
      double lhs = llogl->value(a * b);
      double rhs = 2.0 * llogl->value(a) * llogl->value(b);
      if (lhs / rhs > worst) {
        worst = lhs / rhs;
        worst_a = a;
        worst_b = b;
      }
    }
  r.add("grid_sup", worst, 1.0);
  r.extras["worst_a"] = worst_a;
  r.extras["worst_b"] = worst_b;
  r.ceiling = 1.0 + 1e-12;
  r.close();
  return r;
}

CheckReport composed_constant_check(const YoungFunction& phi) {
  CheckReport r;
  r.id = "composed_constant";
  r.inputs_digest = Digest().mix(phi.name()).hex();
  TailIntegral base = c_phi(phi);
  TailIntegral comp = composed_tail_integral(phi);
  if (!base.converged) {
    r.fail("C integral diverges for " + phi.name());
    return r;
  }
  if (!comp.converged) {
    r.fail("composed integral diverges for " + phi.name());
    return r;
  }
  r.add("composed_vs_base", comp.value, base.value);
  r.extras["c_constant"] = base.value;
  r.extras["composed_integral"] = comp.value;
  r.close();
  return r;
}

}  // namespace sparsedom
