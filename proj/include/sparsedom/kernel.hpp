#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sparsedom/grid.hpp"
#include "sparsedom/lattice.hpp"

namespace sparsedom {

// Singular kernel with its size constant, smoothness modulus, and L2 norm
// datum; c_t() is the combined constant every domination estimate carries.
class CZKernel {
 public:
  virtual ~CZKernel() = default;

  virtual int dim() const = 0;
  virtual double eval(const std::array<double, 2>& x, const std::array<double, 2>& y) const = 0;
  virtual double size_constant() const = 0;  // C_K in |K| <= C_K / |x-y|^n
  virtual double omega(double t) const = 0;  // smoothness modulus
  virtual double dini() const = 0;           // int_0^1 omega(t)/t dt
  virtual double operator_norm() const = 0;  // L2 -> L2
  virtual bool norm_is_estimate() const { return false; }
  virtual std::string name() const = 0;

  double c_t() const { return operator_norm() + size_constant() + dini(); }
};

using KernelPtr = std::shared_ptr<const CZKernel>;

KernelPtr kernel_hilbert();   // K(x,y) = 1/(x-y), unnormalized; ||T|| = pi
KernelPtr kernel_riesz2d_x(); // K(x,y) = (x1-y1)/|x-y|^3; ||T|| = 2 pi

// K sampled on cell-center pairs of g: row-major n-by-n doubles where
// n = g.cell_count(), entry (i,j) = K(center_i, center_j), diagonal ignored.
// C_K and the modulus are calibrated from the samples; the operator norm is
// estimated by power iteration and flagged as an estimate.
KernelPtr kernel_tabulated(const Grid& g, const std::string& path);

// registry: "hilbert", "riesz2d_x", "tabulated:<path>"
KernelPtr make_kernel(const std::string& name, const Grid& g);

// Tf(x_i) = sum_{j != i} K(x_i, x_j) f(x_j) h^n.  Skipping the diagonal cell
// is the principal-value surrogate (odd kernels integrate to zero over the
// symmetric cell).
GridFunction apply_T(const CZKernel& k, const GridFunction& f);

// T applied to f restricted to the cells of the box (zero elsewhere)
GridFunction apply_T_boxed(const CZKernel& k, const GridFunction& f, const CellBox& box);

// T* f(x) = sup over truncation radii of |sum_{|y-x| > eps} K f h^n|
GridFunction maximal_truncated(const CZKernel& k, const GridFunction& f);

// [b,T]f = b Tf - T(bf)
GridFunction commutator(const CZKernel& k, const GridFunction& b, const GridFunction& f);

// M_T f(x): max over shifted-lattice cubes Q containing x of
// max_{xi in Q} |T(f chi_{outside 3Q})(xi)|.  The restriction of the sup to
// lattice cubes is the documented surrogate for all cubes.
GridFunction grand_maximal(const CZKernel& k, const GridFunction& f,
                           const std::vector<DyadicLattice>& shifts);

// Local version on Q0: Q ranges over the dyadic descendants of Q0 containing
// x and the complement is taken inside 3Q0, so the value only sees
// f chi_{3Q0 \ 3Q}.  Returned function vanishes outside Q0.  side of Q0 must
// be a power of two.
GridFunction local_grand_maximal(const CZKernel& k, const GridFunction& f, const CellBox& q0);

}  // namespace sparsedom
