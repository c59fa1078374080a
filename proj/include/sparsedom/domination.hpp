#pragma once

#include "sparsedom/kernel.hpp"
#include "sparsedom/luxemburg.hpp"
#include "sparsedom/report.hpp"
#include "sparsedom/sparse_family.hpp"

namespace sparsedom {

// One recursion node of the domination construction.
struct NodeDiagnostics {
  CellBox node;
  double exceptional_fraction = 0.0;   // |E| / |node|
  std::array<double, 4> multiples{0.0, 0.0, 0.0, 0.0};  // realized threshold multiples
  int children = 0;
};

struct DominationResult {
  // one family per shifted lattice, ordered by shift index
  std::vector<SparseFamily> families;
  // per family, per cube: avg_R |f| and avg_R |b - b_R| |f|
  std::vector<std::vector<double>> f_avg;
  std::vector<std::vector<double>> osc_avg;
  // the half-sparse local family (all recursion nodes, base lattice cubes)
  SparseFamily local_family;
  std::vector<NodeDiagnostics> diagnostics;
  GridFunction lhs, rhs;
  CellBox eval_box;                    // certificate window (3x the data box)
  double empirical_constant = 0.0;     // sup over the window of lhs / rhs
  double carleson_bound = 0.0;         // max over families, must be <= 2 * 9^n
  double c_t = 0.0;

  std::string to_json() const;
};

// Pointwise sparse domination of the commutator: builds the recursion
// family, lifts every cube to its triple in the shifted lattices, groups by
// shift, and evaluates both sides of the estimate on the 3Q0 window.
// f must be supported in the central data box of the (9x padded) grid; the
// box must be a power-of-two number of cells.
DominationResult build_commutator_domination(const CZKernel& k, const GridFunction& b,
                                             const GridFunction& f);

// Same construction with b absent: two exceptional components, averaging
// operators on the right-hand side.
DominationResult build_T_domination(const CZKernel& k, const GridFunction& f);

enum class SparseVariant {
  Plain,     // sum over Q of avg_Q(f) chi_Q
  LLogL,     // sum over Q of ||f||_{LlogL,Q} chi_Q
  Comm,      // sum over Q of |b(x) - b_Q| avg_Q(f) chi_Q
  CommStar,  // sum over Q of avg_Q(|b - b_Q| f) chi_Q
};

// All four sparse operators share this traversal; cubes may poke out of the
// grid (clipped averages with the full-cube denominator).  b is required for
// the commutator variants.
GridFunction sparse_apply(const SparseFamily& s, const GridFunction& f, SparseVariant variant,
                          const GridFunction* b = nullptr);

struct OscillationCertificate {
  SparseFamily family;       // the augmented family
  double eta = 0.0;          // certified density gamma/(2(1+gamma))
  bool pointwise_holds = false;
  double worst_gap = 0.0;    // max over (Q, x) of lhs - rhs, <= 0 when it holds
  CellBox worst_cube;
};

// Oscillation refinement: for each Q of the gamma-sparse s, iterate the
// dyadic level sets of M^d(b - b_Q) to a half-sparse family inside Q, then
// augment.  Certifies |b(x) - b_Q| <= 2^(n+2) sum of Omega(b;R) over
// R in the result with x in R inside Q, with the literal constant; a
// violation throws StructuralError since the construction guarantees it.
OscillationCertificate build_oscillation_family(const GridFunction& b, const SparseFamily& s,
                                                double gamma);

// Layered covering estimate: checks the per-cube lower bound
// 1 <= (2 Lambda / |Q|) int_{E_Q} Psi(4^k |f|) and the conclusion
// int_E (sum chi_Q) w <= 2^k w(E) + (4 Lambda / phibar^-1((2 Lambda)^(2^k)))
//                        * int Psi(4^k |f|) M_{phi(L)} w.
// reciprocal_window selects which norm window the family is validated
// against: 4^(-k-1) < ||f||_{Psi,Q} <= 4^(-k) (true, the form the
// applications use) or 4^(k-1) < ||f||_{Psi,Q} <= 4^k.
CheckReport key_lemma_check(const YoungFunction& psi, double lambda_psi,
                            const GridFunction& f, const SparseFamily& fk, int k,
                            bool reciprocal_window, const GridFunction& w,
                            const std::vector<char>& e_mask, const YoungFunction& phi);

struct TbfSplit {
  std::vector<int> k_of_cube;          // window index of avg_Q|f|; -1 when above 1/4
  GridFunction t1, t2;                 // commutator sparse operator split
  std::vector<double> envelope;        // per cube: alpha_k
  std::vector<double> fraction;        // per cube: |F_k(Q)| / |Q|
  bool split_exact = false;            // T_{S,b}f = t1 + t2 on {Mf <= 1/4}
  double worst_fraction_ratio = 0.0;   // max fraction / envelope
};

// Splits the commutator sparse operator along the oscillation level sets
// F_k(Q) = {x in Q : |b - b_Q| > (3/2)^k ||b||}, with the decay envelope
// alpha_k = min(1, e^(1 - (3/2)^k / (2^n e))).
TbfSplit tbf_decomposition(const GridFunction& b, const SparseFamily& s, const GridFunction& f,
                           double b_norm);

}  // namespace sparsedom
