#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsedom/grid.hpp"

namespace sparsedom {

// Unique 64-bit key for a cell (ix, iy) of the (possibly extended) grid.
inline std::int64_t cell_key(long ix, long iy) {
  return (static_cast<std::int64_t>(ix) << 24) ^ (iy & 0xffffff);
}

// A finite family of lattice cubes with optional witness sets E_Q.
// Cubes are kept in cell units of the reference geometry; measures are
// exact cell counts times h^n.
class SparseFamily {
 public:
  SparseFamily() = default;
  SparseFamily(Grid geom, std::vector<CellBox> cubes)
      : geom_(std::move(geom)), cubes_(std::move(cubes)) {}

  const Grid& geometry() const { return geom_; }
  const std::vector<CellBox>& cubes() const { return cubes_; }
  std::size_t size() const { return cubes_.size(); }
  bool empty() const { return cubes_.empty(); }

  void add(const CellBox& q) { cubes_.push_back(q); witnesses_.reset(); }

  bool has_witnesses() const { return witnesses_.has_value(); }
  // witness cells of cube i (cell coordinate pairs), valid after a
  // successful verify_sparse
  const std::vector<std::vector<std::array<long, 2>>>& witnesses() const;
  double certified_eta() const { return eta_; }

  void set_witnesses(std::vector<std::vector<std::array<long, 2>>> w, double eta);

  std::string to_text() const;
  static SparseFamily from_text(const std::string& text);
  std::string to_json() const;
  static SparseFamily from_json(const std::string& text);

 private:
  Grid geom_;
  std::vector<CellBox> cubes_;
  std::optional<std::vector<std::vector<std::array<long, 2>>>> witnesses_;
  double eta_ = 0.0;
};

// sup over Q in S of (sum of |P| over P in S with P inside Q) / |Q|.
// Empty family -> 0 by convention.
double carleson_constant(const SparseFamily& s);

struct SparseVerification {
  bool success = false;
  double eta = 0.0;               // the eta that was requested
  double carleson = 0.0;          // reported for the Lemma-2.3 cross-check
  std::size_t failing_cube = 0;   // valid when !success
  double failing_fraction = 0.0;  // |E_Q|/|Q| at the failure
};

// Greedy witness construction, smallest cube first: E_Q = cells of Q not
// yet claimed.  On success the witnesses are stored into s.
SparseVerification verify_sparse(SparseFamily& s, double eta);

// Disjoint split into m parts, each certified m/(m + 1/eta - 1)-sparse.
// Cubes are routed by nesting depth mod m; each part is re-verified and a
// StructuralError is thrown if the target density is not certified.
std::vector<SparseFamily> split_family(const SparseFamily& s, double eta, int m);

// Augmented family: for each cube Q of s (index i), f[i] is a family inside
// D(Q) containing Q; cubes of f[i] contained in a strictly smaller member of
// s are dropped.  The result contains s and is certified
// eta*eta0/(1+eta)-sparse.
SparseFamily augment(const SparseFamily& s, const std::vector<SparseFamily>& f,
                     double eta0, double eta);

struct LayerDecomposition {
  std::vector<std::vector<std::size_t>> layers;  // indices into the family, layer 0 = maximal
  std::vector<int> layer_of;                     // per cube
  // E_Q = Q minus the next-layer cubes inside Q, as explicit cells
  std::vector<std::vector<std::array<long, 2>>> witness_cells;
  // A_k(Q) = union of cubes 2^k layers below that sit inside Q
  std::vector<std::vector<std::size_t>> deep_cubes;  // indices into the family
};

LayerDecomposition layer_decomposition(const SparseFamily& fk, int k);

}  // namespace sparsedom
