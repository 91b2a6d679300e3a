// P1 finite element assembly of weighted mass and stiffness matrices,
//   M_ij = sum_T theta_T |T| (standard P1 local mass),
//   K_ij = sum_T theta_T |T| (grad phi_i)^T D_T (grad phi_j),
// with D and theta sampled as barycentric (vertex-mean) values per triangle.
// Dirichlet boundary rows and columns are eliminated.
#pragma once

#include <span>

#include "mixlag/mesh.hpp"
#include "mixlag/sparse.hpp"
#include "mixlag/tensor_field.hpp"

namespace mixlag {

// Shared sparsity pattern plus per-triangle scatter slots for a mesh; built
// once and reused for every matrix on that mesh.
class AssemblyMap {
 public:
  explicit AssemblyMap(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }
  // CSR skeleton with zeroed values.
  SparseCsr zero_matrix() const;

  SparseCsr mass(const MassDensity& theta) const;
  SparseCsr stiffness(std::span<const SymTensor> dual_at_nodes,
                      const MassDensity& theta) const;

 private:
  const Mesh* mesh_;
  SparseCsr skeleton_;
  std::vector<std::array<int, 9>> slots_;  // value index per (i,j), -1 dropped
};

struct OperatorPair {
  SparseCsr mass;       // symmetric positive definite
  SparseCsr stiffness;  // symmetric positive semidefinite
};

// Convenience wrapper building both operators; checks D for positivity.
OperatorPair assemble(const Mesh& mesh, const SpdTensorField& dual,
                      const MassDensity& theta);
OperatorPair assemble(const AssemblyMap& map, const SpdTensorField& dual,
                      const MassDensity& theta);

}  // namespace mixlag
