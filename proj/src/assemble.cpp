#include "mixlag/assemble.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixlag {

AssemblyMap::AssemblyMap(const Mesh& mesh) : mesh_(&mesh) {
  const int ndof = mesh.dof_count;

  // Collect the pattern from triangle connectivity.
  std::vector<std::vector<int>> cols(ndof);
  for (const Triangle& t : mesh.triangles) {
    int dof[3];
    for (int a = 0; a < 3; ++a) dof[a] = mesh.dof_of_node[t.v[a]];
    for (int a = 0; a < 3; ++a) {
      if (dof[a] < 0) continue;
      for (int b = 0; b < 3; ++b)
        if (dof[b] >= 0) cols[dof[a]].push_back(dof[b]);
    }
  }

  skeleton_.rows = ndof;
  skeleton_.ptr.assign(ndof + 1, 0);
  for (int i = 0; i < ndof; ++i) {
    auto& c = cols[i];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    skeleton_.ptr[i + 1] = skeleton_.ptr[i] + int(c.size());
  }
  skeleton_.col.reserve(skeleton_.ptr[ndof]);
  for (int i = 0; i < ndof; ++i)
    skeleton_.col.insert(skeleton_.col.end(), cols[i].begin(), cols[i].end());
  skeleton_.val.assign(skeleton_.col.size(), 0.0);

  auto slot = [&](int i, int j) -> int {
    const int* beg = skeleton_.col.data() + skeleton_.ptr[i];
    const int* end = skeleton_.col.data() + skeleton_.ptr[i + 1];
    const int* it = std::lower_bound(beg, end, j);
    return skeleton_.ptr[i] + int(it - beg);
  };

  slots_.resize(mesh.triangles.size());
  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    const Triangle& t = mesh.triangles[ti];
    int dof[3];
    for (int a = 0; a < 3; ++a) dof[a] = mesh.dof_of_node[t.v[a]];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const int k = 3 * a + b;
        slots_[ti][k] = (dof[a] >= 0 && dof[b] >= 0) ? slot(dof[a], dof[b]) : -1;
      }
  }
}

SparseCsr AssemblyMap::zero_matrix() const { return skeleton_; }

SparseCsr AssemblyMap::mass(const MassDensity& theta) const {
  const Mesh& mesh = *mesh_;
  SparseCsr m = skeleton_;
  const double area = mesh.tri_area();
  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    const Triangle& t = mesh.triangles[ti];
    const double th =
        (theta.theta[t.v[0]] + theta.theta[t.v[1]] + theta.theta[t.v[2]]) / 3.0;
    const double w = th * area / 12.0;
    const auto& s = slots_[ti];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const int k = s[3 * a + b];
        if (k >= 0) m.val[k] += w * (a == b ? 2.0 : 1.0);
      }
  }
  return m;
}

SparseCsr AssemblyMap::stiffness(std::span<const SymTensor> dual_at_nodes,
                                 const MassDensity& theta) const {
  const Mesh& mesh = *mesh_;
  SparseCsr m = skeleton_;
  const double area = mesh.tri_area();

  Vec2 grad_lo[3], grad_up[3];
  mesh.shape_gradients(0, grad_lo);
  mesh.shape_gradients(1, grad_up);

  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    const Triangle& t = mesh.triangles[ti];
    const SymTensor d = (1.0 / 3.0) * (dual_at_nodes[t.v[0]] +
                                       dual_at_nodes[t.v[1]] +
                                       dual_at_nodes[t.v[2]]);
    const double th =
        (theta.theta[t.v[0]] + theta.theta[t.v[1]] + theta.theta[t.v[2]]) / 3.0;
    const Vec2* g = t.orient == 0 ? grad_lo : grad_up;
    const double w = th * area;
    const auto& s = slots_[ti];
    for (int a = 0; a < 3; ++a) {
      const Vec2 dg = d.apply(g[a]);
      for (int b = a; b < 3; ++b) {
        const double kab = w * dot(dg, g[b]);
        const int kup = s[3 * a + b];
        if (kup >= 0) m.val[kup] += kab;
        if (a != b) {
          const int klo = s[3 * b + a];
          if (klo >= 0) m.val[klo] += kab;
        }
      }
    }
  }
  return m;
}

OperatorPair assemble(const AssemblyMap& map, const SpdTensorField& dual,
                      const MassDensity& theta) {
  if (dual.mesh() != &map.mesh())
    throw std::invalid_argument("assemble: field lives on a different mesh");
  if (dual.role() != TensorRole::DualMetric)
    throw std::invalid_argument("assemble: stiffness needs a dual-metric field");
  dual.require_spd("assemble");
  if (!theta.positive())
    throw std::invalid_argument("assemble: mass density must be positive");
  return {map.mass(theta), map.stiffness(dual.values(), theta)};
}

OperatorPair assemble(const Mesh& mesh, const SpdTensorField& dual,
                      const MassDensity& theta) {
  AssemblyMap map(mesh);
  return assemble(map, dual, theta);
}

}  // namespace mixlag
