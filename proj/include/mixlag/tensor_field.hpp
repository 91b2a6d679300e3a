// Per-node metric data on a mesh: pullback metrics g_t = J^T G J, dual
// metrics g_t^{-1}, the time-averaged dual metric, the mixing metric
// (its inverse), and transport tensors C = (dual) * (reference metric).
#pragma once

#include <functional>
#include <vector>

#include "mixlag/flow_map.hpp"
#include "mixlag/mesh.hpp"
#include "mixlag/vec2.hpp"
#include "mixlag/velocity_field.hpp"

namespace mixlag {

enum class TensorRole { Metric, DualMetric };

class SpdTensorField {
 public:
  SpdTensorField() = default;
  SpdTensorField(const Mesh* mesh, TensorRole role)
      : mesh_(mesh), role_(role), values_(mesh->node_count, SymTensor::identity()) {}
  SpdTensorField(const Mesh* mesh, TensorRole role, std::vector<SymTensor> values)
      : mesh_(mesh), role_(role), values_(std::move(values)) {}

  static SpdTensorField uniform(const Mesh* mesh, TensorRole role, SymTensor v);

  const Mesh* mesh() const { return mesh_; }
  TensorRole role() const { return role_; }
  const std::vector<SymTensor>& values() const { return values_; }
  std::vector<SymTensor>& values() { return values_; }
  const SymTensor& at(int node) const { return values_[node]; }

  // Smallest eigenvalue over all nodes; > 0 iff the field is SPD.
  double min_eigenvalue() const;
  double max_eigenvalue() const;
  void require_spd(const char* what) const;

 private:
  const Mesh* mesh_ = nullptr;
  TensorRole role_ = TensorRole::Metric;
  std::vector<SymTensor> values_;
};

// Positive mass density theta per node (mass form = theta dx dy); default 1.
struct MassDensity {
  std::vector<double> theta;

  static MassDensity unit(const Mesh& mesh) {
    return {std::vector<double>(mesh.node_count, 1.0)};
  }
  bool positive() const {
    for (double t : theta)
      if (!(t > 0.0)) return false;
    return true;
  }
};

struct AveragedGeometry {
  SpdTensorField dual_avg;    // role DualMetric: trapezoid of g_t^{-1} in t
  SpdTensorField metric_avg;  // role Metric: inverse of dual_avg per node
};

// Static ambient geometry of the diffusion: the dual matrix is the diffusion
// tensor D (identity for isotropic homogeneous diffusion).
struct AmbientMetric {
  SymTensor dual = SymTensor::identity();    // G^{-1} = D
  SymTensor metric = SymTensor::identity();  // G

  static AmbientMetric isotropic() { return {}; }
  static AmbientMetric anisotropic(double d1, double d2);
};

// Pullback metric J^T G J, symmetrized.  Guards against asymmetry drift and
// non-finite input.
Mat2 pullback_metric(const Mat2& jacobian, const Mat2& metric_at_image);

// Dual counterpart J^{-1} G^{-1} J^{-T}.
SymTensor pullback_dual_metric(const Mat2& jacobian, const SymTensor& ambient_dual);

// Composite-trapezoid time average of the dual pullback metrics on the
// uniform grid t_k = k/(n_slices-1), one flow-map sweep per node, followed by
// nodewise inversion.  n_slices >= 2.
AveragedGeometry averaged_dual_metric(const Mesh& mesh, const VelocityField& field,
                                      const AmbientMetric& ambient, int n_slices,
                                      int rk4_steps = kDefaultRk4Steps);

// Transport tensor field C = (dual value) * (reference metric value) per
// node.  With a Euclidean reference this is the dual field itself.  The
// product is generally not symmetric.
std::vector<Mat2> transport_tensor(const SpdTensorField& g_ref,
                                   const SpdTensorField& dual);

}  // namespace mixlag
