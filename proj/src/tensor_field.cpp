#include "mixlag/tensor_field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mixlag {

namespace {
constexpr double kAsymmetryTol = 1e-12;
}

SpdTensorField SpdTensorField::uniform(const Mesh* mesh, TensorRole role,
                                       SymTensor v) {
  SpdTensorField f(mesh, role);
  for (auto& t : f.values()) t = v;
  return f;
}

double SpdTensorField::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : values_) m = std::min(m, t.eigenvalues()[0]);
  return m;
}

double SpdTensorField::max_eigenvalue() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& t : values_) m = std::max(m, t.eigenvalues()[1]);
  return m;
}

void SpdTensorField::require_spd(const char* what) const {
  for (const auto& t : values_) {
    if (!t.finite())
      throw std::runtime_error(std::string(what) + ": non-finite tensor entry");
    if (!t.positive_definite())
      throw std::invalid_argument(std::string(what) +
                                  ": tensor not positive definite");
  }
}

AmbientMetric AmbientMetric::anisotropic(double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0))
    throw std::invalid_argument("AmbientMetric: diffusivities must be positive");
  AmbientMetric g;
  g.dual = SymTensor::diag(d1, d2);
  g.metric = SymTensor::diag(1.0 / d1, 1.0 / d2);
  return g;
}

Mat2 pullback_metric(const Mat2& jacobian, const Mat2& metric_at_image) {
  if (!(jacobian.det() > 0.0))
    throw std::invalid_argument("pullback_metric: Jacobian must be orientation preserving");
  const Mat2 p = jacobian.transpose() * (metric_at_image * jacobian);
  if (!p.finite())
    throw std::runtime_error("pullback_metric: non-finite result");
  if (p.asymmetry() > kAsymmetryTol * std::max(1.0, p.max_abs()))
    throw std::runtime_error("pullback_metric: asymmetry beyond tolerance");
  return p.sym();
}

SymTensor pullback_dual_metric(const Mat2& jacobian, const SymTensor& ambient_dual) {
  const Mat2 jinv = jacobian.inverse();
  const Mat2 d = jinv * (ambient_dual.mat() * jinv.transpose());
  if (!d.finite())
    throw std::runtime_error("pullback_dual_metric: non-finite result");
  return SymTensor::from(d);
}

AveragedGeometry averaged_dual_metric(const Mesh& mesh, const VelocityField& field,
                                      const AmbientMetric& ambient, int n_slices,
                                      int rk4_steps) {
  if (n_slices < 2)
    throw std::invalid_argument("averaged_dual_metric: need at least 2 time slices");

  const int intervals = n_slices - 1;
  const int sub = std::max(1, (rk4_steps + intervals - 1) / intervals);
  const double dt = 1.0 / intervals;

  SpdTensorField dual(&mesh, TensorRole::DualMetric);
  SpdTensorField metric(&mesh, TensorRole::Metric);

  for (int node = 0; node < mesh.node_count; ++node) {
    FlowState state;
    state.x = mesh.node_pos[node];
    SymTensor acc = 0.5 * dt * pullback_dual_metric(state.jacobian, ambient.dual);
    for (int k = 1; k <= intervals; ++k) {
      advance_flow(field, state, (k - 1) * dt, k * dt, sub);
      const double w = (k == intervals) ? 0.5 * dt : dt;
      acc = acc + w * pullback_dual_metric(state.jacobian, ambient.dual);
    }
    dual.values()[node] = acc;
    if (!acc.positive_definite())
      throw std::runtime_error("averaged_dual_metric: averaged dual metric not SPD");
    metric.values()[node] = acc.inverse();
  }

  return {std::move(dual), std::move(metric)};
}

std::vector<Mat2> transport_tensor(const SpdTensorField& g_ref,
                                   const SpdTensorField& dual) {
  if (g_ref.mesh() != dual.mesh())
    throw std::invalid_argument("transport_tensor: fields live on different meshes");
  if (g_ref.role() != TensorRole::Metric || dual.role() != TensorRole::DualMetric)
    throw std::invalid_argument("transport_tensor: role mismatch");
  std::vector<Mat2> out(dual.values().size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = dual.at(int(i)).mat() * g_ref.at(int(i)).mat();
  return out;
}

}  // namespace mixlag
