#include "mixlag/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mixlag {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Cache midpoint matrices while the whole set stays below ~300 MB.
bool should_cache(MidpointCache policy, int n_t, std::size_t nnz) {
  switch (policy) {
    case MidpointCache::Always: return true;
    case MidpointCache::Never: return false;
    case MidpointCache::Auto: break;
  }
  const double bytes = double(n_t) * double(nnz) * 16.0;
  return bytes <= 300.0 * 1024.0 * 1024.0;
}
}  // namespace

Scenario::Scenario(const ScenarioSpec& s) : spec(s) {
  if (spec.n_t < 1) throw std::invalid_argument("Scenario: n_t must be >= 1");
  mesh = build_mesh(spec.n, spec.boundary);
  theta = MassDensity::unit(mesh);
  map = std::make_unique<AssemblyMap>(mesh);
  grid.n_steps = spec.n_t;

  const int slices = spec.n_t + 1;
  const int sub = std::max(1, (spec.rk4_steps + spec.n_t - 1) / spec.n_t);
  const double dt = grid.dt();

  dual_slice.assign(slices, std::vector<SymTensor>(mesh.node_count));
  std::vector<SymTensor> acc(mesh.node_count);

  for (int node = 0; node < mesh.node_count; ++node) {
    FlowState state;
    state.x = mesh.node_pos[node];
    SymTensor d = pullback_dual_metric(state.jacobian, spec.ambient.dual);
    dual_slice[0][node] = d;
    SymTensor sum = 0.5 * dt * d;
    for (int k = 1; k < slices; ++k) {
      advance_flow(spec.field, state, (k - 1) * dt, k * dt, sub);
      d = pullback_dual_metric(state.jacobian, spec.ambient.dual);
      dual_slice[k][node] = d;
      sum = sum + ((k == slices - 1) ? 0.5 * dt : dt) * d;
    }
    acc[node] = sum;
  }

  SpdTensorField dual(&mesh, TensorRole::DualMetric, std::move(acc));
  dual.require_spd("Scenario: averaged dual metric");
  SpdTensorField metric(&mesh, TensorRole::Metric);
  for (int node = 0; node < mesh.node_count; ++node)
    metric.values()[node] = dual.at(node).inverse();
  averaged = {std::move(dual), std::move(metric)};

  M = map->mass(theta);
  K_bar = map->stiffness(averaged.dual_avg.values(), theta);
  K_ref = map->stiffness(
      std::vector<SymTensor>(mesh.node_count, SymTensor::identity()), theta);

  Vector ones(mesh.dof_count, 1.0);
  M.mul(ones, mass_vec_);
  total_mass_ = dot(ones, mass_vec_);

  if (should_cache(spec.cache, spec.n_t, M.nnz())) {
    midpoint_cache_.resize(spec.n_t);
    std::vector<SymTensor> mid(mesh.node_count);
    for (int k = 0; k < spec.n_t; ++k) {
      for (int node = 0; node < mesh.node_count; ++node)
        mid[node] = 0.5 * (dual_slice[k][node] + dual_slice[k + 1][node]);
      midpoint_cache_[k] =
          std::make_shared<const SparseCsr>(map->stiffness(mid, theta));
    }
  }
}

std::shared_ptr<const SparseCsr> Scenario::midpoint_stiffness(int k) const {
  if (k < 0 || k >= spec.n_t)
    throw std::out_of_range("Scenario: midpoint step index out of range");
  if (!midpoint_cache_.empty()) return midpoint_cache_[k];
  std::vector<SymTensor> mid(mesh.node_count);
  for (int node = 0; node < mesh.node_count; ++node)
    mid[node] = 0.5 * (dual_slice[k][node] + dual_slice[k + 1][node]);
  return std::make_shared<const SparseCsr>(map->stiffness(mid, theta));
}

double Scenario::m_inner(const Vector& u, const Vector& v) const {
  return dot(u, M.mul(v));
}

double Scenario::m_norm(const Vector& u) const {
  return std::sqrt(std::max(0.0, m_inner(u, u)));
}

double Scenario::h1_seminorm(const Vector& u) const {
  return std::sqrt(std::max(0.0, dot(u, K_ref.mul(u))));
}

void Scenario::project_mean_free(Vector& u) const {
  if (mesh.boundary == BoundaryKind::Dirichlet) return;
  const double mean = dot(mass_vec_, u) / total_mass_;
  for (double& x : u) x -= mean;
}

ScalarField Scenario::nodal_field(const std::function<double(Vec2)>& f) const {
  ScalarField field;
  field.mesh = &mesh;
  field.values.resize(mesh.dof_count);
  for (int dof = 0; dof < mesh.dof_count; ++dof)
    field.values[dof] = f(mesh.node_pos[mesh.node_of_dof[dof]]);
  return field;
}

Vector Scenario::node_values(const Vector& dof_values) const {
  Vector out(mesh.node_count, 0.0);
  for (int dof = 0; dof < mesh.dof_count; ++dof)
    out[mesh.node_of_dof[dof]] = dof_values[dof];
  return out;
}

ScalarField default_initial_data(const Scenario& scenario) {
  if (scenario.mesh.boundary == BoundaryKind::Dirichlet) {
    const Vec2 center{0.5, 0.5};
    const double radius = 0.35;
    return scenario.nodal_field([=](Vec2 p) {
      const double r2 =
          (dot(p - center, p - center)) / (radius * radius);
      if (r2 >= 1.0) return 0.0;
      return std::exp(1.0 - 1.0 / (1.0 - r2));
    });
  }
  return scenario.nodal_field([](Vec2 p) {
    return std::sin(kTwoPi * p.x) * std::sin(kTwoPi * p.y) +
           0.25 * std::cos(kTwoPi * p.x);
  });
}

}  // namespace mixlag
