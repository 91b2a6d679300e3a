// A scenario bundles everything derived from one velocity field on one mesh:
// the per-node dual pullback metrics sampled on the shared uniform time grid,
// their trapezoid average (the mixing geometry), and the assembled mass and
// stiffness operators.  One flow-map sweep per node serves both the metric
// quadrature and the time stepping.
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mixlag/assemble.hpp"
#include "mixlag/mesh.hpp"
#include "mixlag/sparse.hpp"
#include "mixlag/tensor_field.hpp"
#include "mixlag/velocity_field.hpp"

namespace mixlag {

struct TimeGrid {
  int n_steps = 64;
  double dt() const { return 1.0 / n_steps; }
  double time(int k) const { return double(k) / n_steps; }
};

enum class MidpointCache { Auto, Always, Never };

struct ScenarioSpec {
  VelocityField field = VelocityField::zero();
  BoundaryKind boundary = BoundaryKind::Periodic;
  int n = 64;
  int n_t = 64;  // time steps; metrics are sampled at the n_t + 1 grid times
  AmbientMetric ambient;
  int rk4_steps = kDefaultRk4Steps;
  MidpointCache cache = MidpointCache::Auto;
};

// Scalar P1 function given by its coefficients on the free dofs.
struct ScalarField {
  const Mesh* mesh = nullptr;
  Vector values;
};

class Scenario {
 public:
  explicit Scenario(const ScenarioSpec& spec);

  ScenarioSpec spec;
  Mesh mesh;
  MassDensity theta;
  std::unique_ptr<AssemblyMap> map;
  TimeGrid grid;

  // dual_slice[k][node] = pullback dual metric at grid time t_k.
  std::vector<std::vector<SymTensor>> dual_slice;
  AveragedGeometry averaged;

  SparseCsr M;      // weighted mass matrix
  SparseCsr K_bar;  // stiffness of the averaged dual metric
  SparseCsr K_ref;  // stiffness of the identity dual metric (H1 seminorm)

  // Stiffness at the midpoint of step interval k, realized as the mean of the
  // two adjacent grid slices; the step-weighted sum of these midpoints equals
  // K_bar exactly.
  std::shared_ptr<const SparseCsr> midpoint_stiffness(int k) const;

  int dofs() const { return mesh.dof_count; }

  // M-weighted inner product and norm on dof vectors.
  double m_inner(const Vector& u, const Vector& v) const;
  double m_norm(const Vector& u) const;
  double h1_seminorm(const Vector& u) const;

  // Mean-free projection w.r.t. the mass form; no-op on Dirichlet meshes.
  void project_mean_free(Vector& u) const;

  double total_mass() const { return total_mass_; }
  const Vector& mass_of_dof() const { return mass_vec_; }

  // Interpolate a function at the free dofs.
  ScalarField nodal_field(const std::function<double(Vec2)>& f) const;
  // Expand dof coefficients to all nodes (Dirichlet boundary values are 0).
  Vector node_values(const Vector& dof_values) const;

 private:
  std::vector<std::shared_ptr<const SparseCsr>> midpoint_cache_;
  Vector mass_vec_;  // M * 1
  double total_mass_ = 0.0;
};

// Admissible initial data: a smooth radial bump compactly supported in a disk
// strictly inside the square (Dirichlet), or a low-order trigonometric
// polynomial (periodic).
ScalarField default_initial_data(const Scenario& scenario);

}  // namespace mixlag
