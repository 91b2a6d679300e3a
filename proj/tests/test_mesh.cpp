#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "mixlag/assemble.hpp"
#include "mixlag/mesh.hpp"
#include "mixlag/scenario.hpp"
#include "mixlag/spectral.hpp"
#include "test_util.hpp"

using namespace mixlag;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("mesh counts") {
  const Mesh dirichlet = build_mesh(4, BoundaryKind::Dirichlet);
  CHECK(dirichlet.dof_count == 9);
  CHECK(dirichlet.node_count == 25);
  CHECK(int(dirichlet.triangles.size()) == 32);

  const Mesh periodic = build_mesh(4, BoundaryKind::Periodic);
  CHECK(periodic.dof_count == 16);
  CHECK(periodic.node_count == 16);
  CHECK(int(periodic.triangles.size()) == 32);

  CHECK_THROWS_AS(build_mesh(3, BoundaryKind::Periodic), std::invalid_argument);
}

TEST_CASE("triangles are congruent and positively oriented") {
  const Mesh mesh = build_mesh(8, BoundaryKind::Dirichlet);
  CHECK(mesh.tri_area() == doctest::Approx(1.0 / 128).epsilon(1e-15));
  Vec2 g[3];
  for (std::uint8_t orient : {std::uint8_t(0), std::uint8_t(1)}) {
    mesh.shape_gradients(orient, g);
    const Vec2 sum = g[0] + g[1] + g[2];
    CHECK(sum.x == 0.0);
    CHECK(sum.y == 0.0);
  }
}

TEST_CASE("operators are symmetric and definite") {
  for (BoundaryKind boundary : {BoundaryKind::Dirichlet, BoundaryKind::Periodic}) {
    const Mesh mesh = build_mesh(8, boundary);
    const auto dual = SpdTensorField::uniform(&mesh, TensorRole::DualMetric,
                                              SymTensor{2.0, 0.3, 1.0});
    const OperatorPair ops = assemble(mesh, dual, MassDensity::unit(mesh));

    CHECK(ops.mass.max_asymmetry() <= 1e-14);
    CHECK(ops.stiffness.max_asymmetry() <= 1e-14);

    const Vector u = testutil::random_vector(mesh.dof_count, 5);
    const double kuu = dot(u, ops.stiffness.mul(u));
    const double muu = dot(u, ops.mass.mul(u));
    CHECK(muu > 0.0);
    if (boundary == BoundaryKind::Dirichlet) {
      CHECK(kuu > 0.0);
    } else {
      CHECK(kuu >= -1e-12);
      const Vector ones(mesh.dof_count, 1.0);
      CHECK(max_abs(ops.stiffness.mul(ones)) <=
            1e-13 * ops.stiffness.max_abs());
    }
  }
}

TEST_CASE("constants see no flux on the torus") {
  const Mesh mesh = build_mesh(16, BoundaryKind::Periodic);
  const auto dual = SpdTensorField::uniform(&mesh, TensorRole::DualMetric,
                                            SymTensor{1.5, -0.4, 2.5});
  const OperatorPair ops = assemble(mesh, dual, MassDensity::unit(mesh));
  const Vector u = testutil::random_vector(mesh.dof_count, 17);
  const Vector ones(mesh.dof_count, 1.0);
  CHECK(std::abs(dot(ones, ops.stiffness.mul(u))) <=
        1e-12 * ops.stiffness.max_abs() * norm2(u));
}

TEST_CASE("assembly rejects bad input") {
  const Mesh mesh = build_mesh(4, BoundaryKind::Periodic);
  auto dual = SpdTensorField::uniform(&mesh, TensorRole::DualMetric,
                                      SymTensor::identity());
  dual.values()[5] = SymTensor{1.0, 3.0, 1.0};  // not positive definite
  CHECK_THROWS_AS(assemble(mesh, dual, MassDensity::unit(mesh)),
                  std::invalid_argument);

  auto metric_role = SpdTensorField::uniform(&mesh, TensorRole::Metric,
                                             SymTensor::identity());
  CHECK_THROWS_AS(assemble(mesh, metric_role, MassDensity::unit(mesh)),
                  std::invalid_argument);
}

TEST_CASE("mass scales linearly in the density") {
  const Mesh mesh = build_mesh(8, BoundaryKind::Periodic);
  const AssemblyMap map(mesh);
  MassDensity theta = MassDensity::unit(mesh);
  const SparseCsr m1 = map.mass(theta);
  for (double& t : theta.theta) t = 2.0;
  const SparseCsr m2 = map.mass(theta);
  for (std::size_t k = 0; k < m1.val.size(); ++k)
    CHECK(m2.val[k] == doctest::Approx(2.0 * m1.val[k]).epsilon(1e-15));
  // unit total mass on the torus
  const Vector ones(mesh.dof_count, 1.0);
  CHECK(dot(ones, m1.mul(ones)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("stiffness is linear in the coefficient field") {
  const Mesh mesh = build_mesh(8, BoundaryKind::Periodic);
  const AssemblyMap map(mesh);
  const MassDensity theta = MassDensity::unit(mesh);

  std::vector<SymTensor> d1(mesh.node_count), d2(mesh.node_count),
      sum(mesh.node_count);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-0.3, 0.3);
  for (int i = 0; i < mesh.node_count; ++i) {
    d1[i] = SymTensor{1.0 + dist(rng), dist(rng), 1.0 + dist(rng)};
    d2[i] = SymTensor{2.0 + dist(rng), dist(rng), 1.5 + dist(rng)};
    sum[i] = d1[i] + d2[i];
  }
  const SparseCsr k1 = map.stiffness(d1, theta);
  const SparseCsr k2 = map.stiffness(d2, theta);
  const SparseCsr ks = map.stiffness(sum, theta);
  double max_err = 0.0;
  for (std::size_t k = 0; k < ks.val.size(); ++k)
    max_err = std::max(max_err, std::abs(ks.val[k] - k1.val[k] - k2.val[k]));
  CHECK(max_err <= 1e-12 * std::max(1.0, ks.max_abs()));
}

TEST_CASE("trapezoid average of slice stiffness equals averaged stiffness") {
  ScenarioSpec spec;
  spec.field = VelocityField::shear(0.5);
  spec.n = 16;
  spec.n_t = 8;
  const Scenario scenario(spec);

  SparseCsr acc = scenario.map->zero_matrix();
  const int m = scenario.grid.n_steps;
  for (int k = 0; k <= m; ++k) {
    const SparseCsr kk =
        scenario.map->stiffness(scenario.dual_slice[k], scenario.theta);
    acc.axpy_same_pattern((k == 0 || k == m) ? 0.5 / m : 1.0 / m, kk);
  }
  double max_err = 0.0;
  for (std::size_t k = 0; k < acc.val.size(); ++k)
    max_err = std::max(max_err, std::abs(acc.val[k] - scenario.K_bar.val[k]));
  CHECK(max_err <= 1e-12 * std::max(1.0, scenario.K_bar.max_abs()));
}

TEST_CASE("discrete uniform parabolicity bounds") {
  ScenarioSpec spec;
  spec.field = VelocityField::shear(0.5);
  spec.n = 16;
  spec.n_t = 16;
  const Scenario scenario(spec);

  const double c1 = scenario.averaged.dual_avg.min_eigenvalue();
  const double c2 = scenario.averaged.dual_avg.max_eigenvalue();
  CHECK(c1 > 0.0);
  for (unsigned seed = 0; seed < 8; ++seed) {
    const Vector u = testutil::random_vector(scenario.dofs(), 100 + seed);
    const double ref = dot(u, scenario.K_ref.mul(u));
    const double val = dot(u, scenario.K_bar.mul(u));
    CHECK(val >= 0.95 * c1 * ref);
    CHECK(val <= 1.05 * c2 * ref);
  }
}

TEST_CASE("Dirichlet ground eigenvalue of the unit square") {
  ScenarioSpec spec;
  spec.field = VelocityField::zero(FlowDomain::SquareUnit);
  spec.boundary = BoundaryKind::Dirichlet;
  spec.n = 128;
  spec.n_t = 4;
  const Scenario scenario(spec);
  const auto eig = dynamic_laplace_eig(scenario, 1);
  CHECK(testutil::rel_err(eig.front().lambda, -2.0 * kPi * kPi) <= 0.01);
}

TEST_CASE("periodic anisotropic ground eigenvalue") {
  ScenarioSpec spec;
  spec.field = VelocityField::zero();
  spec.boundary = BoundaryKind::Periodic;
  spec.n = 128;
  spec.n_t = 4;
  spec.ambient = AmbientMetric::anisotropic(4.0, 1.0);
  const Scenario scenario(spec);
  const auto eig = dynamic_laplace_eig(scenario, 1);
  CHECK(testutil::rel_err(eig.front().lambda, -4.0 * kPi * kPi) <= 0.01);
}

TEST_CASE("triplet export round trip") {
  const Mesh mesh = build_mesh(4, BoundaryKind::Dirichlet);
  const auto dual = SpdTensorField::uniform(&mesh, TensorRole::DualMetric,
                                            SymTensor::identity());
  const OperatorPair ops = assemble(mesh, dual, MassDensity::unit(mesh));
  std::ostringstream os;
  write_triplets(ops.stiffness, os);
  std::istringstream is(os.str());
  int r, c, count = 0;
  double v;
  while (is >> r >> c >> v) {
    CHECK(ops.stiffness.at(r, c) == v);
    ++count;
  }
  CHECK(count == int(ops.stiffness.nnz()));
}
