#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mixlag/scenario.hpp"
#include "mixlag/tensor_field.hpp"
#include "test_util.hpp"

using namespace mixlag;

namespace {
constexpr double kPi = std::numbers::pi;

Mat2 random_jacobian(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  while (true) {
    Mat2 j{1.0 + 0.5 * dist(rng), dist(rng), dist(rng), 1.0 + 0.5 * dist(rng)};
    if (j.det() > 0.1) return j;
  }
}

SymTensor random_spd(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double a = 1.0 + 0.8 * dist(rng);
  const double b = 0.5 * dist(rng);
  const double c = 1.0 + 0.8 * dist(rng);
  // Gram form guarantees positivity.
  return SymTensor{a * a + b * b, b * (a + c) * 0.5, c * c + b * b};
}
}  // namespace

TEST_CASE("pullback of the identity") {
  const Mat2 p = pullback_metric(Mat2::identity(), Mat2::identity());
  CHECK(p.a == 1.0);
  CHECK(p.b == 0.0);
  CHECK(p.d == 1.0);
}

TEST_CASE("pullback under a shear Jacobian") {
  const Mat2 j{1.0, kPi, 0.0, 1.0};
  const Mat2 p = pullback_metric(j, Mat2::identity());
  CHECK(p.a == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.b == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(p.c == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(p.d == doctest::Approx(1.0 + kPi * kPi).epsilon(1e-14));
}

TEST_CASE("pullback under axis scaling") {
  const Mat2 p = pullback_metric(Mat2::diag(2.0, 1.0), Mat2::identity());
  CHECK(p.a == 4.0);
  CHECK(p.d == 1.0);
  CHECK(p.b == 0.0);
}

TEST_CASE("pullback rejects degenerate input") {
  CHECK_THROWS(pullback_metric(Mat2::diag(-1.0, 1.0), Mat2::identity()));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS(pullback_metric(Mat2{1.0, inf, 0.0, 1.0}, Mat2::identity()));
}

TEST_CASE("metric eigenvalue product equals det(J)^2 det(G)") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Mat2 j = random_jacobian(rng);
    const SymTensor g = random_spd(rng);
    const Mat2 pulled = pullback_metric(j, g.mat());
    const auto eigs = SymTensor::from(pulled).eigenvalues();
    CHECK(eigs[0] > 0.0);
    const double lhs = eigs[0] * eigs[1];
    const double rhs = j.det() * j.det() * g.det();
    CHECK(testutil::rel_err(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("dual pullback inverts the metric pullback") {
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Mat2 j = random_jacobian(rng);
    const SymTensor g = random_spd(rng);
    const SymTensor dual = pullback_dual_metric(j, g.inverse());
    const Mat2 product = dual.mat() * pullback_metric(j, g.mat());
    CHECK(std::abs(product.a - 1.0) <= 1e-12);
    CHECK(std::abs(product.b) <= 1e-12);
    CHECK(std::abs(product.c) <= 1e-12);
    CHECK(std::abs(product.d - 1.0) <= 1e-12);
  }
}

TEST_CASE("averaged geometry of the zero field is the ambient one") {
  ScenarioSpec spec;
  spec.field = VelocityField::zero();
  spec.n = 8;
  spec.n_t = 8;
  spec.ambient = AmbientMetric::anisotropic(2.0, 0.5);
  const Scenario scenario(spec);
  for (int node = 0; node < scenario.mesh.node_count; ++node) {
    const SymTensor d = scenario.averaged.dual_avg.at(node);
    CHECK(d.xx == 2.0);
    CHECK(d.xy == 0.0);
    CHECK(d.yy == 0.5);
  }
}

TEST_CASE("averaged dual metric of the shear flow at y = 0") {
  const Mesh mesh = build_mesh(4, BoundaryKind::Periodic);
  const AveragedGeometry avg = averaged_dual_metric(
      mesh, VelocityField::shear(0.5), AmbientMetric::isotropic(), 101);
  // f'(0) = pi for amplitude 1/2; exact integral of the dual family.
  const SymTensor expected{1.0 + kPi * kPi / 3.0, -kPi / 2.0, 1.0};
  const SymTensor got = avg.dual_avg.at(mesh.node_id(1, 0));
  const double scale = 1.0 + kPi * kPi / 3.0;
  CHECK(std::abs(got.xx - expected.xx) / scale <= 1e-4);
  CHECK(std::abs(got.xy - expected.xy) / scale <= 1e-4);
  CHECK(std::abs(got.yy - expected.yy) / scale <= 1e-4);
}

TEST_CASE("time quadrature is second order") {
  const Mesh mesh = build_mesh(4, BoundaryKind::Periodic);
  const VelocityField field = VelocityField::shear(0.5);
  const AmbientMetric ambient;
  const int node = mesh.node_id(1, 0);
  auto entry = [&](int slices) {
    return averaged_dual_metric(mesh, field, ambient, slices).dual_avg.at(node).xx;
  };
  const double exact = 1.0 + kPi * kPi / 3.0;
  const double e1 = std::abs(entry(17) - exact);
  const double e2 = std::abs(entry(33) - exact);
  CHECK(std::log2(e1 / e2) >= 1.8);
}

TEST_CASE("averaged metric inverts the averaged dual per node") {
  ScenarioSpec spec;
  spec.field = VelocityField::shear(0.5);
  spec.n = 8;
  spec.n_t = 16;
  const Scenario scenario(spec);
  for (int node = 0; node < scenario.mesh.node_count; node += 7) {
    const Mat2 product = scenario.averaged.metric_avg.at(node).mat() *
                         scenario.averaged.dual_avg.at(node).mat();
    CHECK(std::abs(product.a - 1.0) <= 1e-10);
    CHECK(std::abs(product.b) <= 1e-10);
    CHECK(std::abs(product.c) <= 1e-10);
    CHECK(std::abs(product.d - 1.0) <= 1e-10);
  }
}

TEST_CASE("transport tensor against the Euclidean reference") {
  ScenarioSpec spec;
  spec.field = VelocityField::shear(0.5);
  spec.n = 8;
  spec.n_t = 64;
  const Scenario scenario(spec);
  const SpdTensorField g_ref =
      SpdTensorField::uniform(&scenario.mesh, TensorRole::Metric,
                              SymTensor::identity());
  const std::vector<Mat2> c = transport_tensor(g_ref, scenario.averaged.dual_avg);

  const int node = scenario.mesh.node_id(3, 0);  // y = 0
  CHECK(std::abs(c[node].a - (1.0 + kPi * kPi / 3.0)) <= 2e-4 * 4.3);
  CHECK(std::abs(c[node].b - (-kPi / 2.0)) <= 2e-4 * 4.3);
  CHECK(std::abs(c[node].d - 1.0) <= 1e-10);
}

TEST_CASE("transport tensor time average equals averaged tensor") {
  ScenarioSpec spec;
  spec.field = VelocityField::shear(0.5);
  spec.n = 8;
  spec.n_t = 32;
  const Scenario scenario(spec);
  const int m = scenario.grid.n_steps;
  for (int node = 0; node < scenario.mesh.node_count; node += 13) {
    SymTensor acc;
    for (int k = 0; k <= m; ++k) {
      const double w = (k == 0 || k == m) ? 0.5 / m : 1.0 / m;
      acc = acc + w * scenario.dual_slice[k][node];
    }
    const SymTensor avg = scenario.averaged.dual_avg.at(node);
    CHECK(std::abs(acc.xx - avg.xx) <= 1e-10);
    CHECK(std::abs(acc.xy - avg.xy) <= 1e-10);
    CHECK(std::abs(acc.yy - avg.yy) <= 1e-10);
  }
}

TEST_CASE("transport tensor role and mesh validation") {
  const Mesh mesh_a = build_mesh(4, BoundaryKind::Periodic);
  const Mesh mesh_b = build_mesh(4, BoundaryKind::Periodic);
  const auto metric = SpdTensorField::uniform(&mesh_a, TensorRole::Metric,
                                              SymTensor::identity());
  const auto dual_wrong_mesh = SpdTensorField::uniform(
      &mesh_b, TensorRole::DualMetric, SymTensor::identity());
  CHECK_THROWS_AS(transport_tensor(metric, dual_wrong_mesh),
                  std::invalid_argument);
  CHECK_THROWS_AS(transport_tensor(metric, metric), std::invalid_argument);
}

TEST_CASE("mixing norm identity g(v, Cv) = |Cv|^2 in the averaged metric") {
  ScenarioSpec spec;
  spec.field = VelocityField::shear(0.8);
  spec.n = 8;
  spec.n_t = 32;
  const Scenario scenario(spec);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int node = 0; node < scenario.mesh.node_count; node += 5) {
    const Mat2 cbar = scenario.averaged.dual_avg.at(node).mat();  // C = dual * I
    const SymTensor gbar = scenario.averaged.metric_avg.at(node);
    for (int trial = 0; trial < 4; ++trial) {
      const Vec2 v{dist(rng), dist(rng)};
      const Vec2 cv = cbar * v;
      const double lhs = dot(v, cv);        // g(v, Cv), Euclidean reference
      const double rhs = gbar.quad(cv);     // |Cv|^2 in the averaged metric
      CHECK(testutil::rel_err(lhs, rhs) <= 1e-10);
    }
  }
}

TEST_CASE("ambient metric validation") {
  CHECK_THROWS_AS(AmbientMetric::anisotropic(-1.0, 2.0), std::invalid_argument);
  const AmbientMetric g = AmbientMetric::anisotropic(4.0, 1.0);
  CHECK(g.dual.xx == 4.0);
  CHECK(g.metric.xx == 0.25);
}

TEST_CASE("spd field checks") {
  const Mesh mesh = build_mesh(4, BoundaryKind::Periodic);
  auto field = SpdTensorField::uniform(&mesh, TensorRole::DualMetric,
                                       SymTensor::identity());
  CHECK(field.min_eigenvalue() == 1.0);
  field.values()[3] = SymTensor{1.0, 2.0, 1.0};  // indefinite
  CHECK(field.min_eigenvalue() < 0.0);
  CHECK_THROWS(field.require_spd("test"));
}
