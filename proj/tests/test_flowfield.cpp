#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mixlag/flow_map.hpp"
#include "mixlag/velocity_field.hpp"

using namespace mixlag;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("zero field velocity vanishes") {
  const VelocityField field = VelocityField::zero();
  const Vec2 v = field.velocity(0.3, {0.2, 0.7});
  CHECK(v.x == 0.0);
  CHECK(v.y == 0.0);
}

TEST_CASE("shear velocity at the quarter line") {
  const VelocityField field = VelocityField::shear(0.5);
  const Vec2 v = field.velocity(0.42, {0.9, 0.25});
  CHECK(v.x == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(v.y == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("rotating double gyre at center and time zero") {
  const VelocityField field = VelocityField::rotating_double_gyre();
  const Vec2 v = field.velocity(0.0, {0.5, 0.5});
  CHECK(std::abs(v.x - 0.0) < 1e-13);
  CHECK(std::abs(v.y - (-kTwoPi)) < 1e-12);
}

TEST_CASE("rotating double gyre is tangent to the square boundary") {
  const VelocityField field = VelocityField::rotating_double_gyre();
  for (double t : {0.0, 0.25, 0.5, 0.77, 1.0}) {
    for (int i = 0; i <= 16; ++i) {
      const double s = double(i) / 16;
      CHECK(std::abs(field.velocity(t, {0.0, s}).x) <= 1e-12);
      CHECK(std::abs(field.velocity(t, {1.0, s}).x) <= 1e-12);
      CHECK(std::abs(field.velocity(t, {s, 0.0}).y) <= 1e-12);
      CHECK(std::abs(field.velocity(t, {s, 1.0}).y) <= 1e-12);
    }
  }
}

TEST_CASE("built-in fields are divergence free (finite differences)") {
  const double h = 1e-6;
  for (const VelocityField& field :
       {VelocityField::shear(0.5), VelocityField::rotating_double_gyre()}) {
    double vmax = 0.0, dmax = 0.0;
    for (double t : {0.1, 0.6}) {
      for (double x : {0.21, 0.5, 0.83}) {
        for (double y : {0.13, 0.47, 0.71}) {
          const Vec2 vpx = field.velocity(t, {x + h, y});
          const Vec2 vmx = field.velocity(t, {x - h, y});
          const Vec2 vpy = field.velocity(t, {x, y + h});
          const Vec2 vmy = field.velocity(t, {x, y - h});
          const double div =
              (vpx.x - vmx.x) / (2 * h) + (vpy.y - vmy.y) / (2 * h);
          dmax = std::max(dmax, std::abs(div));
          vmax = std::max(vmax, norm(field.velocity(t, {x, y})));
        }
      }
    }
    CHECK(dmax <= 1e-6 * std::max(1.0, vmax));
  }
}

TEST_CASE("analytic velocity gradient matches finite differences") {
  const VelocityField field = VelocityField::rotating_double_gyre();
  const double h = 1e-6;
  for (double t : {0.2, 0.9}) {
    for (Vec2 p : {Vec2{0.3, 0.4}, Vec2{0.62, 0.18}}) {
      const Mat2 g = field.jet(t, p).grad;
      const Vec2 dx = (1.0 / (2 * h)) *
                      (field.velocity(t, {p.x + h, p.y}) -
                       field.velocity(t, {p.x - h, p.y}));
      const Vec2 dy = (1.0 / (2 * h)) *
                      (field.velocity(t, {p.x, p.y + h}) -
                       field.velocity(t, {p.x, p.y - h}));
      CHECK(std::abs(g.a - dx.x) < 1e-6);
      CHECK(std::abs(g.c - dx.y) < 1e-6);
      CHECK(std::abs(g.b - dy.x) < 1e-6);
      CHECK(std::abs(g.d - dy.y) < 1e-6);
    }
  }
}

TEST_CASE("zero field flow map is the identity") {
  const VelocityField field = VelocityField::zero();
  const FlowSample s = flow_map(field, {0.37, 0.81}, 1.0);
  CHECK(s.image.x == doctest::Approx(0.37).epsilon(1e-15));
  CHECK(s.image.y == doctest::Approx(0.81).epsilon(1e-15));
  CHECK(s.jacobian.a == 1.0);
  CHECK(s.jacobian.b == 0.0);
  CHECK(s.jacobian.c == 0.0);
  CHECK(s.jacobian.d == 1.0);
}

TEST_CASE("shear flow map matches the closed form") {
  const double a = 0.7;
  const VelocityField field = VelocityField::shear(a);
  for (double t : {0.3, 1.0}) {
    for (Vec2 p : {Vec2{0.1, 0.05}, Vec2{0.9, 0.66}}) {
      const FlowSample s = flow_map(field, p, t, 100);
      const double fx = p.x + t * a * std::sin(kTwoPi * p.y);
      const double image_x = fx - std::floor(fx);
      const double jb = t * kTwoPi * a * std::cos(kTwoPi * p.y);
      CHECK(std::abs(s.image.x - image_x) <= 1e-10);
      CHECK(std::abs(s.image.y - p.y) <= 1e-12);
      CHECK(std::abs(s.jacobian.a - 1.0) <= 1e-12);
      CHECK(std::abs(s.jacobian.b - jb) <= 1e-10);
      CHECK(std::abs(s.jacobian.c) <= 1e-12);
      CHECK(std::abs(s.jacobian.d - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("integrator self-convergence is fourth order") {
  const VelocityField field = VelocityField::rotating_double_gyre();
  const Vec2 p{0.3, 0.4};
  const Vec2 i1 = flow_map(field, p, 1.0, 25).image;
  const Vec2 i2 = flow_map(field, p, 1.0, 50).image;
  const Vec2 i4 = flow_map(field, p, 1.0, 100).image;
  const double e1 = norm(i1 - i2);
  const double e2 = norm(i2 - i4);
  CHECK(std::log2(e1 / e2) >= 3.7);
}

TEST_CASE("volume preservation of the Jacobian") {
  for (const VelocityField& field :
       {VelocityField::shear(0.5), VelocityField::rotating_double_gyre()}) {
    for (Vec2 p : {Vec2{0.3, 0.4}, Vec2{0.81, 0.13}, Vec2{0.5, 0.75}}) {
      const FlowSample s = flow_map(field, p, 1.0, 200);
      CHECK(s.jacobian.det() > 0.0);
      CHECK(std::abs(s.jacobian.det() - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("flow restart composes to the direct map") {
  const VelocityField field = VelocityField::rotating_double_gyre();
  const Vec2 p{0.27, 0.64};
  const double split = 0.37;

  const FlowSample direct = flow_map(field, p, 1.0, 400);
  const FlowSample tol_probe = flow_map(field, p, 1.0, 800);
  const double tol = norm(direct.image - tol_probe.image) +
                     (direct.jacobian - tol_probe.jacobian).max_abs() + 1e-13;

  const FlowSample leg1 = flow_map_between(field, p, 0.0, split, 160);
  const FlowSample leg2 = flow_map_between(field, leg1.image, split, 1.0, 240);
  const Mat2 j = leg2.jacobian * leg1.jacobian;

  CHECK(norm(leg2.image - direct.image) <= 10 * tol);
  CHECK((j - direct.jacobian).max_abs() <= 10 * tol);
}

TEST_CASE("finite-difference Jacobian oracle agrees with the variational one") {
  const VelocityField field = VelocityField::rotating_double_gyre();
  const Vec2 p{0.44, 0.58};
  const double d = 1e-5;
  const FlowSample s = flow_map(field, p, 1.0, 400);
  const Vec2 ipx = flow_map(field, {p.x + d, p.y}, 1.0, 400).image;
  const Vec2 imx = flow_map(field, {p.x - d, p.y}, 1.0, 400).image;
  const Vec2 ipy = flow_map(field, {p.x, p.y + d}, 1.0, 400).image;
  const Vec2 imy = flow_map(field, {p.x, p.y - d}, 1.0, 400).image;
  CHECK(std::abs((ipx.x - imx.x) / (2 * d) - s.jacobian.a) < 1e-4);
  CHECK(std::abs((ipx.y - imx.y) / (2 * d) - s.jacobian.c) < 1e-4);
  CHECK(std::abs((ipy.x - imy.x) / (2 * d) - s.jacobian.b) < 1e-4);
  CHECK(std::abs((ipy.y - imy.y) / (2 * d) - s.jacobian.d) < 1e-4);
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(VelocityField::stream_function_table(), std::domain_error);
  const VelocityField square = VelocityField::rotating_double_gyre();
  CHECK_THROWS_AS(square.velocity(0.0, {1.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(flow_map(square, {0.5, 0.5}, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(flow_map(square, {0.5, 0.5}, 0.5, 0), std::invalid_argument);
}

TEST_CASE("torus images are wrapped, Jacobians are not") {
  const VelocityField field = VelocityField::shear(3.0);
  const FlowSample s = flow_map(field, {0.9, 0.25}, 1.0, 100);
  CHECK(s.image.x >= 0.0);
  CHECK(s.image.x < 1.0);
  // amplitude 3 at y = 1/4 translates by 3, wrapping three times
  CHECK(s.image.x == doctest::Approx(0.9).epsilon(1e-9));
}
