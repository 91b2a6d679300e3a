#include "mixlag/velocity_field.hpp"

#include <cmath>
#include <numbers>

namespace mixlag {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Points may drift out of [0,1]^2 by integrator roundoff; tolerate a hair.
constexpr double kDomainSlack = 1e-9;
}  // namespace

VelocityField VelocityField::zero(FlowDomain domain) {
  return VelocityField(FieldKind::Zero, domain, 0.0);
}

VelocityField VelocityField::shear(double amplitude) {
  return VelocityField(FieldKind::Shear, FlowDomain::TorusUnit, amplitude);
}

VelocityField VelocityField::rotating_double_gyre() {
  return VelocityField(FieldKind::RotatingDoubleGyre, FlowDomain::SquareUnit, 0.0);
}

VelocityField VelocityField::stream_function_table() {
  throw std::domain_error(
      "VelocityField: stream-function tables are reserved and not yet supported");
}

void VelocityField::check_point(Vec2 p) const {
  if (domain_ == FlowDomain::SquareUnit) {
    if (p.x < -kDomainSlack || p.x > 1.0 + kDomainSlack ||
        p.y < -kDomainSlack || p.y > 1.0 + kDomainSlack)
      throw std::domain_error("VelocityField: point outside the unit square");
  }
}

Vec2 VelocityField::velocity(double t, Vec2 p) const {
  return jet(t, p).v;
}

VelocityJet VelocityField::jet(double t, Vec2 p) const {
  check_point(p);
  switch (kind_) {
    case FieldKind::Zero:
      return {{0.0, 0.0}, {}};
    case FieldKind::Shear: {
      const double s = std::sin(kTwoPi * p.y);
      const double c = std::cos(kTwoPi * p.y);
      VelocityJet jet;
      jet.v = {amplitude_ * s, 0.0};
      jet.grad = {0.0, amplitude_ * kTwoPi * c, 0.0, 0.0};
      return jet;
    }
    case FieldKind::RotatingDoubleGyre: {
      // psi = (1-s) sin(2 pi x) sin(pi y) + s sin(pi x) sin(2 pi y),
      // v = (-dpsi/dy, dpsi/dx).
      const double s = t * t * (3.0 - 2.0 * t);
      const double s1x = std::sin(kPi * p.x), c1x = std::cos(kPi * p.x);
      const double s2x = std::sin(kTwoPi * p.x), c2x = std::cos(kTwoPi * p.x);
      const double s1y = std::sin(kPi * p.y), c1y = std::cos(kPi * p.y);
      const double s2y = std::sin(kTwoPi * p.y), c2y = std::cos(kTwoPi * p.y);
      const double w0 = 1.0 - s;

      const double psi_y = w0 * kPi * s2x * c1y + s * kTwoPi * s1x * c2y;
      const double psi_x = w0 * kTwoPi * c2x * s1y + s * kPi * c1x * s2y;
      const double psi_xx = -w0 * 4.0 * kPi * kPi * s2x * s1y -
                            s * kPi * kPi * s1x * s2y;
      const double psi_yy = -w0 * kPi * kPi * s2x * s1y -
                            s * 4.0 * kPi * kPi * s1x * s2y;
      const double psi_xy = w0 * 2.0 * kPi * kPi * c2x * c1y +
                            s * 2.0 * kPi * kPi * c1x * c2y;

      VelocityJet jet;
      jet.v = {-psi_y, psi_x};
      jet.grad = {-psi_xy, -psi_yy, psi_xx, psi_xy};
      return jet;
    }
    case FieldKind::StreamFunctionTable:
      throw std::domain_error("VelocityField: unsupported field kind");
  }
  throw std::logic_error("VelocityField: unreachable");
}

}  // namespace mixlag
