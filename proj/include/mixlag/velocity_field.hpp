// Built-in time-dependent velocity fields on the unit square and unit torus.
// All built-ins are divergence free, so Lebesgue area is the invariant mass
// form and the flow is volume preserving.
#pragma once

#include <stdexcept>

#include "mixlag/vec2.hpp"

namespace mixlag {

enum class FieldKind { Zero, Shear, RotatingDoubleGyre, StreamFunctionTable };
enum class FlowDomain { TorusUnit, SquareUnit };

// Velocity and its spatial gradient at one point, evaluated together so the
// trigonometric terms are shared between the state and variational equations.
struct VelocityJet {
  Vec2 v;
  Mat2 grad;  // grad.a = dv1/dx, grad.b = dv1/dy, grad.c = dv2/dx, grad.d = dv2/dy
};

class VelocityField {
 public:
  static VelocityField zero(FlowDomain domain = FlowDomain::TorusUnit);
  // v(t, (x,y)) = (a sin(2 pi y), 0) on the torus.
  static VelocityField shear(double amplitude);
  // Stream function psi = (1-s) sin(2 pi x) sin(pi y) + s sin(pi x) sin(2 pi y)
  // with s(t) = t^2 (3 - 2t); tangent to the boundary of the unit square.
  static VelocityField rotating_double_gyre();
  // Reserved input kind; construction rejects it until tabulated data is
  // supported.
  static VelocityField stream_function_table();

  FieldKind kind() const { return kind_; }
  FlowDomain domain() const { return domain_; }
  double amplitude() const { return amplitude_; }

  // Velocity at time t and point p.  Torus points may be given in the
  // covering plane; square points must lie in [0,1]^2 (throws otherwise).
  Vec2 velocity(double t, Vec2 p) const;

  // Velocity together with its spatial gradient, for the variational
  // equation dJ/dt = (grad v) J.
  VelocityJet jet(double t, Vec2 p) const;

 private:
  VelocityField(FieldKind kind, FlowDomain domain, double amplitude)
      : kind_(kind), domain_(domain), amplitude_(amplitude) {}

  void check_point(Vec2 p) const;

  FieldKind kind_;
  FlowDomain domain_;
  double amplitude_ = 0.0;
};

}  // namespace mixlag
