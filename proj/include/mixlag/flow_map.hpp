// Flow maps and their Jacobians via the coupled state + variational system
//   dx/dt = v(t, x),   dJ/dt = (grad v)(t, x) J,   J(t0) = I,
// integrated with fixed-step classical fourth-order Runge-Kutta.  Positions on
// the torus are wrapped only when reported; Jacobians always live in the
// covering plane.
#pragma once

#include "mixlag/vec2.hpp"
#include "mixlag/velocity_field.hpp"

namespace mixlag {

struct FlowSample {
  Vec2 base;
  Vec2 image;
  Mat2 jacobian;
  double t = 0.0;
};

constexpr int kDefaultRk4Steps = 400;

// Running state of one trajectory; position is kept unwrapped.
struct FlowState {
  Vec2 x;
  Mat2 jacobian = Mat2::identity();
};

// Advance a trajectory from time t0 to t1 with `steps` RK4 steps.
void advance_flow(const VelocityField& field, FlowState& state, double t0,
                  double t1, int steps);

// Flow map between arbitrary times (used for restarts and sweeps).
FlowSample flow_map_between(const VelocityField& field, Vec2 p, double t0,
                            double t1, int steps);

// Flow map from time 0, the common case.
FlowSample flow_map(const VelocityField& field, Vec2 p, double t,
                    int steps = kDefaultRk4Steps);

inline Vec2 wrap_unit(Vec2 p) {
  double x = p.x - std::floor(p.x);
  double y = p.y - std::floor(p.y);
  if (x >= 1.0) x -= 1.0;
  if (y >= 1.0) y -= 1.0;
  return {x, y};
}

}  // namespace mixlag
