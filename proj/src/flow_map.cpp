#include "mixlag/flow_map.hpp"

#include <cmath>
#include <stdexcept>

namespace mixlag {

namespace {

struct Deriv {
  Vec2 dx;
  Mat2 dj;
};

inline Deriv rhs(const VelocityField& field, double t, const FlowState& s) {
  const VelocityJet jet = field.jet(t, s.x);
  return {jet.v, jet.grad * s.jacobian};
}

inline FlowState shifted(const FlowState& s, double h, const Deriv& d) {
  FlowState out;
  out.x = s.x + h * d.dx;
  out.jacobian = s.jacobian + h * d.dj;
  return out;
}

// Square-domain trajectories must stay inside up to roundoff; built-in fields
// are tangent to the boundary, so anything larger signals a usage bug.
void check_square_band(const VelocityField& field, const FlowState& s) {
  if (field.domain() != FlowDomain::SquareUnit) return;
  constexpr double band = 1e-9;
  if (s.x.x < -band || s.x.x > 1.0 + band || s.x.y < -band ||
      s.x.y > 1.0 + band)
    throw std::runtime_error("flow_map: trajectory left the unit square");
}

inline void clamp_square(const VelocityField& field, FlowState& s) {
  if (field.domain() != FlowDomain::SquareUnit) return;
  s.x.x = std::min(1.0, std::max(0.0, s.x.x));
  s.x.y = std::min(1.0, std::max(0.0, s.x.y));
}

}  // namespace

void advance_flow(const VelocityField& field, FlowState& state, double t0,
                  double t1, int steps) {
  if (steps < 1) throw std::invalid_argument("advance_flow: steps must be >= 1");
  const double h = (t1 - t0) / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    const Deriv k1 = rhs(field, t, state);
    const Deriv k2 = rhs(field, t + 0.5 * h, shifted(state, 0.5 * h, k1));
    const Deriv k3 = rhs(field, t + 0.5 * h, shifted(state, 0.5 * h, k2));
    const Deriv k4 = rhs(field, t + h, shifted(state, h, k3));
    state.x = state.x + (h / 6.0) * (k1.dx + 2.0 * (k2.dx + k3.dx) + k4.dx);
    state.jacobian =
        state.jacobian + (h / 6.0) * (k1.dj + 2.0 * (k2.dj + k3.dj) + k4.dj);
    check_square_band(field, state);
    clamp_square(field, state);
  }
}

FlowSample flow_map_between(const VelocityField& field, Vec2 p, double t0,
                            double t1, int steps) {
  FlowState state;
  state.x = p;
  advance_flow(field, state, t0, t1, steps);

  FlowSample sample;
  sample.base = p;
  sample.image = field.domain() == FlowDomain::TorusUnit ? wrap_unit(state.x)
                                                         : state.x;
  sample.jacobian = state.jacobian;
  sample.t = t1;
  if (!sample.jacobian.finite())
    throw std::runtime_error("flow_map: non-finite Jacobian");
  return sample;
}

FlowSample flow_map(const VelocityField& field, Vec2 p, double t, int steps) {
  if (t < 0.0 || t > 1.0)
    throw std::invalid_argument("flow_map: t must lie in [0,1]");
  if (t == 0.0) {
    FlowSample sample;
    sample.base = p;
    sample.image = field.domain() == FlowDomain::TorusUnit ? wrap_unit(p) : p;
    sample.jacobian = Mat2::identity();
    sample.t = 0.0;
    return sample;
  }
  return flow_map_between(field, p, 0.0, t, steps);
}

}  // namespace mixlag
