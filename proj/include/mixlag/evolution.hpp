// Crank-Nicolson time stepping for the nonautonomous heat equation in
// Lagrangian coordinates, its time-averaged counterpart, and the adjoint
// problem.  Each step solves
//   (M + (eps dt / 2) K) u' = (M - (eps dt / 2) K) u
// by preconditioned conjugate gradients; every step is self-adjoint in the
// M-inner product, so the adjoint solve is the same composition with the
// operator sequence reversed.
#pragma once

#include <functional>
#include <span>

#include "mixlag/scenario.hpp"
#include "mixlag/sparse.hpp"

namespace mixlag {

// Called after every accepted step with the step index (0 = initial data).
using StepObserver = std::function<void(int step, const Vector& u)>;

struct EvolutionOpts {
  double solver_tol = 1e-10;
  int max_cg_iter = 50000;
  StepObserver observer;
};

// One CN step with an explicit midpoint operator.
Vector cn_step(const SparseCsr& mass, const SparseCsr& k_mid, double eps,
               double dt, const Vector& u, double solver_tol = 1e-10,
               int max_cg_iter = 50000);

// Final-time solution of du/dt = -eps M^{-1} K(t) u with midpoint operators.
Vector solve_forward(const Scenario& scenario, double eps, const Vector& u0,
                     const EvolutionOpts& opts = {});

// Same composition with the single averaged operator at every step.
Vector solve_averaged(const Scenario& scenario, double eps, const Vector& u0,
                      const EvolutionOpts& opts = {});

// M-adjoint of solve_forward: identical steps in reversed order, matching the
// time-reversed coefficient evolution.
Vector solve_adjoint(const Scenario& scenario, double eps, const Vector& v,
                     const EvolutionOpts& opts = {});

// Batched forward solves sharing one pass over the midpoint operators; runs
// may differ in diffusivity and initial data.
struct EvolutionRun {
  double epsilon = 0.0;
  Vector u;  // in: initial data, out: final-time solution
  StepObserver observer;
};
void solve_forward_multi(const Scenario& scenario, std::span<EvolutionRun> runs,
                         double solver_tol = 1e-10, int max_cg_iter = 50000);

}  // namespace mixlag
