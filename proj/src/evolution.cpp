#include "mixlag/evolution.hpp"

#include <stdexcept>

namespace mixlag {

namespace {

// In-place CN step given the prepared system matrix A = M + c K.
void cn_step_inplace(const SparseCsr& mass, const SparseCsr& k_mid,
                     const SparseCsr& a, double c, Vector& u, Vector& rhs,
                     Vector& scratch, double tol, int max_iter) {
  mass.mul(u, rhs);
  k_mid.mul(u, scratch);
  axpy(-c, scratch, rhs);
  // Warm start from the previous state; the solution moves little per step.
  cg_solve(a, rhs, u, tol, max_iter);
}

}  // namespace

Vector cn_step(const SparseCsr& mass, const SparseCsr& k_mid, double eps,
               double dt, const Vector& u, double solver_tol, int max_cg_iter) {
  if (!(dt > 0.0)) throw std::invalid_argument("cn_step: dt must be positive");
  const double c = 0.5 * eps * dt;
  SparseCsr a = mass;
  a.axpy_same_pattern(c, k_mid);
  Vector out = u, rhs, scratch;
  cn_step_inplace(mass, k_mid, a, c, out, rhs, scratch, solver_tol, max_cg_iter);
  return out;
}

Vector solve_forward(const Scenario& scenario, double eps, const Vector& u0,
                     const EvolutionOpts& opts) {
  EvolutionRun run{eps, u0, opts.observer};
  solve_forward_multi(scenario, std::span<EvolutionRun>(&run, 1),
                      opts.solver_tol, opts.max_cg_iter);
  return std::move(run.u);
}

Vector solve_averaged(const Scenario& scenario, double eps, const Vector& u0,
                      const EvolutionOpts& opts) {
  if (u0.size() != std::size_t(scenario.dofs()))
    throw std::invalid_argument("solve_averaged: dof count mismatch");
  const double dt = scenario.grid.dt();
  const double c = 0.5 * eps * dt;
  SparseCsr a = scenario.M;
  a.axpy_same_pattern(c, scenario.K_bar);
  Vector u = u0, rhs, scratch;
  if (opts.observer) opts.observer(0, u);
  for (int k = 0; k < scenario.grid.n_steps; ++k) {
    cn_step_inplace(scenario.M, scenario.K_bar, a, c, u, rhs, scratch,
                    opts.solver_tol, opts.max_cg_iter);
    if (opts.observer) opts.observer(k + 1, u);
  }
  return u;
}

Vector solve_adjoint(const Scenario& scenario, double eps, const Vector& v,
                     const EvolutionOpts& opts) {
  if (v.size() != std::size_t(scenario.dofs()))
    throw std::invalid_argument("solve_adjoint: dof count mismatch");
  const double dt = scenario.grid.dt();
  const double c = 0.5 * eps * dt;
  Vector u = v, rhs, scratch;
  SparseCsr a;
  if (opts.observer) opts.observer(0, u);
  for (int k = 0; k < scenario.grid.n_steps; ++k) {
    auto k_mid = scenario.midpoint_stiffness(scenario.grid.n_steps - 1 - k);
    a = scenario.M;
    a.axpy_same_pattern(c, *k_mid);
    cn_step_inplace(scenario.M, *k_mid, a, c, u, rhs, scratch, opts.solver_tol,
                    opts.max_cg_iter);
    if (opts.observer) opts.observer(k + 1, u);
  }
  return u;
}

void solve_forward_multi(const Scenario& scenario, std::span<EvolutionRun> runs,
                         double solver_tol, int max_cg_iter) {
  for (auto& run : runs) {
    if (run.u.size() != std::size_t(scenario.dofs()))
      throw std::invalid_argument("solve_forward_multi: dof count mismatch");
    if (!(run.epsilon > 0.0))
      throw std::invalid_argument("solve_forward_multi: diffusivity must be positive");
    if (run.observer) run.observer(0, run.u);
  }
  const double dt = scenario.grid.dt();
  Vector rhs, scratch;
  SparseCsr a;
  for (int k = 0; k < scenario.grid.n_steps; ++k) {
    auto k_mid = scenario.midpoint_stiffness(k);
    for (auto& run : runs) {
      const double c = 0.5 * run.epsilon * dt;
      a = scenario.M;
      a.axpy_same_pattern(c, *k_mid);
      cn_step_inplace(scenario.M, *k_mid, a, c, run.u, rhs, scratch, solver_tol,
                      max_cg_iter);
      if (run.observer) run.observer(k + 1, run.u);
    }
  }
}

}  // namespace mixlag
