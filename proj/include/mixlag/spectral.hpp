// Leading nontrivial singular pair of the time-1 solution operator via power
// iteration on P*P, eigenpairs of the averaged diffusion generator via
// deflated inverse iteration on the pencil (K_bar, M), and the
// slope-of-singular-values study (sigma^eps - 1)/eps.
#pragma once

#include <vector>

#include "mixlag/evolution.hpp"
#include "mixlag/scenario.hpp"

namespace mixlag {

struct SingularOpts {
  double sigma_tol = 1e-11;   // stop when successive estimates differ by less
  int max_sweeps = 500;
  int min_sweeps = 5;
  double solver_tol = 1e-10;  // inner CN solver tolerance
};

struct SingularResult {
  double sigma = 0.0;
  Vector v;           // right singular vector, M-normalized (mean-free on tori)
  int iterations = 0;
  double residual = 0.0;  // |(P*P) v - sigma^2 v|_M
};

// Power iteration u <- P*P u with M-normalization, deterministic start vector
// sin(2 pi x) sin(2 pi y); on periodic meshes the M-mean is projected out
// after every operator application.  Throws SolverError if sigma exceeds
// 1 + 1e-10 (the composition must be an M-contraction).
SingularResult leading_singular_pair(const Scenario& scenario, double eps,
                                     const SingularOpts& opts = {});

struct EigOpts {
  double residual_tol = 1e-9;   // |K w - mu M w|_{M^{-1}} target
  int max_iterations = 200;
  double solver_tol = 1e-12;
  double cluster_gap = 1e-6;    // relative gap below which values cluster
};

struct EigResult {
  double lambda = 0.0;  // eigenvalue of the averaged generator, < 0
  Vector w;             // M-normalized eigenvector
  double residual = 0.0;
  int cluster = 0;      // near-degenerate values share a cluster id
};

// k smallest-magnitude nontrivial eigenpairs of K_bar w = mu M w (lambda =
// -mu), via inverse iteration with M-orthogonalization against previously
// found vectors (and against constants on periodic meshes).
std::vector<EigResult> dynamic_laplace_eig(const Scenario& scenario, int k,
                                           const EigOpts& opts = {});

struct SlopeReport {
  std::vector<double> epsilons;
  std::vector<double> sigmas;
  std::vector<double> slopes;  // (sigma - 1) / eps
  std::vector<int> iterations;
  std::vector<double> angles;   // M-angles to a reference span, if provided
  std::vector<Vector> vectors;  // singular vectors per diffusivity
  double extrapolated = 0.0;    // least-squares linear fit evaluated at eps = 0
};

// eps_list must be strictly decreasing with at least 3 entries.
SlopeReport singular_slope(const Scenario& scenario,
                           const std::vector<double>& eps_list,
                           const std::vector<Vector>* reference_span = nullptr,
                           const SingularOpts& opts = {});

// H1 seminorm |v(t_k)|_1 of the forward evolution of v, recorded at every
// grid time (uniform-boundedness diagnostic for singular vectors).
std::vector<double> h1_series(const Scenario& scenario, double eps,
                              const Vector& v, double solver_tol = 1e-10);

// M-angle between a vector and the span of the given (not necessarily
// orthonormal) reference vectors.
double m_angle_to_span(const Scenario& scenario, const Vector& v,
                       const std::vector<Vector>& span);

}  // namespace mixlag
