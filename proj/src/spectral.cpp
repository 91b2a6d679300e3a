#include "mixlag/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mixlag/order_fit.hpp"

namespace mixlag {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kContractionSlack = 1e-10;

// Deterministic full-spectrum dither; on product meshes a pure trigonometric
// mode can be an exact invariant subspace of the autonomous operators, which
// would trap the power iteration.
double splitmix_unit(std::uint64_t i) {
  std::uint64_t z = i + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z = z ^ (z >> 31);
  return 2.0 * (double(z >> 11) * 0x1.0p-53) - 1.0;
}

Vector start_vector(const Scenario& scenario) {
  ScalarField f = scenario.nodal_field([](Vec2 p) {
    return std::sin(kTwoPi * p.x) * std::sin(kTwoPi * p.y);
  });
  Vector v = std::move(f.values);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += 1e-2 * splitmix_unit(i);
  return v;
}

void m_normalize(const Scenario& scenario, Vector& v) {
  const double n = scenario.m_norm(v);
  if (!(n > 0.0))
    throw SolverError("spectral: degenerate vector during iteration", 0.0);
  for (double& x : v) x /= n;
}

// M-orthogonalize v against an M-orthonormal basis (two passes).
void m_orthogonalize(const Scenario& scenario, Vector& v,
                     const std::vector<Vector>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const Vector& b : basis) {
      const double c = scenario.m_inner(v, b);
      axpy(-c, b, v);
    }
}

}  // namespace

SingularResult leading_singular_pair(const Scenario& scenario, double eps,
                                     const SingularOpts& opts) {
  if (!(eps > 0.0))
    throw std::invalid_argument("leading_singular_pair: eps must be positive");

  Vector v = start_vector(scenario);
  scenario.project_mean_free(v);
  m_normalize(scenario, v);

  EvolutionOpts eopts;
  eopts.solver_tol = opts.solver_tol;

  double sigma_prev = -1.0;
  SingularResult result;

  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    Vector w = solve_forward(scenario, eps, v, eopts);
    scenario.project_mean_free(w);
    Vector y = solve_adjoint(scenario, eps, w, eopts);
    scenario.project_mean_free(y);

    const double sigma_sq = scenario.m_inner(v, y);
    const double sigma = std::sqrt(std::max(0.0, sigma_sq));
    if (sigma > 1.0 + kContractionSlack)
      throw SolverError(
          "leading_singular_pair: singular value exceeds 1 (contraction violated)",
          sigma - 1.0);

    // Residual of the eigenproblem (P*P) v = sigma^2 v before normalization.
    Vector r = y;
    axpy(-sigma_sq, v, r);
    result.residual = scenario.m_norm(r);
    result.iterations = sweep;

    m_normalize(scenario, y);
    v = std::move(y);
    result.sigma = sigma;

    if (sweep >= opts.min_sweeps && std::abs(sigma - sigma_prev) <= opts.sigma_tol)
      break;
    sigma_prev = sigma;
  }

  result.v = std::move(v);
  return result;
}

std::vector<EigResult> dynamic_laplace_eig(const Scenario& scenario, int k,
                                           const EigOpts& opts) {
  if (k < 1) throw std::invalid_argument("dynamic_laplace_eig: k must be >= 1");
  const int n = scenario.dofs();

  std::vector<Vector> deflate;
  if (scenario.mesh.boundary == BoundaryKind::Periodic) {
    Vector ones(n, 1.0);
    m_normalize(scenario, ones);
    deflate.push_back(std::move(ones));
  }

  // Keep iterates in the range of the (possibly singular) stiffness matrix.
  auto project = [&](Vector& u) {
    m_orthogonalize(scenario, u, deflate);
  };

  std::mt19937 rng(0x5eed1234u);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::vector<EigResult> results;
  for (int pair = 0; pair < k; ++pair) {
    Vector w(n);
    for (double& x : w) x = unit(rng);
    project(w);
    m_normalize(scenario, w);

    double mu = 0.0, mu_prev = 0.0, resid = 0.0;
    Vector z(n, 0.0), kw, mw, tmp;
    bool ok = false;
    for (int it = 0; it < opts.max_iterations; ++it) {
      scenario.M.mul(w, mw);
      const std::function<void(Vector&)> cg_project =
          scenario.mesh.boundary == BoundaryKind::Periodic
              ? std::function<void(Vector&)>([&](Vector& r) {
                  // Remove the constant component measured in plain l2; the
                  // residual of a consistent singular system stays in range.
                  double s = 0.0;
                  for (double x : r) s += x;
                  s /= r.size();
                  for (double& x : r) x -= s;
                })
              : nullptr;
      cg_solve(scenario.K_bar, mw, z, opts.solver_tol, 200000, cg_project);
      project(z);
      m_normalize(scenario, z);
      w = z;

      scenario.K_bar.mul(w, kw);
      mu = dot(w, kw);

      // Residual in the M^{-1} norm: |M^{-1} K w - mu w|_M.
      scenario.M.mul(w, mw);
      Vector r = kw;
      axpy(-mu, mw, r);
      tmp.assign(n, 0.0);
      cg_solve(scenario.M, r, tmp, 1e-12, 20000);
      resid = std::sqrt(std::max(0.0, dot(tmp, r)));

      if (resid <= opts.residual_tol * std::max(1.0, std::abs(mu)) &&
          std::abs(mu - mu_prev) <= 1e-12 * std::max(1.0, std::abs(mu))) {
        ok = true;
        break;
      }
      mu_prev = mu;
    }
    if (!ok)
      throw SolverError("dynamic_laplace_eig: inverse iteration did not converge",
                        resid);

    EigResult res;
    res.lambda = -mu;
    res.w = w;
    res.residual = resid;
    results.push_back(std::move(res));
    deflate.push_back(results.back().w);
  }

  // Cluster near-degenerate values (relative gap below opts.cluster_gap).
  int cluster = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    const double gap = std::abs(results[i].lambda - results[i - 1].lambda);
    if (gap > opts.cluster_gap * std::max(1.0, std::abs(results[i].lambda)))
      ++cluster;
    results[i].cluster = cluster;
  }
  return results;
}

SlopeReport singular_slope(const Scenario& scenario,
                           const std::vector<double>& eps_list,
                           const std::vector<Vector>* reference_span,
                           const SingularOpts& opts) {
  if (eps_list.size() < 3)
    throw std::invalid_argument("singular_slope: need at least 3 diffusivities");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]) || !(eps_list[i] > 0.0))
      throw std::invalid_argument(
          "singular_slope: eps list must be strictly decreasing and positive");

  SlopeReport report;
  for (double eps : eps_list) {
    SingularResult r = leading_singular_pair(scenario, eps, opts);
    report.epsilons.push_back(eps);
    report.sigmas.push_back(r.sigma);
    report.slopes.push_back((r.sigma - 1.0) / eps);
    report.iterations.push_back(r.iterations);
    if (reference_span)
      report.angles.push_back(m_angle_to_span(scenario, r.v, *reference_span));
    report.vectors.push_back(std::move(r.v));
  }
  const LinearFit fit = fit_linear(report.epsilons, report.slopes);
  report.extrapolated = fit.intercept;
  return report;
}

std::vector<double> h1_series(const Scenario& scenario, double eps,
                              const Vector& v, double solver_tol) {
  std::vector<double> series;
  series.reserve(scenario.grid.n_steps + 1);
  EvolutionOpts opts;
  opts.solver_tol = solver_tol;
  opts.observer = [&](int, const Vector& u) {
    series.push_back(scenario.h1_seminorm(u));
  };
  solve_forward(scenario, eps, v, opts);
  return series;
}

double m_angle_to_span(const Scenario& scenario, const Vector& v,
                       const std::vector<Vector>& span) {
  std::vector<Vector> basis;
  for (const Vector& s : span) {
    Vector b = s;
    m_orthogonalize(scenario, b, basis);
    const double n = scenario.m_norm(b);
    if (n > 1e-12) {
      for (double& x : b) x /= n;
      basis.push_back(std::move(b));
    }
  }
  Vector rest = v;
  m_orthogonalize(scenario, rest, basis);
  const double tangential2 =
      std::max(0.0, scenario.m_inner(v, v) - scenario.m_inner(rest, rest));
  return std::atan2(scenario.m_norm(rest), std::sqrt(tangential2));
}

}  // namespace mixlag
