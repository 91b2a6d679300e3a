#include "mixlag/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mixlag/flow_map.hpp"

namespace mixlag {

namespace {

// P1 interpolation stencil at a point: three node ids and weights.
struct InterpStencil {
  int node[3];
  double w[3];
};

InterpStencil locate(const Mesh& mesh, Vec2 p) {
  const int n = mesh.n;
  double x = p.x, y = p.y;
  if (mesh.boundary == BoundaryKind::Periodic) {
    x -= std::floor(x);
    y -= std::floor(y);
  } else {
    x = std::clamp(x, 0.0, 1.0);
    y = std::clamp(y, 0.0, 1.0);
  }
  int ix = std::min(int(x * n), n - 1);
  int iy = std::min(int(y * n), n - 1);
  const double fx = x * n - ix;
  const double fy = y * n - iy;

  InterpStencil st;
  if (fx >= fy) {
    st.node[0] = mesh.node_id(ix, iy);
    st.node[1] = mesh.node_id(ix + 1, iy);
    st.node[2] = mesh.node_id(ix + 1, iy + 1);
    st.w[0] = 1.0 - fx;
    st.w[1] = fx - fy;
    st.w[2] = fy;
  } else {
    st.node[0] = mesh.node_id(ix, iy);
    st.node[1] = mesh.node_id(ix + 1, iy + 1);
    st.node[2] = mesh.node_id(ix, iy + 1);
    st.w[0] = 1.0 - fy;
    st.w[1] = fx;
    st.w[2] = fy - fx;
  }
  return st;
}

SymTensor interp(const std::vector<SymTensor>& field, const InterpStencil& st) {
  SymTensor out;
  for (int i = 0; i < 3; ++i) out = out + st.w[i] * field[st.node[i]];
  return out;
}

// Composite midpoint rule over a curve: fn(point, unit normal, weight).
template <class Fn>
void curve_quadrature(const Curve& curve, double max_dx, Fn&& fn) {
  for (const CurveSegment& seg : curve.segments()) {
    const int nsub = std::max(1, int(std::ceil(seg.length / max_dx)));
    const double w = seg.length / nsub;
    for (int i = 0; i < nsub; ++i) {
      const double s = (i + 0.5) / nsub;
      const Vec2 p = seg.a + s * (seg.b - seg.a);
      fn(p, seg.normal, w);
    }
  }
}

// Trapezoid weights on k = 0..m for the unit interval.
inline double trapz_weight(int k, int m) {
  return (k == 0 || k == m) ? 0.5 / m : 1.0 / m;
}

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p0, p1, dp;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = t;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = 0.5 * (1.0 - t);  // map [-1,1] -> [0,1], descending roots
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace

// ---- samplers ---------------------------------------------------------------

FieldSampler::FieldSampler(const Scenario& scenario, SymTensor g_ref)
    : scenario_(&scenario), g_ref_(g_ref) {}

Mat2 FieldSampler::transport_avg(Vec2 p) const {
  const InterpStencil st = locate(scenario_->mesh, p);
  return interp(scenario_->averaged.dual_avg.values(), st).mat() * g_ref_.mat();
}

std::vector<Mat2> FieldSampler::transport_series(Vec2 p) const {
  const InterpStencil st = locate(scenario_->mesh, p);
  std::vector<Mat2> series(scenario_->dual_slice.size());
  for (std::size_t k = 0; k < series.size(); ++k)
    series[k] = interp(scenario_->dual_slice[k], st).mat() * g_ref_.mat();
  return series;
}

double FieldSampler::theta(Vec2 p) const {
  const InterpStencil st = locate(scenario_->mesh, p);
  double t = 0.0;
  for (int i = 0; i < 3; ++i)
    t += st.w[i] * scenario_->theta.theta[st.node[i]];
  return t;
}

int FieldSampler::intervals() const { return scenario_->grid.n_steps; }

AnalyticSampler::AnalyticSampler(const VelocityField& field,
                                 const AmbientMetric& ambient, int n_intervals,
                                 int rk4_steps, SymTensor g_ref)
    : field_(&field),
      ambient_(ambient),
      n_intervals_(n_intervals),
      rk4_steps_(rk4_steps),
      g_ref_(g_ref) {
  if (n_intervals_ < 1)
    throw std::invalid_argument("AnalyticSampler: need at least one interval");
}

std::vector<Mat2> AnalyticSampler::transport_series(Vec2 p) const {
  const int m = n_intervals_;
  const int sub = std::max(1, (rk4_steps_ + m - 1) / m);
  const double dt = 1.0 / m;
  std::vector<Mat2> series(m + 1);
  FlowState state;
  state.x = p;
  series[0] = pullback_dual_metric(state.jacobian, ambient_.dual).mat() *
              g_ref_.mat();
  for (int k = 1; k <= m; ++k) {
    advance_flow(*field_, state, (k - 1) * dt, k * dt, sub);
    series[k] = pullback_dual_metric(state.jacobian, ambient_.dual).mat() *
                g_ref_.mat();
  }
  return series;
}

Mat2 AnalyticSampler::transport_avg(Vec2 p) const {
  const std::vector<Mat2> series = transport_series(p);
  Mat2 acc;
  const int m = n_intervals_;
  for (int k = 0; k <= m; ++k) acc = acc + trapz_weight(k, m) * series[k];
  return acc;
}

double AnalyticSampler::theta(Vec2) const { return 1.0; }

int AnalyticSampler::intervals() const { return n_intervals_; }

// ---- set functionals --------------------------------------------------------

double transport_deficit(const Scenario& scenario, const MaterialSet& set,
                         const Vector& u0_dof, double eps,
                         const EvolutionOpts& opts) {
  const Vector u1 = solve_forward(scenario, eps, u0_dof, opts);
  Vector diff(u0_dof.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = u0_dof[i] - u1[i];
  return masked_integral(scenario.mesh, scenario.theta, set.inside,
                         scenario.node_values(diff));
}

double leading_order_transport(const Scenario& scenario, const MaterialSet& set,
                               const Vector& u0_dof) {
  // -integral_S of the discrete averaged generator applied to u0; the
  // generator is -M^{-1} K_bar.
  Vector rhs = scenario.K_bar.mul(u0_dof);
  Vector w(u0_dof.size(), 0.0);
  cg_solve(scenario.M, rhs, w, 1e-12, 50000);
  return masked_integral(scenario.mesh, scenario.theta, set.inside,
                         scenario.node_values(w));
}

double band_integral(const AnalyticBand& band,
                     const std::function<double(Vec2)>& f, int gauss_points) {
  std::vector<double> x, w;
  gauss_legendre_unit(gauss_points, x, w);
  double sum = 0.0;
  for (int i = 0; i < gauss_points; ++i) {
    const double along = x[i];
    for (int j = 0; j < gauss_points; ++j) {
      const double across = band.lo + band.width * x[j];
      const Vec2 p = band.axis == 1 ? Vec2{along, across} : Vec2{across, along};
      sum += w[i] * (band.width * w[j]) * f(p);
    }
  }
  return sum;
}

double leading_order_transport_analytic(
    const AnalyticBand& band, const std::function<double(Vec2)>& avg_generator_u0,
    int gauss_points) {
  return -band_integral(band, avg_generator_u0, gauss_points);
}

// ---- curve functionals ------------------------------------------------------

double boundary_flux(const Curve& curve, const std::function<Vec2(Vec2)>& grad_u0,
                     const std::function<Mat2(Vec2)>& transport,
                     const std::function<double(Vec2)>& theta,
                     const CurveQuadOpts& opts, bool require_closed) {
  if (require_closed && !curve.closed())
    throw std::invalid_argument("boundary_flux: boundary curve must be closed");
  double sum = 0.0;
  curve_quadrature(curve, opts.max_dx, [&](Vec2 p, Vec2 nu, double w) {
    sum += w * theta(p) * dot(grad_u0(p), transport(p) * nu);
  });
  return -sum;  // negated flux: leading-order transport out of the set
}

std::vector<double> boundary_flux_series(const Curve& curve,
                                         const std::function<Vec2(Vec2)>& grad_u0,
                                         const GeometrySampler& sampler,
                                         const CurveQuadOpts& opts,
                                         bool require_closed) {
  if (require_closed && !curve.closed())
    throw std::invalid_argument("boundary_flux_series: curve must be closed");
  std::vector<double> flux(sampler.intervals() + 1, 0.0);
  curve_quadrature(curve, opts.max_dx, [&](Vec2 p, Vec2 nu, double w) {
    const std::vector<Mat2> series = sampler.transport_series(p);
    const double th = sampler.theta(p);
    const Vec2 g = grad_u0(p);
    for (std::size_t k = 0; k < series.size(); ++k)
      flux[k] -= w * th * dot(g, series[k] * nu);
  });
  return flux;
}

double curve_area(const Curve& curve, AreaMetric metric,
                  const GeometrySampler& sampler, int slice,
                  const CurveQuadOpts& opts) {
  double sum = 0.0;
  curve_quadrature(curve, opts.max_dx, [&](Vec2 p, Vec2 nu, double w) {
    double density = sampler.theta(p);
    if (metric == AreaMetric::TimeSlice) {
      const std::vector<Mat2> series = sampler.transport_series(p);
      if (slice < 0 || slice >= int(series.size()))
        throw std::out_of_range("curve_area: slice index out of range");
      density *= std::sqrt(std::max(0.0, dot(nu, series[slice] * nu)));
    } else if (metric == AreaMetric::Averaged) {
      density *= std::sqrt(std::max(0.0, dot(nu, sampler.transport_avg(p) * nu)));
    }
    sum += w * density;
  });
  return sum;
}

AreaReport area_inequalities(const Curve& curve, const GeometrySampler& sampler,
                             const CurveQuadOpts& opts) {
  const int m = sampler.intervals();
  AreaReport report;
  std::vector<double> slice_area(m + 1, 0.0);

  curve_quadrature(curve, opts.max_dx, [&](Vec2 p, Vec2 nu, double w) {
    const std::vector<Mat2> series = sampler.transport_series(p);
    const double th = sampler.theta(p);
    const double qbar = std::max(0.0, dot(nu, sampler.transport_avg(p) * nu));
    report.mixing += w * th * std::sqrt(qbar);

    double time_l2 = 0.0;
    for (int k = 0; k <= m; ++k) {
      const double q = std::max(0.0, dot(nu, series[k] * nu));
      slice_area[k] += w * th * std::sqrt(q);
      time_l2 += trapz_weight(k, m) * q;
    }
    // Pointwise identity: the mixing density is the L2 time average of the
    // slice densities.
    const double defect = std::abs(std::sqrt(time_l2) - std::sqrt(qbar)) /
                          std::max(1.0, std::sqrt(qbar));
    report.identity_error = std::max(report.identity_error, defect);
  });

  double l2 = 0.0, l1 = 0.0;
  for (int k = 0; k <= m; ++k) {
    l2 += trapz_weight(k, m) * slice_area[k] * slice_area[k];
    l1 += trapz_weight(k, m) * slice_area[k];
  }
  report.l2_average = std::sqrt(l2);
  report.l1_average = l1;

  const double slack = 1e-10 * std::max(1.0, report.mixing);
  report.chain_holds = report.mixing >= report.l2_average - slack &&
                       report.l2_average >= report.l1_average - slack;
  return report;
}

double normalized_transport(const Curve& curve, const GeometrySampler& sampler,
                            TransportNorm norm, const CurveQuadOpts& opts) {
  double sum = 0.0;
  curve_quadrature(curve, opts.max_dx, [&](Vec2 p, Vec2 nu, double w) {
    const double q = std::max(0.0, dot(nu, sampler.transport_avg(p) * nu));
    const double integrand =
        norm == TransportNorm::ReferenceGradient ? q : std::sqrt(q);
    sum += w * sampler.theta(p) * integrand;
  });
  return -sum;
}

// ---- Cheeger scan -----------------------------------------------------------

CheegerReport cheeger_scan(const GeometrySampler& sampler,
                           const std::vector<CheegerMember>& family,
                           double lambda2, const CurveQuadOpts& opts) {
  if (family.empty())
    throw std::invalid_argument("cheeger_scan: empty curve family");
  if (!(lambda2 < 0.0))
    throw std::invalid_argument("cheeger_scan: lambda2 must be negative");

  CheegerReport report;
  report.bound = 2.0 * std::sqrt(-lambda2);
  report.ordering_holds = true;
  const int m = sampler.intervals();

  for (const CheegerMember& member : family) {
    if (!(member.mass1 > 0.0) || !(member.mass2 > 0.0))
      throw std::invalid_argument("cheeger_scan: member does not disconnect");
    CheegerRow row;
    row.label = member.label;
    std::vector<double> slice_area(m + 1, 0.0);
    for (const Curve& curve : member.curves) {
      row.area_mixing += curve_area(curve, AreaMetric::Averaged, sampler, 0, opts);
      curve_quadrature(curve, opts.max_dx, [&](Vec2 p, Vec2 nu, double w) {
        const std::vector<Mat2> series = sampler.transport_series(p);
        const double th = sampler.theta(p);
        for (int k = 0; k <= m; ++k)
          slice_area[k] +=
              w * th * std::sqrt(std::max(0.0, dot(nu, series[k] * nu)));
      });
    }
    for (int k = 0; k <= m; ++k)
      row.area_timeavg += trapz_weight(k, m) * slice_area[k];

    const double min_mass = std::min(member.mass1, member.mass2);
    row.ratio_mixing = row.area_mixing / min_mass;
    row.ratio_timeavg = row.area_timeavg / min_mass;
    if (row.ratio_timeavg > row.ratio_mixing * (1.0 + 1e-10))
      report.ordering_holds = false;
    report.rows.push_back(std::move(row));
  }

  report.min_ratio_mixing = report.rows.front().ratio_mixing;
  report.min_ratio_timeavg = report.rows.front().ratio_timeavg;
  for (const CheegerRow& row : report.rows) {
    report.min_ratio_mixing = std::min(report.min_ratio_mixing, row.ratio_mixing);
    report.min_ratio_timeavg =
        std::min(report.min_ratio_timeavg, row.ratio_timeavg);
  }
  report.bound_holds = report.min_ratio_mixing <= report.bound + 1e-10 &&
                       report.min_ratio_timeavg <= report.bound + 1e-10;
  return report;
}

std::vector<CheegerMember> torus_circle_family(const Mesh& mesh,
                                               const MassDensity& theta,
                                               int axis, int count) {
  if (mesh.boundary != BoundaryKind::Periodic)
    throw std::invalid_argument("torus_circle_family: needs a periodic mesh");
  std::vector<CheegerMember> family;
  family.reserve(count);
  for (int j = 0; j < count; ++j) {
    const double c = std::round(double(j) / count * mesh.n) / mesh.n;
    MaterialSet band = halftorus_band(mesh, theta, axis, c);
    CheegerMember member;
    member.label = (axis == 1 ? "y=" : "x=") + std::to_string(c);
    member.curves = std::move(band.boundary);
    member.mass1 = band.mass_inside;
    member.mass2 = band.mass_outside;
    family.push_back(std::move(member));
  }
  return family;
}

std::vector<CheegerMember> square_line_family(const Mesh& mesh,
                                              const MassDensity& theta, int axis,
                                              int count) {
  if (mesh.boundary != BoundaryKind::Dirichlet)
    throw std::invalid_argument("square_line_family: needs a Dirichlet mesh");
  std::vector<CheegerMember> family;
  for (int j = 1; j < count; ++j) {
    const double c = std::round(double(j) / count * mesh.n) / mesh.n;
    if (!(c > 0.0) || !(c < 1.0)) continue;
    std::vector<std::uint8_t> inside(mesh.triangles.size(), 0);
    for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
      const Vec2 b = mesh.barycenter(mesh.triangles[ti]);
      inside[ti] = (axis == 0 ? b.x : b.y) < c;
    }
    CheegerMember member;
    member.label = (axis == 0 ? "x=" : "y=") + std::to_string(c);
    member.curves.push_back(axis == 0 ? Curve::vertical_line(c, 1, false)
                                      : Curve::horizontal_line(c, 1, false));
    member.mass1 = set_mass(mesh, theta, inside);
    for (auto& flag : inside) flag = !flag;
    member.mass2 = set_mass(mesh, theta, inside);
    family.push_back(std::move(member));
  }
  return family;
}

Vec2 p1_gradient(const Mesh& mesh, const std::vector<double>& node_values,
                 Vec2 p) {
  const InterpStencil st = locate(mesh, p);
  // Recover the triangle orientation from the stencil weights' structure.
  const int n = mesh.n;
  double x = p.x, y = p.y;
  if (mesh.boundary == BoundaryKind::Periodic) {
    x -= std::floor(x);
    y -= std::floor(y);
  } else {
    x = std::clamp(x, 0.0, 1.0);
    y = std::clamp(y, 0.0, 1.0);
  }
  const int ix = std::min(int(x * n), n - 1);
  const int iy = std::min(int(y * n), n - 1);
  const double fx = x * n - ix;
  const double fy = y * n - iy;
  Vec2 grads[3];
  mesh.shape_gradients(fx >= fy ? 0 : 1, grads);
  Vec2 g{0.0, 0.0};
  for (int i = 0; i < 3; ++i) g = g + node_values[st.node[i]] * grads[i];
  return g;
}

}  // namespace mixlag
