// Transport functionals: mass deficits of material sets, their leading-order
// volume and boundary forms, surface areas in the reference / time-t / mixing
// geometries, area-average identities and inequalities, and dynamic Cheeger
// ratios.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mixlag/curve.hpp"
#include "mixlag/evolution.hpp"
#include "mixlag/material_set.hpp"
#include "mixlag/scenario.hpp"

namespace mixlag {

// Pointwise access to the transport tensors C_t = g_t^{-1} g_ref and their
// time average, plus the mass density; positions are taken modulo the torus.
class GeometrySampler {
 public:
  virtual ~GeometrySampler() = default;
  virtual Mat2 transport_avg(Vec2 p) const = 0;
  // Values on the shared time grid t_k = k/slice_count, k = 0..slice_count.
  virtual std::vector<Mat2> transport_series(Vec2 p) const = 0;
  virtual double theta(Vec2 p) const = 0;
  virtual int intervals() const = 0;  // time intervals of the series
};

// P1 interpolation of the per-node metric data held by a scenario.
class FieldSampler : public GeometrySampler {
 public:
  explicit FieldSampler(const Scenario& scenario,
                        SymTensor g_ref = SymTensor::identity());
  Mat2 transport_avg(Vec2 p) const override;
  std::vector<Mat2> transport_series(Vec2 p) const override;
  double theta(Vec2 p) const override;
  int intervals() const override;

 private:
  const Scenario* scenario_;
  SymTensor g_ref_;
};

// Mesh-independent evaluation by integrating the flow map at the sample
// point; the time average uses the same trapezoid rule on the same grid.
class AnalyticSampler : public GeometrySampler {
 public:
  AnalyticSampler(const VelocityField& field, const AmbientMetric& ambient,
                  int n_intervals, int rk4_steps = kDefaultRk4Steps,
                  SymTensor g_ref = SymTensor::identity());
  Mat2 transport_avg(Vec2 p) const override;
  std::vector<Mat2> transport_series(Vec2 p) const override;
  double theta(Vec2 p) const override;
  int intervals() const override;

 private:
  const VelocityField* field_;
  AmbientMetric ambient_;
  int n_intervals_;
  int rk4_steps_;
  SymTensor g_ref_;
};

// ---- set functionals -------------------------------------------------------

// Mass of u lost from the set over [0,1]: integral of (u0 - u_eps(1)) over S.
double transport_deficit(const Scenario& scenario, const MaterialSet& set,
                         const Vector& u0_dof, double eps,
                         const EvolutionOpts& opts = {});

// Leading-order coefficient, discrete volume route: the masked integral of
// M^{-1} K_bar u0 (which discretizes the negated averaged generator).
double leading_order_transport(const Scenario& scenario, const MaterialSet& set,
                               const Vector& u0_dof);

// Analytic volume route for closed-form scenarios: integrates
// -avg_generator_u0 over an axis band or a disk with Gauss quadrature.
struct AnalyticBand {
  int axis = 1;
  double lo = 0.0;
  double width = 0.5;
};
double band_integral(const AnalyticBand& band,
                     const std::function<double(Vec2)>& f, int gauss_points = 48);
double leading_order_transport_analytic(const AnalyticBand& band,
                                        const std::function<double(Vec2)>& avg_generator_u0,
                                        int gauss_points = 48);

// ---- curve functionals -----------------------------------------------------

struct CurveQuadOpts {
  double max_dx = 1.0 / 256.0;  // target sub-segment length
};

// Flux of the initial gradient through an interface against a transport
// tensor: integral over the curve of du0(C nu) theta with Euclidean
// arclength.  The curve must be closed when it bounds a set.
double boundary_flux(const Curve& curve,
                     const std::function<Vec2(Vec2)>& grad_u0,
                     const std::function<Mat2(Vec2)>& transport,
                     const std::function<double(Vec2)>& theta,
                     const CurveQuadOpts& opts = {}, bool require_closed = true);

// Flux against each time slice C_{t_k}; its trapezoid average equals the flux
// against the averaged tensor by linearity.
std::vector<double> boundary_flux_series(const Curve& curve,
                                         const std::function<Vec2(Vec2)>& grad_u0,
                                         const GeometrySampler& sampler,
                                         const CurveQuadOpts& opts = {},
                                         bool require_closed = true);

enum class AreaMetric { Reference, TimeSlice, Averaged };

// Surface area of a curve with the mass-induced density: theta (Reference),
// theta sqrt(g(nu, C_t nu)) (TimeSlice k), theta sqrt(g(nu, Cbar nu))
// (Averaged).
double curve_area(const Curve& curve, AreaMetric metric,
                  const GeometrySampler& sampler, int slice = 0,
                  const CurveQuadOpts& opts = {});

struct AreaReport {
  double mixing = 0.0;       // area with the averaged density
  double l2_average = 0.0;   // sqrt of the time average of squared areas
  double l1_average = 0.0;   // time average of areas
  double identity_error = 0.0;  // max pointwise L2-average identity defect
  bool chain_holds = false;  // mixing >= l2 >= l1 with slack 1e-10
};
AreaReport area_inequalities(const Curve& curve, const GeometrySampler& sampler,
                             const CurveQuadOpts& opts = {});

// Normalized leading-order transport of a uniformly stressed interface.
enum class TransportNorm { ReferenceGradient, MixingGradient };
double normalized_transport(const Curve& curve, const GeometrySampler& sampler,
                            TransportNorm norm, const CurveQuadOpts& opts = {});

// ---- Cheeger scan ----------------------------------------------------------

struct CheegerMember {
  std::string label;
  std::vector<Curve> curves;  // dividing interface (possibly several loops)
  double mass1 = 0.0, mass2 = 0.0;
};

struct CheegerRow {
  std::string label;
  double area_mixing = 0.0, area_timeavg = 0.0;
  double ratio_mixing = 0.0, ratio_timeavg = 0.0;
};

struct CheegerReport {
  std::vector<CheegerRow> rows;
  double min_ratio_mixing = 0.0;
  double min_ratio_timeavg = 0.0;
  double bound = 0.0;  // 2 sqrt(-lambda2)
  bool bound_holds = false;
  bool ordering_holds = false;  // time-averaged ratio <= mixing ratio per row
};

CheegerReport cheeger_scan(const GeometrySampler& sampler,
                           const std::vector<CheegerMember>& family,
                           double lambda2, const CurveQuadOpts& opts = {});

// Families of parallel dividing circles (torus) or lines (square) on a
// uniform parameter grid, with masses from the triangle masks.
std::vector<CheegerMember> torus_circle_family(const Mesh& mesh,
                                               const MassDensity& theta,
                                               int axis, int count);
std::vector<CheegerMember> square_line_family(const Mesh& mesh,
                                              const MassDensity& theta, int axis,
                                              int count);

// Piecewise-constant P1 gradient of a nodal function, for flux integrals of
// discrete data.
Vec2 p1_gradient(const Mesh& mesh, const std::vector<double>& node_values,
                 Vec2 p);

}  // namespace mixlag
