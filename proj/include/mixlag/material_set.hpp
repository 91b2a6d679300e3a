// Material sets as triangle masks with oriented boundary interfaces.
#pragma once

#include <cstdint>
#include <vector>

#include "mixlag/curve.hpp"
#include "mixlag/mesh.hpp"
#include "mixlag/tensor_field.hpp"

namespace mixlag {

struct MaterialSet {
  std::vector<std::uint8_t> inside;  // per triangle
  double mass_inside = 0.0;
  double mass_outside = 0.0;
  // Oriented interface loops between inside and outside triangles; normals
  // point out of the set.  Vertices are unwrapped along each loop.
  std::vector<Curve> boundary;
};

// Band { p : threshold <= p[axis] < threshold + 1/2 } on the torus
// (axis 0 = x, 1 = y); threshold is snapped to the mesh grid.
MaterialSet halftorus_band(const Mesh& mesh, const MassDensity& theta, int axis,
                           double threshold);

// Disk of given center and radius; triangles are classified by barycenter and
// the boundary is the mesh-edge interface (a staircase approximation).
MaterialSet disk_set(const Mesh& mesh, const MassDensity& theta, Vec2 center,
                     double radius);

// Sub-level set { u < level } of a nodal function (classified per triangle by
// its vertex mean).
MaterialSet sublevel_set(const Mesh& mesh, const MassDensity& theta,
                         const std::vector<double>& node_values, double level);

// P1-exact integral of a nodal function over the masked triangles.
double masked_integral(const Mesh& mesh, const MassDensity& theta,
                       const std::vector<std::uint8_t>& inside,
                       const std::vector<double>& node_values);

double set_mass(const Mesh& mesh, const MassDensity& theta,
                const std::vector<std::uint8_t>& inside);

}  // namespace mixlag
