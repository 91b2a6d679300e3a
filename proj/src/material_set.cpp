#include "mixlag/material_set.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mixlag {

namespace {

// Nearest-image displacement on the torus; identity on the square.
Vec2 wrap_delta(Vec2 d, bool periodic) {
  if (!periodic) return d;
  if (d.x > 0.5) d.x -= 1.0;
  if (d.x < -0.5) d.x += 1.0;
  if (d.y > 0.5) d.y -= 1.0;
  if (d.y < -0.5) d.y += 1.0;
  return d;
}

struct DirectedEdge {
  int to = -1;
  bool used = false;
};

MaterialSet finish_set(const Mesh& mesh, const MassDensity& theta,
                       std::vector<std::uint8_t> inside) {
  MaterialSet set;
  set.inside = std::move(inside);
  set.mass_inside = set_mass(mesh, theta, set.inside);
  std::vector<std::uint8_t> outside(set.inside.size());
  for (std::size_t i = 0; i < outside.size(); ++i) outside[i] = !set.inside[i];
  set.mass_outside = set_mass(mesh, theta, outside);
  if (!(set.mass_inside > 0.0) || !(set.mass_outside > 0.0))
    throw std::invalid_argument("MaterialSet: set or complement has no mass");

  const bool periodic = mesh.boundary == BoundaryKind::Periodic;

  // Interface edges between inside and outside triangles, keyed by node pair.
  std::map<std::pair<int, int>, std::pair<int, int>> edge_tris;
  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    const Triangle& t = mesh.triangles[ti];
    for (int e = 0; e < 3; ++e) {
      int a = t.v[e], b = t.v[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      auto [it, fresh] = edge_tris.try_emplace({a, b}, int(ti), -1);
      if (!fresh) it->second.second = int(ti);
    }
  }

  // Direct each interface edge so the inside triangle lies to its left.
  std::multimap<int, DirectedEdge> out_edges;
  for (const auto& [key, tris] : edge_tris) {
    const auto [t1, t2] = tris;
    if (t2 < 0) continue;  // domain boundary edge
    if (set.inside[t1] == set.inside[t2]) continue;
    const int tin = set.inside[t1] ? t1 : t2;
    const Vec2 pa = mesh.node_pos[key.first];
    const Vec2 pb = pa + wrap_delta(mesh.node_pos[key.second] - pa, periodic);
    Vec2 bary = mesh.barycenter(mesh.triangles[tin]);
    bary = pa + wrap_delta(bary - pa, periodic);
    const bool inside_left = cross(pb - pa, bary - pa) > 0.0;
    if (inside_left)
      out_edges.insert({key.first, DirectedEdge{key.second}});
    else
      out_edges.insert({key.second, DirectedEdge{key.first}});
  }

  auto take_edge = [&](int from) -> int {
    auto [lo, hi] = out_edges.equal_range(from);
    for (auto it = lo; it != hi; ++it)
      if (!it->second.used) {
        it->second.used = true;
        return it->second.to;
      }
    return -1;
  };

  // Chain directed edges into loops (or open chains hitting the domain
  // boundary), unwrapping coordinates along the walk.
  for (auto& [from, edge] : out_edges) {
    if (edge.used) continue;
    edge.used = true;
    const int start = from;
    std::vector<Vec2> verts;
    Vec2 pos = mesh.node_pos[start];
    verts.push_back(pos);
    int node = edge.to;
    while (true) {
      pos = pos + wrap_delta(mesh.node_pos[node] - pos, periodic);
      verts.push_back(pos);
      if (node == start) break;
      const int next = take_edge(node);
      if (next < 0) break;  // open chain ending at the domain boundary
      node = next;
    }
    const bool closed = node == start;
    set.boundary.emplace_back(std::move(verts), closed);
  }

  return set;
}

}  // namespace

double masked_integral(const Mesh& mesh, const MassDensity& theta,
                       const std::vector<std::uint8_t>& inside,
                       const std::vector<double>& node_values) {
  const double area = mesh.tri_area();
  double sum = 0.0;
  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    if (!inside[ti]) continue;
    const Triangle& t = mesh.triangles[ti];
    const double th =
        (theta.theta[t.v[0]] + theta.theta[t.v[1]] + theta.theta[t.v[2]]) / 3.0;
    const double u =
        (node_values[t.v[0]] + node_values[t.v[1]] + node_values[t.v[2]]) / 3.0;
    sum += th * u * area;
  }
  return sum;
}

double set_mass(const Mesh& mesh, const MassDensity& theta,
                const std::vector<std::uint8_t>& inside) {
  const double area = mesh.tri_area();
  double sum = 0.0;
  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    if (!inside[ti]) continue;
    const Triangle& t = mesh.triangles[ti];
    sum += area *
           (theta.theta[t.v[0]] + theta.theta[t.v[1]] + theta.theta[t.v[2]]) / 3.0;
  }
  return sum;
}

MaterialSet halftorus_band(const Mesh& mesh, const MassDensity& theta, int axis,
                           double threshold) {
  if (mesh.boundary != BoundaryKind::Periodic)
    throw std::invalid_argument("halftorus_band: needs a periodic mesh");
  if (axis != 0 && axis != 1)
    throw std::invalid_argument("halftorus_band: axis must be 0 or 1");
  const double c = std::round(threshold * mesh.n) / mesh.n;

  std::vector<std::uint8_t> inside(mesh.triangles.size(), 0);
  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    const Vec2 b = mesh.barycenter(mesh.triangles[ti]);
    double coord = axis == 0 ? b.x : b.y;
    double rel = coord - c;
    rel -= std::floor(rel);
    inside[ti] = rel < 0.5;
  }
  return finish_set(mesh, theta, std::move(inside));
}

MaterialSet disk_set(const Mesh& mesh, const MassDensity& theta, Vec2 center,
                     double radius) {
  if (!(radius > 0.0))
    throw std::invalid_argument("disk_set: radius must be positive");
  std::vector<std::uint8_t> inside(mesh.triangles.size(), 0);
  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    const Vec2 d = mesh.barycenter(mesh.triangles[ti]) - center;
    inside[ti] = dot(d, d) < radius * radius;
  }
  return finish_set(mesh, theta, std::move(inside));
}

MaterialSet sublevel_set(const Mesh& mesh, const MassDensity& theta,
                         const std::vector<double>& node_values, double level) {
  std::vector<std::uint8_t> inside(mesh.triangles.size(), 0);
  for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
    const Triangle& t = mesh.triangles[ti];
    const double u =
        (node_values[t.v[0]] + node_values[t.v[1]] + node_values[t.v[2]]) / 3.0;
    inside[ti] = u < level;
  }
  return finish_set(mesh, theta, std::move(inside));
}

}  // namespace mixlag
