// Uniform P1 triangulation of the unit square, with either a homogeneous
// Dirichlet boundary or periodic identification (flat 2-torus).  Each grid
// cell is split along the (1,1) diagonal, so all triangles are congruent
// right triangles of area 1/(2 n^2).
#pragma once

#include <cstdint>
#include <vector>

#include "mixlag/vec2.hpp"

namespace mixlag {

enum class BoundaryKind { Dirichlet, Periodic };

struct Triangle {
  int v[3];          // node ids, wrapped on the torus
  std::uint8_t orient;  // 0: lower (v at SW,SE,NE), 1: upper (SW,NE,NW)
  int cell_x, cell_y;
};

class Mesh {
 public:
  int n = 0;
  BoundaryKind boundary = BoundaryKind::Periodic;
  int node_count = 0;
  int dof_count = 0;
  std::vector<Vec2> node_pos;      // representative positions in [0,1]^2
  std::vector<Triangle> triangles;
  std::vector<int> dof_of_node;    // -1 for eliminated Dirichlet boundary nodes
  std::vector<int> node_of_dof;

  double h() const { return 1.0 / n; }
  double tri_area() const { return 0.5 / (double(n) * double(n)); }

  int node_id(int i, int j) const {
    if (boundary == BoundaryKind::Periodic) {
      i %= n; if (i < 0) i += n;
      j %= n; if (j < 0) j += n;
      return i + j * n;
    }
    return i + j * (n + 1);
  }

  // Barycenter of a triangle in unwrapped cell coordinates.
  Vec2 barycenter(const Triangle& t) const {
    const double hh = h();
    if (t.orient == 0)
      return {(t.cell_x + 2.0 / 3.0) * hh, (t.cell_y + 1.0 / 3.0) * hh};
    return {(t.cell_x + 1.0 / 3.0) * hh, (t.cell_y + 2.0 / 3.0) * hh};
  }

  // P1 shape-function gradients; identical for all triangles of the same
  // orientation on this mesh.
  void shape_gradients(std::uint8_t orient, Vec2 grad[3]) const;

  bool is_boundary_node(int node) const { return dof_of_node[node] < 0; }
};

// n >= 4 subdivisions per axis.  Dirichlet dof count is (n-1)^2, periodic n^2.
Mesh build_mesh(int n, BoundaryKind boundary);

}  // namespace mixlag
