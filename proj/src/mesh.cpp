#include "mixlag/mesh.hpp"

#include <stdexcept>

namespace mixlag {

void Mesh::shape_gradients(std::uint8_t orient, Vec2 grad[3]) const {
  const double s = double(n);  // 1/h
  if (orient == 0) {
    // vertices (0,0), (h,0), (h,h):  phi = 1 - x/h, (x-y)/h, y/h
    grad[0] = {-s, 0.0};
    grad[1] = {s, -s};
    grad[2] = {0.0, s};
  } else {
    // vertices (0,0), (h,h), (0,h):  phi = 1 - y/h, x/h, (y-x)/h
    grad[0] = {0.0, -s};
    grad[1] = {s, 0.0};
    grad[2] = {-s, s};
  }
}

Mesh build_mesh(int n, BoundaryKind boundary) {
  if (n < 4) throw std::invalid_argument("build_mesh: n must be >= 4");

  Mesh mesh;
  mesh.n = n;
  mesh.boundary = boundary;
  const double h = 1.0 / n;

  if (boundary == BoundaryKind::Periodic) {
    mesh.node_count = n * n;
    mesh.node_pos.resize(mesh.node_count);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        mesh.node_pos[i + j * n] = {i * h, j * h};
    mesh.dof_of_node.resize(mesh.node_count);
    mesh.node_of_dof.resize(mesh.node_count);
    for (int k = 0; k < mesh.node_count; ++k) {
      mesh.dof_of_node[k] = k;
      mesh.node_of_dof[k] = k;
    }
    mesh.dof_count = mesh.node_count;
  } else {
    mesh.node_count = (n + 1) * (n + 1);
    mesh.node_pos.resize(mesh.node_count);
    mesh.dof_of_node.assign(mesh.node_count, -1);
    int dof = 0;
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        const int id = i + j * (n + 1);
        mesh.node_pos[id] = {i * h, j * h};
        const bool interior = i > 0 && i < n && j > 0 && j < n;
        if (interior) {
          mesh.dof_of_node[id] = dof;
          mesh.node_of_dof.push_back(id);
          ++dof;
        }
      }
    mesh.dof_count = dof;
  }

  mesh.triangles.reserve(2 * n * n);
  for (int cy = 0; cy < n; ++cy)
    for (int cx = 0; cx < n; ++cx) {
      Triangle lo;
      lo.v[0] = mesh.node_id(cx, cy);
      lo.v[1] = mesh.node_id(cx + 1, cy);
      lo.v[2] = mesh.node_id(cx + 1, cy + 1);
      lo.orient = 0;
      lo.cell_x = cx;
      lo.cell_y = cy;
      mesh.triangles.push_back(lo);

      Triangle up;
      up.v[0] = mesh.node_id(cx, cy);
      up.v[1] = mesh.node_id(cx + 1, cy + 1);
      up.v[2] = mesh.node_id(cx, cy + 1);
      up.orient = 1;
      up.cell_x = cx;
      up.cell_y = cy;
      mesh.triangles.push_back(up);
    }

  return mesh;
}

}  // namespace mixlag
