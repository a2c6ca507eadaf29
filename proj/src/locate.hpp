#pragma once

#include <algorithm>
#include <stdexcept>

#include "robin/mesh.hpp"

namespace robin::fem::detail {

// Locate the triangle containing (x,y); fills barycentric coordinates l.
// Fast path uses the structured cell layout; a linear scan covers meshes
// with a different triangle ordering (e.g. mirrored test meshes).
inline int locate_triangle(const Mesh& mesh, double x, double y, double l[3]) {
  auto bary = [&](int t) {
    const auto& tri = mesh.triangles[t];
    const auto& p0 = mesh.nodes[tri[0]];
    const auto& p1 = mesh.nodes[tri[1]];
    const auto& p2 = mesh.nodes[tri[2]];
    const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    l[1] = ((x - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (y - p0[1])) / det;
    l[2] = ((p1[0] - p0[0]) * (y - p0[1]) - (x - p0[0]) * (p1[1] - p0[1])) / det;
    l[0] = 1.0 - l[1] - l[2];
    const double tol = -1e-12;
    return l[0] >= tol && l[1] >= tol && l[2] >= tol;
  };

  const int i = std::clamp(static_cast<int>(x / mesh.Lx * mesh.nx), 0, mesh.nx - 1);
  const int j = std::clamp(static_cast<int>(y / mesh.Ly * mesh.ny), 0, mesh.ny - 1);
  const int cell = 2 * (j * mesh.nx + i);
  if (cell + 1 < mesh.n_triangles()) {
    if (bary(cell)) return cell;
    if (bary(cell + 1)) return cell + 1;
  }
  for (int t = 0; t < mesh.n_triangles(); ++t)
    if (bary(t)) return t;
  throw std::invalid_argument("locate_triangle: point outside the mesh");
}

}  // namespace robin::fem::detail
