#pragma once

#include <array>
#include <iosfwd>
#include <vector>

namespace robin {

enum class BoundaryTag { GammaTop, GammaBottom, GammaLeft, GammaRight };

struct BoundaryEdge {
  int a = -1, b = -1;  // node indices, ordered along the boundary coordinate
  BoundaryTag tag = BoundaryTag::GammaBottom;
};

// Structured triangulation of the rectangle (0,Lx) x (0,Ly). Nodes are
// numbered row-major (index = j*(nx+1) + i), and each grid cell is split
// along its lower-left -> upper-right diagonal into two counter-clockwise
// triangles. Immutable after construction.
struct Mesh {
  int nx = 0, ny = 0;
  double Lx = 0.0, Ly = 0.0;
  std::vector<std::array<double, 2>> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;

  int node_index(int i, int j) const { return j * (nx + 1) + i; }
  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
};

Mesh build_rect_mesh(int nx, int ny, double Lx, double Ly);

// Nodes on the tagged boundary segment, sorted by arc-length coordinate
// (x for top/bottom, y for left/right). Corner nodes are included.
std::vector<int> boundary_nodes(const Mesh& mesh, BoundaryTag tag);

double triangle_area(const Mesh& mesh, int t);

// Plain-text node/element listing, for debugging only.
void write_mesh_listing(const Mesh& mesh, std::ostream& os);

}  // namespace robin
