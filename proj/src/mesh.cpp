#include "robin/mesh.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace robin {

Mesh build_rect_mesh(int nx, int ny, double Lx, double Ly) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("build_rect_mesh: element counts must be >= 1");
  if (!(Lx > 0.0) || !(Ly > 0.0))
    throw std::invalid_argument("build_rect_mesh: side lengths must be positive");

  Mesh m;
  m.nx = nx;
  m.ny = ny;
  m.Lx = Lx;
  m.Ly = Ly;

  m.nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      m.nodes.push_back({Lx * i / nx, Ly * j / ny});

  m.triangles.reserve(2u * nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int a = m.node_index(i, j);
      const int b = m.node_index(i + 1, j);
      const int c = m.node_index(i + 1, j + 1);
      const int d = m.node_index(i, j + 1);
      m.triangles.push_back({a, b, c});
      m.triangles.push_back({a, c, d});
    }
  }

  for (int i = 0; i < nx; ++i)
    m.boundary_edges.push_back({m.node_index(i, 0), m.node_index(i + 1, 0), BoundaryTag::GammaBottom});
  for (int i = 0; i < nx; ++i)
    m.boundary_edges.push_back({m.node_index(i, ny), m.node_index(i + 1, ny), BoundaryTag::GammaTop});
  for (int j = 0; j < ny; ++j)
    m.boundary_edges.push_back({m.node_index(0, j), m.node_index(0, j + 1), BoundaryTag::GammaLeft});
  for (int j = 0; j < ny; ++j)
    m.boundary_edges.push_back({m.node_index(nx, j), m.node_index(nx, j + 1), BoundaryTag::GammaRight});

  return m;
}

std::vector<int> boundary_nodes(const Mesh& mesh, BoundaryTag tag) {
  std::vector<int> nodes;
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag != tag) continue;
    nodes.push_back(e.a);
    nodes.push_back(e.b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  const bool horizontal = (tag == BoundaryTag::GammaTop || tag == BoundaryTag::GammaBottom);
  std::sort(nodes.begin(), nodes.end(), [&](int p, int q) {
    const auto& a = mesh.nodes[p];
    const auto& b = mesh.nodes[q];
    return horizontal ? a[0] < b[0] : a[1] < b[1];
  });
  return nodes;
}

double triangle_area(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const auto& p0 = mesh.nodes[tri[0]];
  const auto& p1 = mesh.nodes[tri[1]];
  const auto& p2 = mesh.nodes[tri[2]];
  return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
}

void write_mesh_listing(const Mesh& mesh, std::ostream& os) {
  os << "nodes " << mesh.n_nodes() << "\n";
  for (int i = 0; i < mesh.n_nodes(); ++i)
    os << i << " " << mesh.nodes[i][0] << " " << mesh.nodes[i][1] << "\n";
  os << "triangles " << mesh.n_triangles() << "\n";
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    os << t << " " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  }
  os << "boundary_edges " << mesh.boundary_edges.size() << "\n";
  for (const auto& e : mesh.boundary_edges)
    os << e.a << " " << e.b << " " << static_cast<int>(e.tag) << "\n";
}

}  // namespace robin
