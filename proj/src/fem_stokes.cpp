#include "robin/fem_stokes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "locate.hpp"
#include "quadrature.hpp"

namespace robin::fem {

namespace {

struct TriGeom {
  double area;
  std::array<double, 2> grad[3];  // gradients of the barycentric functions
};

TriGeom tri_geometry(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const auto& p0 = mesh.nodes[tri[0]];
  const auto& p1 = mesh.nodes[tri[1]];
  const auto& p2 = mesh.nodes[tri[2]];
  const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
  TriGeom g;
  g.area = 0.5 * det;
  g.grad[0] = {(p1[1] - p2[1]) / det, (p2[0] - p1[0]) / det};
  g.grad[1] = {(p2[1] - p0[1]) / det, (p0[0] - p2[0]) / det};
  g.grad[2] = {(p0[1] - p1[1]) / det, (p1[0] - p0[0]) / det};
  return g;
}

// Quadratic basis on a triangle at barycentric point l, local dof order
// [v0, v1, v2, e01, e12, e20].
void p2_basis(const double l[3], const TriGeom& g, double phi[6], double dphi[6][2]) {
  for (int i = 0; i < 3; ++i) {
    phi[i] = l[i] * (2.0 * l[i] - 1.0);
    dphi[i][0] = (4.0 * l[i] - 1.0) * g.grad[i][0];
    dphi[i][1] = (4.0 * l[i] - 1.0) * g.grad[i][1];
  }
  const int ea[3] = {0, 1, 2}, eb[3] = {1, 2, 0};
  for (int e = 0; e < 3; ++e) {
    const int i = ea[e], j = eb[e];
    phi[3 + e] = 4.0 * l[i] * l[j];
    dphi[3 + e][0] = 4.0 * (l[i] * g.grad[j][0] + l[j] * g.grad[i][0]);
    dphi[3 + e][1] = 4.0 * (l[i] * g.grad[j][1] + l[j] * g.grad[i][1]);
  }
}

// Quadratic trace basis along an edge, parameter t in [0,1], dof order
// [endpoint a, endpoint b, midpoint].
void p2_edge_basis(double t, double n[3]) {
  n[0] = (1.0 - t) * (1.0 - 2.0 * t);
  n[1] = t * (2.0 * t - 1.0);
  n[2] = 4.0 * t * (1.0 - t);
}

}  // namespace

int P2Topology::edge_of(int a, int b) const {
  const int lo = std::min(a, b), hi = std::max(a, b);
  const auto it = edge_lookup.find(static_cast<long long>(lo) * n_vertices + hi);
  if (it == edge_lookup.end()) throw std::invalid_argument("P2Topology: unknown edge");
  return it->second;
}

std::shared_ptr<const P2Topology> build_p2_topology(const Mesh& mesh) {
  auto topo = std::make_shared<P2Topology>();
  topo->n_vertices = mesh.n_nodes();
  topo->tri_edges.resize(mesh.n_triangles());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const int pairs[3][2] = {{tri[0], tri[1]}, {tri[1], tri[2]}, {tri[2], tri[0]}};
    for (int e = 0; e < 3; ++e) {
      const int lo = std::min(pairs[e][0], pairs[e][1]);
      const int hi = std::max(pairs[e][0], pairs[e][1]);
      const long long key = static_cast<long long>(lo) * topo->n_vertices + hi;
      auto [it, inserted] = topo->edge_lookup.try_emplace(key, topo->n_edges());
      if (inserted) topo->edges.push_back({lo, hi});
      topo->tri_edges[t][e] = it->second;
    }
  }
  return topo;
}

StokesSolver::StokesSolver(const Mesh& mesh) : mesh_(mesh), topo_(build_p2_topology(mesh)) {
  n_p2_ = topo_->n_p2();
  n_dof_ = 2 * n_p2_ + mesh.n_nodes();

  for (const auto& e : mesh.boundary_edges) {
    switch (e.tag) {
      case BoundaryTag::GammaBottom: bottom_edges_.push_back(e); break;
      case BoundaryTag::GammaTop: top_edges_.push_back(e); break;
      case BoundaryTag::GammaLeft: left_edges_.push_back(e); break;
      case BoundaryTag::GammaRight: right_edges_.push_back(e); break;
    }
  }

  // Viscous block (per velocity component) and divergence coupling.
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto g = tri_geometry(mesh, t);
    if (!(g.area > 0.0)) throw std::invalid_argument("StokesSolver: triangle with non-positive area");
    const auto& tri = mesh.triangles[t];
    int dof[6];
    for (int i = 0; i < 3; ++i) dof[i] = tri[i];
    for (int e = 0; e < 3; ++e) dof[3 + e] = topo_->n_vertices + topo_->tri_edges[t][e];

    double a_loc[6][6] = {};
    double bx_loc[3][6] = {};
    double by_loc[3][6] = {};
    for (const auto& q : quad::tri7) {
      const double l[3] = {q.l0, q.l1, q.l2};
      double phi[6], dphi[6][2];
      p2_basis(l, g, phi, dphi);
      const double w = g.area * q.w;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          a_loc[i][j] += w * (dphi[i][0] * dphi[j][0] + dphi[i][1] * dphi[j][1]);
      for (int m = 0; m < 3; ++m)
        for (int j = 0; j < 6; ++j) {
          bx_loc[m][j] -= w * l[m] * dphi[j][0];
          by_loc[m][j] -= w * l[m] * dphi[j][1];
        }
    }

    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        volume_triplets_.emplace_back(dof[i], dof[j], a_loc[i][j]);
        volume_triplets_.emplace_back(n_p2_ + dof[i], n_p2_ + dof[j], a_loc[i][j]);
      }
    for (int m = 0; m < 3; ++m) {
      const int pm = 2 * n_p2_ + tri[m];
      for (int j = 0; j < 6; ++j) {
        volume_triplets_.emplace_back(pm, dof[j], bx_loc[m][j]);
        volume_triplets_.emplace_back(dof[j], pm, bx_loc[m][j]);
        volume_triplets_.emplace_back(pm, n_p2_ + dof[j], by_loc[m][j]);
        volume_triplets_.emplace_back(n_p2_ + dof[j], pm, by_loc[m][j]);
      }
    }
  }

  rhs_ = Eigen::VectorXd::Zero(n_dof_);
}

void StokesSolver::set_fixed_data(const StokesProblem& p) {
  rhs_ = Eigen::VectorXd::Zero(n_dof_);

  if (p.body_force) {
    for (int t = 0; t < mesh_.n_triangles(); ++t) {
      const auto g = tri_geometry(mesh_, t);
      const auto& tri = mesh_.triangles[t];
      int dof[6];
      for (int i = 0; i < 3; ++i) dof[i] = tri[i];
      for (int e = 0; e < 3; ++e) dof[3 + e] = topo_->n_vertices + topo_->tri_edges[t][e];
      for (const auto& q : quad::tri7) {
        const double l[3] = {q.l0, q.l1, q.l2};
        double phi[6], dphi[6][2];
        p2_basis(l, g, phi, dphi);
        double x = 0, y = 0;
        for (int i = 0; i < 3; ++i) {
          x += l[i] * mesh_.nodes[tri[i]][0];
          y += l[i] * mesh_.nodes[tri[i]][1];
        }
        const Vec2 f = p.body_force(x, y);
        const double w = g.area * q.w;
        for (int i = 0; i < 6; ++i) {
          rhs_[dof[i]] += w * f[0] * phi[i];
          rhs_[n_p2_ + dof[i]] += w * f[1] * phi[i];
        }
      }
    }
  }

  auto add_edge_load = [&](const BoundaryEdge& e, const BoundaryVecFn& fn, bool arg_is_y) {
    if (!fn) return;
    const auto& pa = mesh_.nodes[e.a];
    const auto& pb = mesh_.nodes[e.b];
    const double len = std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
    const int dof[3] = {e.a, e.b, topo_->n_vertices + topo_->edge_of(e.a, e.b)};
    for (const auto& q : quad::edge3) {
      const double x = pa[0] + q.t * (pb[0] - pa[0]);
      const double y = pa[1] + q.t * (pb[1] - pa[1]);
      const Vec2 h = fn(arg_is_y ? y : x);
      double n[3];
      p2_edge_basis(q.t, n);
      for (int i = 0; i < 3; ++i) {
        rhs_[dof[i]] += len * q.w * h[0] * n[i];
        rhs_[n_p2_ + dof[i]] += len * q.w * h[1] * n[i];
      }
    }
  };

  for (const auto& e : top_edges_) add_edge_load(e, p.traction_top, false);
  for (const auto& e : bottom_edges_) add_edge_load(e, p.robin_rhs, false);
  for (const auto& e : left_edges_) add_edge_load(e, p.traction_left, true);
  for (const auto& e : right_edges_) add_edge_load(e, p.traction_right, true);
}

std::pair<VectorField, PressureField> StokesSolver::solve_with_beta(const BoundaryScalarFn& beta) {
  if (!beta) throw std::invalid_argument("solve_stokes: beta is required");
  auto triplets = volume_triplets_;

  for (const auto& e : bottom_edges_) {
    const auto& pa = mesh_.nodes[e.a];
    const auto& pb = mesh_.nodes[e.b];
    const double len = std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
    const int dof[3] = {e.a, e.b, topo_->n_vertices + topo_->edge_of(e.a, e.b)};
    double m[3][3] = {};
    for (const auto& q : quad::edge3) {
      const double x = pa[0] + q.t * (pb[0] - pa[0]);
      const double b = beta(x);
      if (!(b > 0.0)) throw std::invalid_argument("solve_stokes: beta must be positive on the bottom edge");
      double n[3];
      p2_edge_basis(q.t, n);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] += len * q.w * b * n[i] * n[j];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        triplets.emplace_back(dof[i], dof[j], m[i][j]);
        triplets.emplace_back(n_p2_ + dof[i], n_p2_ + dof[j], m[i][j]);
      }
  }

  Eigen::SparseMatrix<double> K(n_dof_, n_dof_);
  K.setFromTriplets(triplets.begin(), triplets.end());

  if (!pattern_ready_) {
    lu_.analyzePattern(K);
    pattern_ready_ = true;
  }
  lu_.factorize(K);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error("solve_stokes: factorization of the saddle-point system failed");
  const Eigen::VectorXd z = lu_.solve(rhs_);
  if (!z.allFinite()) throw std::runtime_error("solve_stokes: solution is not finite");

  const Eigen::VectorXd r = K * z - rhs_;
  const double bnorm = rhs_.norm();
  last_rel_residual_ = bnorm > 0 ? r.norm() / bnorm : r.norm();
  last_div_residual_ = r.segment(2 * n_p2_, mesh_.n_nodes()).norm();
  double robin_r2 = 0.0;
  for (const auto& e : bottom_edges_) {
    const int dof[3] = {e.a, e.b, topo_->n_vertices + topo_->edge_of(e.a, e.b)};
    for (int i = 0; i < 3; ++i)
      robin_r2 += r[dof[i]] * r[dof[i]] + r[n_p2_ + dof[i]] * r[n_p2_ + dof[i]];
  }
  last_robin_residual_ = std::sqrt(robin_r2);
  if (!std::isfinite(last_rel_residual_) || last_rel_residual_ > 1e-8)
    throw std::runtime_error("solve_stokes: linear solve did not converge");

  VectorField u;
  u.mesh = &mesh_;
  u.topo = topo_;
  u.ux.assign(z.data(), z.data() + n_p2_);
  u.uy.assign(z.data() + n_p2_, z.data() + 2 * n_p2_);
  PressureField pr;
  pr.mesh = &mesh_;
  pr.values.assign(z.data() + 2 * n_p2_, z.data() + n_dof_);
  return {std::move(u), std::move(pr)};
}

std::pair<VectorField, PressureField> StokesSolver::solve(const StokesProblem& p) {
  set_fixed_data(p);
  return solve_with_beta(p.beta);
}

std::pair<VectorField, PressureField> solve_stokes(const Mesh& mesh, const StokesProblem& p) {
  StokesSolver solver(mesh);
  return solver.solve(p);
}

std::vector<Vec2> velocity_trace_on_gamma(const VectorField& field, const std::vector<double>& points) {
  const Mesh& mesh = *field.mesh;
  const auto& topo = *field.topo;

  struct TopEdge {
    double xa, xb;
    int dof[3];
  };
  std::vector<TopEdge> tops;
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag != BoundaryTag::GammaTop) continue;
    TopEdge te;
    te.xa = mesh.nodes[e.a][0];
    te.xb = mesh.nodes[e.b][0];
    te.dof[0] = e.a;
    te.dof[1] = e.b;
    te.dof[2] = topo.n_vertices + topo.edge_of(e.a, e.b);
    if (te.xa > te.xb) {
      std::swap(te.xa, te.xb);
      std::swap(te.dof[0], te.dof[1]);
    }
    tops.push_back(te);
  }
  std::sort(tops.begin(), tops.end(), [](const TopEdge& l, const TopEdge& r) { return l.xa < r.xa; });

  std::vector<Vec2> out;
  out.reserve(points.size());
  for (double p : points) {
    if (p < 0.0 || p > mesh.Lx)
      throw std::invalid_argument("velocity_trace_on_gamma: point outside [0, Lx]");
    auto it = std::upper_bound(tops.begin(), tops.end(), p,
                               [](double v, const TopEdge& e) { return v < e.xa; });
    std::size_t k = (it == tops.begin()) ? 0 : static_cast<std::size_t>(it - tops.begin()) - 1;
    if (k >= tops.size()) k = tops.size() - 1;
    const auto& te = tops[k];
    const double t = (p - te.xa) / (te.xb - te.xa);
    double n[3];
    p2_edge_basis(t, n);
    Vec2 v{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      v[0] += n[i] * field.ux[te.dof[i]];
      v[1] += n[i] * field.uy[te.dof[i]];
    }
    out.push_back(v);
  }
  return out;
}

Vec2 eval_velocity_at(const VectorField& field, double x, double y) {
  double l[3];
  const int t = detail::locate_triangle(*field.mesh, x, y, l);
  const auto g = tri_geometry(*field.mesh, t);
  double phi[6], dphi[6][2];
  p2_basis(l, g, phi, dphi);
  const auto& tri = field.mesh->triangles[t];
  int dof[6];
  for (int i = 0; i < 3; ++i) dof[i] = tri[i];
  for (int e = 0; e < 3; ++e) dof[3 + e] = field.topo->n_vertices + field.topo->tri_edges[t][e];
  Vec2 v{0.0, 0.0};
  for (int i = 0; i < 6; ++i) {
    v[0] += phi[i] * field.ux[dof[i]];
    v[1] += phi[i] * field.uy[dof[i]];
  }
  return v;
}

double eval_pressure_at(const PressureField& field, double x, double y) {
  double l[3];
  const int t = detail::locate_triangle(*field.mesh, x, y, l);
  const auto& tri = field.mesh->triangles[t];
  return l[0] * field.values[tri[0]] + l[1] * field.values[tri[1]] + l[2] * field.values[tri[2]];
}

}  // namespace robin::fem
