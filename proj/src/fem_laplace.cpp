#include "robin/fem_laplace.hpp"

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

}  // namespace

LaplaceSolver::LaplaceSolver(const Mesh& mesh) : mesh_(mesh) {
  // Dirichlet nodes: everything on the two side segments, corners included.
  std::vector<char> dirichlet(mesh.n_nodes(), 0);
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag == BoundaryTag::GammaLeft || e.tag == BoundaryTag::GammaRight) {
      dirichlet[e.a] = 1;
      dirichlet[e.b] = 1;
    } else if (e.tag == BoundaryTag::GammaBottom) {
      bottom_edges_.push_back(e);
    } else {
      top_edges_.push_back(e);
    }
  }

  free_index_.assign(mesh.n_nodes(), -1);
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    if (!dirichlet[n]) {
      free_index_[n] = static_cast<int>(free_nodes_.size());
      free_nodes_.push_back(n);
    }
  }

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto g = tri_geometry(mesh, t);
    if (!(g.area > 0.0)) throw std::invalid_argument("LaplaceSolver: triangle with non-positive area");
    const auto& tri = mesh.triangles[t];
    for (int i = 0; i < 3; ++i) {
      const int ri = free_index_[tri[i]];
      if (ri < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int rj = free_index_[tri[j]];
        if (rj < 0) continue;
        const double kij = g.area * (g.grad[i][0] * g.grad[j][0] + g.grad[i][1] * g.grad[j][1]);
        volume_triplets_.emplace_back(ri, rj, kij);
      }
    }
  }
}

ScalarField LaplaceSolver::solve(const LaplaceProblem& p) {
  if (!p.beta) throw std::invalid_argument("solve_laplace: beta is required");
  const int nfree = static_cast<int>(free_nodes_.size());
  auto triplets = volume_triplets_;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nfree);

  // Robin term on the bottom edge, 2-point Gauss
  for (const auto& e : bottom_edges_) {
    const auto& pa = mesh_.nodes[e.a];
    const auto& pb = mesh_.nodes[e.b];
    const double len = std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
    const int ra = free_index_[e.a];
    const int rb = free_index_[e.b];
    double m[2][2] = {{0, 0}, {0, 0}};
    double load[2] = {0, 0};
    for (const auto& q : quad::edge2) {
      const double x = pa[0] + q.t * (pb[0] - pa[0]);
      const double b = p.beta(x);
      if (!(b > 0.0)) throw std::invalid_argument("solve_laplace: beta must be positive on the bottom edge");
      const double phi[2] = {1.0 - q.t, q.t};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          m[i][j] += len * q.w * b * phi[i] * phi[j];
      if (p.robin_rhs) {
        const double g = p.robin_rhs(x);
        for (int i = 0; i < 2; ++i) load[i] += len * q.w * g * phi[i];
      }
    }
    const int r[2] = {ra, rb};
    for (int i = 0; i < 2; ++i) {
      if (r[i] < 0) continue;
      rhs[r[i]] += load[i];
      for (int j = 0; j < 2; ++j)
        if (r[j] >= 0) triplets.emplace_back(r[i], r[j], m[i][j]);
    }
  }

  // Flux data on the top edge
  for (const auto& e : top_edges_) {
    const auto& pa = mesh_.nodes[e.a];
    const auto& pb = mesh_.nodes[e.b];
    const double len = std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
    const int r[2] = {free_index_[e.a], free_index_[e.b]};
    for (const auto& q : quad::edge2) {
      const double x = pa[0] + q.t * (pb[0] - pa[0]);
      const double h = p.neumann_top ? p.neumann_top(x) : 0.0;
      const double phi[2] = {1.0 - q.t, q.t};
      for (int i = 0; i < 2; ++i)
        if (r[i] >= 0) rhs[r[i]] += len * q.w * h * phi[i];
    }
  }

  if (p.volume_source) {
    for (int t = 0; t < mesh_.n_triangles(); ++t) {
      const auto g = tri_geometry(mesh_, t);
      const auto& tri = mesh_.triangles[t];
      for (const auto& q : quad::tri7) {
        const double l[3] = {q.l0, q.l1, q.l2};
        double x = 0, y = 0;
        for (int i = 0; i < 3; ++i) {
          x += l[i] * mesh_.nodes[tri[i]][0];
          y += l[i] * mesh_.nodes[tri[i]][1];
        }
        const double f = p.volume_source(x, y);
        for (int i = 0; i < 3; ++i) {
          const int ri = free_index_[tri[i]];
          if (ri >= 0) rhs[ri] += g.area * q.w * f * l[i];
        }
      }
    }
  }

  if (p.stiffness_perturbation != 0.0 && nfree > 0)
    triplets.emplace_back(0, 0, p.stiffness_perturbation);

  Eigen::SparseMatrix<double> A(nfree, nfree);
  A.setFromTriplets(triplets.begin(), triplets.end());

  if (!pattern_ready_) {
    ldlt_.analyzePattern(A);
    pattern_ready_ = true;
  }
  ldlt_.factorize(A);
  if (ldlt_.info() != Eigen::Success)
    throw std::runtime_error("solve_laplace: factorization failed (singular system?)");
  const Eigen::VectorXd x = ldlt_.solve(rhs);

  const double bnorm = rhs.norm();
  last_rel_residual_ = bnorm > 0 ? (A * x - rhs).norm() / bnorm : (A * x).norm();
  if (!std::isfinite(last_rel_residual_) || last_rel_residual_ > 1e-10)
    throw std::runtime_error("solve_laplace: linear solve did not converge");

  ScalarField field;
  field.mesh = &mesh_;
  field.values.assign(mesh_.n_nodes(), 0.0);
  for (int r = 0; r < nfree; ++r) field.values[free_nodes_[r]] = x[r];
  return field;
}

ScalarField solve_laplace(const Mesh& mesh, const LaplaceProblem& p) {
  LaplaceSolver solver(mesh);
  return solver.solve(p);
}

std::vector<double> trace_on_gamma(const ScalarField& field, const std::vector<double>& points) {
  const Mesh& mesh = *field.mesh;
  const auto top = boundary_nodes(mesh, BoundaryTag::GammaTop);
  std::vector<double> xs(top.size());
  for (std::size_t i = 0; i < top.size(); ++i) xs[i] = mesh.nodes[top[i]][0];

  std::vector<double> out;
  out.reserve(points.size());
  for (double p : points) {
    if (p < 0.0 || p > mesh.Lx)
      throw std::invalid_argument("trace_on_gamma: point outside [0, Lx]");
    auto it = std::upper_bound(xs.begin(), xs.end(), p);
    std::size_t k = (it == xs.begin()) ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    if (k >= xs.size() - 1) k = xs.size() - 2;
    const double t = (p - xs[k]) / (xs[k + 1] - xs[k]);
    out.push_back((1.0 - t) * field.values[top[k]] + t * field.values[top[k + 1]]);
  }
  return out;
}

double eval_at(const ScalarField& field, double x, double y) {
  double l[3];
  const int t = detail::locate_triangle(*field.mesh, x, y, l);
  const auto& tri = field.mesh->triangles[t];
  return l[0] * field.values[tri[0]] + l[1] * field.values[tri[1]] + l[2] * field.values[tri[2]];
}

std::array<double, 2> eval_grad_at(const ScalarField& field, double x, double y) {
  double l[3];
  const int t = detail::locate_triangle(*field.mesh, x, y, l);
  const auto g = tri_geometry(*field.mesh, t);
  const auto& tri = field.mesh->triangles[t];
  std::array<double, 2> grad{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    grad[0] += field.values[tri[i]] * g.grad[i][0];
    grad[1] += field.values[tri[i]] * g.grad[i][1];
  }
  return grad;
}

}  // namespace robin::fem
