#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <array>
#include <functional>
#include <vector>

#include "robin/mesh.hpp"

namespace robin::fem {

using BoundaryFn = std::function<double(double)>;
using VolumeFn = std::function<double(double, double)>;

// P1 nodal field on a triangulation.
struct ScalarField {
  const Mesh* mesh = nullptr;
  std::vector<double> values;  // one per node
};

// Data for the mixed problem: Laplace in the interior, flux h on the top
// edge, homogeneous Dirichlet on the two sides, Robin coefficient beta on
// the bottom edge. volume_source and robin_rhs extend the right-hand side
// for verification with manufactured solutions; they default to zero.
struct LaplaceProblem {
  BoundaryFn beta;          // beta(x) > 0 on the bottom edge
  BoundaryFn neumann_top;   // h(x) on the top edge
  VolumeFn volume_source;   // optional f(x,y)
  BoundaryFn robin_rhs;     // optional inhomogeneous Robin data on the bottom edge
  double stiffness_perturbation = 0.0;  // fault-injection hook for the verification suite
};

// Assembles and solves the P1 Galerkin system. The volume stiffness and the
// sparsity pattern are built once per mesh, so repeated solves with varying
// beta (the MCMC hot path) only reassemble the boundary contributions.
class LaplaceSolver {
public:
  explicit LaplaceSolver(const Mesh& mesh);

  ScalarField solve(const LaplaceProblem& p);

  double last_rel_residual() const { return last_rel_residual_; }

private:
  const Mesh& mesh_;
  std::vector<int> free_index_;  // node -> reduced index, -1 on the Dirichlet boundary
  std::vector<int> free_nodes_;  // reduced index -> node
  std::vector<Eigen::Triplet<double>> volume_triplets_;
  std::vector<BoundaryEdge> bottom_edges_, top_edges_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  bool pattern_ready_ = false;
  double last_rel_residual_ = 0.0;
};

ScalarField solve_laplace(const Mesh& mesh, const LaplaceProblem& p);

// Piecewise-linear interpolation of the nodal values along the top edge.
std::vector<double> trace_on_gamma(const ScalarField& field, const std::vector<double>& points);

// Point evaluation helpers (structured-mesh cell lookup).
double eval_at(const ScalarField& field, double x, double y);
std::array<double, 2> eval_grad_at(const ScalarField& field, double x, double y);

}  // namespace robin::fem
