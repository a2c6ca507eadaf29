#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <array>
#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "robin/mesh.hpp"

namespace robin::fem {

using Vec2 = std::array<double, 2>;
using BoundaryVecFn = std::function<Vec2(double)>;
using VolumeVecFn = std::function<Vec2(double, double)>;
using BoundaryScalarFn = std::function<double(double)>;

// Edge enumeration for the quadratic velocity space: P2 dofs are the mesh
// vertices followed by one midpoint dof per edge.
struct P2Topology {
  std::vector<std::array<int, 2>> edges;            // sorted vertex pairs
  std::vector<std::array<int, 3>> tri_edges;        // per triangle: edges (01,12,20)
  std::unordered_map<long long, int> edge_lookup;   // key a*n_nodes+b, a<b
  int n_vertices = 0;

  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_p2() const { return n_vertices + n_edges(); }
  int edge_of(int a, int b) const;
};

std::shared_ptr<const P2Topology> build_p2_topology(const Mesh& mesh);

struct VectorField {
  const Mesh* mesh = nullptr;
  std::shared_ptr<const P2Topology> topo;
  std::vector<double> ux, uy;  // one value per P2 dof
};

struct PressureField {
  const Mesh* mesh = nullptr;
  std::vector<double> values;  // one value per vertex
};

// Data for the Stokes system: unit viscosity, stress data h on the top edge,
// Robin coefficient beta on the bottom edge, natural (traction) conditions
// on the sides. The optional fields supply inhomogeneous data for
// manufactured-solution verification; production runs leave them empty
// (homogeneous Neumann on the sides).
struct StokesProblem {
  BoundaryScalarFn beta;        // beta(x) > 0 on the bottom edge
  BoundaryVecFn traction_top;   // h(x) on the top edge
  VolumeVecFn body_force;       // f(x,y), e.g. the constant rho*g
  BoundaryVecFn robin_rhs;      // optional, bottom edge
  BoundaryVecFn traction_left;  // optional, argument y
  BoundaryVecFn traction_right; // optional, argument y
};

// Taylor-Hood (P2 velocity / P1 pressure) saddle-point solver. Volume
// operator blocks are assembled once per mesh; only the Robin block and the
// right-hand side change between solves.
class StokesSolver {
public:
  explicit StokesSolver(const Mesh& mesh);

  // Assembles the load vector for the given data; call once when the data
  // other than beta is fixed across many solves.
  void set_fixed_data(const StokesProblem& p);

  // Solves with the Robin coefficient beta against the fixed data.
  std::pair<VectorField, PressureField> solve_with_beta(const BoundaryScalarFn& beta);

  // One-shot: set_fixed_data + solve_with_beta.
  std::pair<VectorField, PressureField> solve(const StokesProblem& p);

  double last_rel_residual() const { return last_rel_residual_; }
  double last_div_residual() const { return last_div_residual_; }
  // Residual restricted to velocity rows supported on the Robin boundary.
  double last_robin_residual() const { return last_robin_residual_; }

private:
  const Mesh& mesh_;
  std::shared_ptr<const P2Topology> topo_;
  int n_p2_ = 0, n_dof_ = 0;
  std::vector<Eigen::Triplet<double>> volume_triplets_;  // viscous + divergence blocks
  std::vector<BoundaryEdge> bottom_edges_, top_edges_, left_edges_, right_edges_;
  Eigen::VectorXd rhs_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  bool pattern_ready_ = false;
  double last_rel_residual_ = 0.0;
  double last_div_residual_ = 0.0;
  double last_robin_residual_ = 0.0;
};

std::pair<VectorField, PressureField> solve_stokes(const Mesh& mesh, const StokesProblem& p);

// Quadratic interpolation of the velocity along the top edge.
std::vector<Vec2> velocity_trace_on_gamma(const VectorField& field, const std::vector<double>& points);

// Point evaluation helpers.
Vec2 eval_velocity_at(const VectorField& field, double x, double y);
double eval_pressure_at(const PressureField& field, double x, double y);

}  // namespace robin::fem
