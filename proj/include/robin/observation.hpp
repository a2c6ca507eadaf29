#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "robin/fem_laplace.hpp"
#include "robin/fem_stokes.hpp"
#include "robin/mesh.hpp"
#include "robin/prior.hpp"

namespace robin::obs {

enum class ModelType { Laplace, Stokes };

// h(x) = amplitude * (sin(frequency*pi*x) + offset); the Stokes variant has
// a zero second component.
struct SinusoidProfile {
  double amplitude = 10.0;
  double frequency = 12.0;
  double offset = 1.0;

  double operator()(double x) const;
};

// A governing model together with its fixed data.
struct ModelKind {
  ModelType type = ModelType::Laplace;
  SinusoidProfile h;
  std::array<double, 2> rho_g{0.0, 0.0};  // body force, Stokes only
  double m_beta = 0.0;

  int obs_dim() const { return type == ModelType::Stokes ? 2 : 1; }
};

// Synthetic observations Y_i = G(theta0)(X_i) + sigma * eps_i at locations
// X_i uniform on the top edge. Values are stored flattened, obs_dim numbers
// per point.
struct Dataset {
  ModelKind model;
  int mesh_nx = 0, mesh_ny = 0;
  double mesh_Lx = 1.0, mesh_Ly = 0.2;
  double sigma_noise = 0.1;
  std::uint64_t seed = 0;
  std::vector<double> points;
  std::vector<double> values;

  long N() const { return static_cast<long>(points.size()); }
  int obs_dim() const { return model.obs_dim(); }
};

// Repeated-solve forward map G(theta) = trace of the PDE solution for
// beta = m_beta + exp(theta). Assembly skeletons are cached across calls,
// which is what the MCMC loop needs.
class ForwardOperator {
public:
  ForwardOperator(const ModelKind& model, const Mesh& mesh);

  // Solves once and evaluates the trace at all points (flattened values).
  std::vector<double> eval(const prior::CoeffVector& coeffs, const std::vector<double>& points);

  const ModelKind& model() const { return model_; }

private:
  ModelKind model_;
  const Mesh& mesh_;
  std::unique_ptr<fem::LaplaceSolver> laplace_;
  std::unique_ptr<fem::StokesSolver> stokes_;
};

std::vector<double> forward(const ModelKind& model, const Mesh& mesh,
                            const prior::CoeffVector& coeffs, const std::vector<double>& points);

Dataset generate_data(const ModelKind& model, const Mesh& mesh, const prior::CoeffVector& theta0,
                      long N, double sigma_noise, std::uint64_t seed);

// -(1/(2 sigma^2)) sum_i |Y_i - pred_i|^2, Euclidean norm per observation.
double log_likelihood(const Dataset& dataset, const std::vector<double>& predictions);

void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace robin::obs
