#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "robin/mcmc.hpp"
#include "robin/observation.hpp"
#include "robin/prior.hpp"

namespace robin::cli {

enum class ChainMode { Single, TwoLevel, LiteralTwoLevel };
enum class InitMode { TruthShift, PriorDraw };

struct MeshConfig {
  int nx = 100, ny = 20;
  double Lx = 1.0, Ly = 0.2;
};

struct ModelConfig {
  obs::ModelKind kind;  // type, h profile, rho_g, m_beta
  MeshConfig mesh;
  std::optional<MeshConfig> coarse_mesh;  // required for the two-level modes
};

struct DataConfig {
  std::vector<double> theta0;  // ground-truth coefficients, ordered k = -K..K
  long N = 100;
  double sigma_noise = 0.1;
  std::uint64_t seed = 1;
};

struct McmcSection {
  mcmc::ChainConfig chain;
  ChainMode mode = ChainMode::Single;
  InitMode init = InitMode::TruthShift;
};

struct AnalysisConfig {
  double epsilon = 0.05;
  double level = 0.95;
  int grid_size = 200;
};

struct RunConfig {
  ModelConfig model;
  prior::PriorSpec prior;
  DataConfig data;
  McmcSection mcmc;
  AnalysisConfig analysis;
  std::string output = "out";
};

// Strict parsing: unknown keys anywhere in the document are an error.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

prior::CoeffVector theta0_from(const RunConfig& config);

}  // namespace robin::cli
