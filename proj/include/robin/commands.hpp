#pragma once

#include <string>

#include "robin/config.hpp"
#include "robin/mcmc.hpp"
#include "robin/observation.hpp"

namespace robin::cli {

// Likelihood of the dataset under the forward map on the given mesh
// resolution. The returned closure owns copies of the mesh and dataset and
// caches the assembled forward operator.
mcmc::LogLik make_loglik(const obs::ModelKind& model, const MeshConfig& mesh,
                         const obs::Dataset& dataset);

// Chain start: ground truth plus a N(0, 0.5^2) shift per coefficient, or a
// prior draw, both derived deterministically from the chain seed.
prior::CoeffVector initial_theta(const RunConfig& config);

// Dispatches on mcmc.mode (single, two-level, literal-two-level).
mcmc::ChainRecord run_sampler(const RunConfig& config, const obs::Dataset& dataset);

// Subcommands. Each returns a process exit code and writes its outputs under
// `outdir` (dataset.json, chain.csv + manifest.json, summary.json + CSVs).
int cmd_simulate(const RunConfig& config, const std::string& outdir);
int cmd_sample(const RunConfig& config, const std::string& outdir, const std::string& dataset_path);
int cmd_analyze(const RunConfig& config, const std::string& outdir, const std::string& chain_path,
                const std::string& dataset_path);
int cmd_verify(const std::string& suite);

}  // namespace robin::cli
