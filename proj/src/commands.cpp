#include "robin/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>

#include "robin/analysis.hpp"
#include "robin/io.hpp"
#include "robin/verify.hpp"

namespace robin::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Embed coefficients into a (2K+1)-vector for the chain's truncation order.
prior::CoeffVector embed(const prior::CoeffVector& c, int K) {
  prior::CoeffVector out(K);
  for (int k = -std::min(K, c.K); k <= std::min(K, c.K); ++k) out.at_k(k) = c.at_k(k);
  return out;
}

struct ForwardBundle {
  Mesh mesh;
  obs::Dataset dataset;
  std::unique_ptr<obs::ForwardOperator> op;
};

json model_descriptor(const RunConfig& config) {
  json j;
  j["kind"] = config.model.kind.type == obs::ModelType::Laplace ? "laplace" : "stokes";
  j["h"] = {config.model.kind.h.amplitude, config.model.kind.h.frequency, config.model.kind.h.offset};
  j["m_beta"] = config.model.kind.m_beta;
  if (config.model.kind.type == obs::ModelType::Stokes)
    j["rho_g"] = {config.model.kind.rho_g[0], config.model.kind.rho_g[1]};
  j["mesh"] = {config.model.mesh.nx, config.model.mesh.ny, config.model.mesh.Lx, config.model.mesh.Ly};
  j["sigma_noise"] = config.data.sigma_noise;
  j["N"] = config.data.N;
  j["seed"] = config.data.seed;
  return j;
}

json dataset_descriptor(const obs::Dataset& ds) {
  json j;
  j["kind"] = ds.model.type == obs::ModelType::Laplace ? "laplace" : "stokes";
  j["h"] = {ds.model.h.amplitude, ds.model.h.frequency, ds.model.h.offset};
  j["m_beta"] = ds.model.m_beta;
  if (ds.model.type == obs::ModelType::Stokes) j["rho_g"] = {ds.model.rho_g[0], ds.model.rho_g[1]};
  j["mesh"] = {ds.mesh_nx, ds.mesh_ny, ds.mesh_Lx, ds.mesh_Ly};
  j["sigma_noise"] = ds.sigma_noise;
  j["N"] = ds.N();
  j["seed"] = ds.seed;
  return j;
}

}  // namespace

mcmc::LogLik make_loglik(const obs::ModelKind& model, const MeshConfig& mesh,
                         const obs::Dataset& dataset) {
  auto bundle = std::make_shared<ForwardBundle>();
  bundle->mesh = build_rect_mesh(mesh.nx, mesh.ny, mesh.Lx, mesh.Ly);
  bundle->dataset = dataset;
  bundle->op = std::make_unique<obs::ForwardOperator>(model, bundle->mesh);
  return [bundle](const prior::CoeffVector& c) {
    return obs::log_likelihood(bundle->dataset, bundle->op->eval(c, bundle->dataset.points));
  };
}

prior::CoeffVector initial_theta(const RunConfig& config) {
  RngStream rng(derive_seed(config.mcmc.chain.seed, 0x1717));
  if (config.mcmc.init == InitMode::PriorDraw) return prior::sample_coeffs(config.prior, rng);
  auto theta = embed(theta0_from(config), config.prior.K);
  for (auto& t : theta.theta) t += 0.5 * rng.normal();
  return theta;
}

mcmc::ChainRecord run_sampler(const RunConfig& config, const obs::Dataset& dataset) {
  const auto fine = make_loglik(config.model.kind, config.model.mesh, dataset);
  const auto init = initial_theta(config);

  if (config.mcmc.mode == ChainMode::Single)
    return mcmc::run_chain(config.mcmc.chain, config.prior, fine, init);

  if (!config.model.coarse_mesh)
    throw std::invalid_argument("run_sampler: two-level modes require model.coarse_mesh");
  const auto coarse = make_loglik(config.model.kind, *config.model.coarse_mesh, dataset);
  const bool literal = config.mcmc.mode == ChainMode::LiteralTwoLevel;
  return mcmc::run_chain_two_level(config.mcmc.chain, config.prior, coarse, fine, init, literal);
}

int cmd_simulate(const RunConfig& config, const std::string& outdir) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(outdir);

  const auto mesh = build_rect_mesh(config.model.mesh.nx, config.model.mesh.ny, config.model.mesh.Lx,
                                    config.model.mesh.Ly);
  const auto theta0 = theta0_from(config);
  const auto ds = obs::generate_data(config.model.kind, mesh, theta0, config.data.N,
                                     config.data.sigma_noise, config.data.seed);
  const std::string path = outdir + "/dataset.json";
  obs::save_dataset(ds, path);

  std::cout << "simulate: N=" << ds.N() << " sigma_noise=" << ds.sigma_noise << " dim=" << ds.obs_dim()
            << " -> " << path << " (" << elapsed_s(t0) << " s)\n";
  return 0;
}

int cmd_sample(const RunConfig& config, const std::string& outdir, const std::string& dataset_path) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(outdir);
  const std::string ds_path = dataset_path.empty() ? outdir + "/dataset.json" : dataset_path;
  const auto ds = obs::load_dataset(ds_path);

  const auto want = model_descriptor(config);
  const auto got = dataset_descriptor(ds);
  if (io::fnv1a_hash(want.dump()) != io::fnv1a_hash(got.dump())) {
    std::cerr << "sample: dataset does not match the config's model descriptor\n"
              << "  config:  " << want.dump() << "\n  dataset: " << got.dump() << "\n";
    return 1;
  }

  const auto record = run_sampler(config, ds);
  const std::string chain_path = outdir + "/chain.csv";
  io::write_chain_csv(record, chain_path);

  json manifest;
  manifest["config"] = to_json(config);
  manifest["dataset_file"] = ds_path;
  manifest["dataset_hash"] = io::hash_file(ds_path);
  manifest["input_hash"] = io::fnv1a_hash(to_json(config).dump() + io::read_file(ds_path));
  manifest["chain"] = {{"recorded", record.size()},
                       {"total_iterations", record.total_iterations},
                       {"burn_in", record.burn_in},
                       {"acceptance_rate", record.acceptance_rate},
                       {"solver_failures", record.solver_failures}};
  io::write_json(manifest, outdir + "/manifest.json");

  std::cout << "sample: " << record.size() << " samples, acceptance " << record.acceptance_rate
            << " -> " << chain_path << " (" << elapsed_s(t0) << " s)\n";
  return 0;
}

int cmd_analyze(const RunConfig& config, const std::string& outdir, const std::string& chain_path,
                const std::string& dataset_path) {
  fs::create_directories(outdir);
  const std::string chain_file = chain_path.empty() ? outdir + "/chain.csv" : chain_path;
  const std::string ds_path = dataset_path.empty() ? outdir + "/dataset.json" : dataset_path;

  auto record = io::read_chain_csv(chain_file);
  if (record.samples.empty()) {
    std::cerr << "analyze: chain file holds no samples\n";
    return 1;
  }
  const auto ds = obs::load_dataset(ds_path);
  if (ds.model.m_beta != config.model.kind.m_beta) {
    std::cerr << "analyze: dataset m_beta differs from config\n";
    return 1;
  }

  // The acceptance rate lives in the run manifest, not the CSV.
  const std::string manifest_path = fs::path(chain_file).parent_path() / "manifest.json";
  if (fs::exists(manifest_path)) {
    const json manifest = json::parse(io::read_file(manifest_path));
    record.acceptance_rate = manifest.at("chain").at("acceptance_rate").get<double>();
  }

  const auto truth = theta0_from(config);
  const auto summary = analysis::summarize(record, truth, config.model.kind.m_beta,
                                           config.analysis.epsilon, config.analysis.level,
                                           config.analysis.grid_size);

  json sj;
  sj["mean_coeffs"] = summary.mean_coeffs.theta;
  sj["errors"] = summary.errors;
  sj["diagnostics"] = {{"acceptance_rate", summary.acceptance_rate}, {"ess", summary.ess}};
  sj["epsilon"] = config.analysis.epsilon;
  sj["level"] = config.analysis.level;
  sj["n_samples"] = record.size();
  io::write_json(sj, outdir + "/summary.json");

  std::vector<double> truth_curve;
  truth_curve.reserve(summary.grid.size());
  for (double x : summary.grid)
    truth_curve.push_back(config.model.kind.m_beta + std::exp(prior::eval_theta(truth, x)));
  io::write_band_csv(summary.grid, summary.band_lower, summary.beta_mean_curve, summary.band_upper,
                     truth_curve, outdir + "/band.csv");
  io::write_trace_csv(record, outdir + "/trace.csv");
  io::write_coeff_samples_csv(record, outdir + "/coeff_samples.csv");

  std::cout << "analyze: theta_l2=" << summary.errors.at("theta_l2")
            << " theta_linf=" << summary.errors.at("theta_linf") << " -> " << outdir
            << "/summary.json\n";
  return 0;
}

int cmd_verify(const std::string& suite) {
  const auto results = verify::run_suite(suite);
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all_pass = all_pass && r.pass;
  }
  std::cout << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES\n");
  return all_pass ? 0 : 1;
}

}  // namespace robin::cli
