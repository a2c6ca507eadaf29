#include "robin/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace robin::cli {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument("config: '" + where + "' must be an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw std::invalid_argument("config: unknown key '" + item.key() + "' in " + where);
}

MeshConfig parse_mesh(const json& j, const std::string& where, const MeshConfig& defaults) {
  check_keys(j, {"nx", "ny", "Lx", "Ly"}, where);
  MeshConfig m = defaults;
  m.nx = j.value("nx", m.nx);
  m.ny = j.value("ny", m.ny);
  m.Lx = j.value("Lx", m.Lx);
  m.Ly = j.value("Ly", m.Ly);
  return m;
}

}  // namespace

RunConfig parse_config(const json& j) {
  check_keys(j, {"model", "prior", "data", "mcmc", "analysis", "output"}, "config");
  RunConfig c;

  {
    const json& m = j.at("model");
    check_keys(m, {"kind", "mesh", "coarse_mesh", "h", "rho_g", "m_beta"}, "model");
    const std::string kind = m.at("kind").get<std::string>();
    if (kind == "laplace") c.model.kind.type = obs::ModelType::Laplace;
    else if (kind == "stokes") c.model.kind.type = obs::ModelType::Stokes;
    else throw std::invalid_argument("config: model.kind must be 'laplace' or 'stokes'");

    if (m.contains("mesh")) c.model.mesh = parse_mesh(m.at("mesh"), "model.mesh", MeshConfig{});
    if (m.contains("coarse_mesh")) {
      MeshConfig defaults = c.model.mesh;
      c.model.coarse_mesh = parse_mesh(m.at("coarse_mesh"), "model.coarse_mesh", defaults);
    }
    if (m.contains("h")) {
      const json& h = m.at("h");
      check_keys(h, {"amplitude", "frequency", "offset"}, "model.h");
      c.model.kind.h.amplitude = h.value("amplitude", 10.0);
      c.model.kind.h.frequency = h.value("frequency", 12.0);
      c.model.kind.h.offset = h.value("offset", 1.0);
    }
    if (m.contains("rho_g")) {
      c.model.kind.rho_g[0] = m.at("rho_g").at(0).get<double>();
      c.model.kind.rho_g[1] = m.at("rho_g").at(1).get<double>();
    }
    c.model.kind.m_beta = m.value("m_beta", 0.0);
  }

  {
    const json& p = j.at("prior");
    check_keys(p, {"family", "alpha", "r", "K", "rescale"}, "prior");
    const std::string family = p.at("family").get<std::string>();
    if (family == "matern") c.prior.family = prior::Family::Matern;
    else if (family == "squared_exp") c.prior.family = prior::Family::SquaredExp;
    else throw std::invalid_argument("config: prior.family must be 'matern' or 'squared_exp'");
    c.prior.alpha = p.value("alpha", 1.0);
    c.prior.r = p.value("r", 1.0);
    c.prior.K = p.value("K", 2);
    if (p.contains("rescale")) {
      const std::string rs = p.at("rescale").get<std::string>();
      if (rs == "on") c.prior.rescale = true;
      else if (rs == "off") c.prior.rescale = false;
      else throw std::invalid_argument("config: prior.rescale must be 'on' or 'off'");
    }
  }

  {
    const json& d = j.at("data");
    check_keys(d, {"theta0", "N", "sigma_noise", "seed"}, "data");
    c.data.theta0 = d.at("theta0").get<std::vector<double>>();
    if (c.data.theta0.size() % 2 == 0)
      throw std::invalid_argument("config: data.theta0 must have odd length (k = -K..K)");
    c.data.N = d.value("N", 100L);
    if (c.data.N < 1) throw std::invalid_argument("config: data.N must be >= 1");
    c.data.sigma_noise = d.value("sigma_noise", 0.1);
    c.data.seed = d.value("seed", std::uint64_t{1});
  }
  c.prior.rescale_N = static_cast<double>(c.data.N);

  {
    const json& m = j.at("mcmc");
    check_keys(m,
               {"iterations", "burn_in", "gamma0", "target_accept", "adapt_interval", "adapt_gain",
                "thinning", "seed", "mode", "init"},
               "mcmc");
    c.mcmc.chain.iterations = m.value("iterations", 50000L);
    c.mcmc.chain.burn_in = m.value("burn_in", 10000L);
    c.mcmc.chain.gamma0 = m.value("gamma0", 1e-7);
    c.mcmc.chain.target_accept = m.value("target_accept", 0.33);
    c.mcmc.chain.adapt_interval = m.value("adapt_interval", 1000L);
    c.mcmc.chain.adapt_gain = m.value("adapt_gain", 2.0);
    c.mcmc.chain.thinning = m.value("thinning", 10L);
    c.mcmc.chain.seed = m.value("seed", std::uint64_t{1});
    if (m.contains("mode")) {
      const std::string mode = m.at("mode").get<std::string>();
      if (mode == "single") c.mcmc.mode = ChainMode::Single;
      else if (mode == "two-level") c.mcmc.mode = ChainMode::TwoLevel;
      else if (mode == "literal-two-level") c.mcmc.mode = ChainMode::LiteralTwoLevel;
      else throw std::invalid_argument("config: mcmc.mode must be 'single', 'two-level' or 'literal-two-level'");
    }
    if (m.contains("init")) {
      const std::string init = m.at("init").get<std::string>();
      if (init == "truth-shift") c.mcmc.init = InitMode::TruthShift;
      else if (init == "prior") c.mcmc.init = InitMode::PriorDraw;
      else throw std::invalid_argument("config: mcmc.init must be 'truth-shift' or 'prior'");
    }
  }

  if (j.contains("analysis")) {
    const json& a = j.at("analysis");
    check_keys(a, {"epsilon", "level", "grid_size"}, "analysis");
    c.analysis.epsilon = a.value("epsilon", 0.05);
    c.analysis.level = a.value("level", 0.95);
    c.analysis.grid_size = a.value("grid_size", 200);
  }

  c.output = j.value("output", std::string("out"));

  if ((c.mcmc.mode == ChainMode::TwoLevel || c.mcmc.mode == ChainMode::LiteralTwoLevel) &&
      !c.model.coarse_mesh)
    throw std::invalid_argument("config: two-level modes require model.coarse_mesh");

  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_config: cannot open " + path);
  return parse_config(json::parse(is));
}

json to_json(const RunConfig& c) {
  json j;
  j["model"]["kind"] = c.model.kind.type == obs::ModelType::Laplace ? "laplace" : "stokes";
  j["model"]["mesh"] = {{"nx", c.model.mesh.nx}, {"ny", c.model.mesh.ny},
                        {"Lx", c.model.mesh.Lx}, {"Ly", c.model.mesh.Ly}};
  if (c.model.coarse_mesh)
    j["model"]["coarse_mesh"] = {{"nx", c.model.coarse_mesh->nx}, {"ny", c.model.coarse_mesh->ny},
                                 {"Lx", c.model.coarse_mesh->Lx}, {"Ly", c.model.coarse_mesh->Ly}};
  j["model"]["h"] = {{"amplitude", c.model.kind.h.amplitude}, {"frequency", c.model.kind.h.frequency},
                     {"offset", c.model.kind.h.offset}};
  if (c.model.kind.type == obs::ModelType::Stokes)
    j["model"]["rho_g"] = {c.model.kind.rho_g[0], c.model.kind.rho_g[1]};
  j["model"]["m_beta"] = c.model.kind.m_beta;

  j["prior"]["family"] = c.prior.family == prior::Family::Matern ? "matern" : "squared_exp";
  j["prior"]["alpha"] = c.prior.alpha;
  j["prior"]["r"] = c.prior.r;
  j["prior"]["K"] = c.prior.K;
  j["prior"]["rescale"] = c.prior.rescale ? "on" : "off";

  j["data"]["theta0"] = c.data.theta0;
  j["data"]["N"] = c.data.N;
  j["data"]["sigma_noise"] = c.data.sigma_noise;
  j["data"]["seed"] = c.data.seed;

  j["mcmc"]["iterations"] = c.mcmc.chain.iterations;
  j["mcmc"]["burn_in"] = c.mcmc.chain.burn_in;
  j["mcmc"]["gamma0"] = c.mcmc.chain.gamma0;
  j["mcmc"]["target_accept"] = c.mcmc.chain.target_accept;
  j["mcmc"]["adapt_interval"] = c.mcmc.chain.adapt_interval;
  j["mcmc"]["adapt_gain"] = c.mcmc.chain.adapt_gain;
  j["mcmc"]["thinning"] = c.mcmc.chain.thinning;
  j["mcmc"]["seed"] = c.mcmc.chain.seed;
  j["mcmc"]["mode"] = c.mcmc.mode == ChainMode::Single
                          ? "single"
                          : (c.mcmc.mode == ChainMode::TwoLevel ? "two-level" : "literal-two-level");
  j["mcmc"]["init"] = c.mcmc.init == InitMode::TruthShift ? "truth-shift" : "prior";

  j["analysis"]["epsilon"] = c.analysis.epsilon;
  j["analysis"]["level"] = c.analysis.level;
  j["analysis"]["grid_size"] = c.analysis.grid_size;
  j["output"] = c.output;
  return j;
}

prior::CoeffVector theta0_from(const RunConfig& config) {
  const int K = static_cast<int>(config.data.theta0.size() / 2);
  prior::CoeffVector truth(K);
  truth.theta = config.data.theta0;
  return truth;
}

}  // namespace robin::cli
