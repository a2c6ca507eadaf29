#include "robin/observation.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace robin::obs {

using nlohmann::json;

double SinusoidProfile::operator()(double x) const {
  return amplitude * (std::sin(frequency * M_PI * x) + offset);
}

ForwardOperator::ForwardOperator(const ModelKind& model, const Mesh& mesh)
    : model_(model), mesh_(mesh) {
  if (model.type == ModelType::Laplace) {
    laplace_ = std::make_unique<fem::LaplaceSolver>(mesh);
  } else {
    stokes_ = std::make_unique<fem::StokesSolver>(mesh);
    fem::StokesProblem p;
    p.traction_top = [h = model_.h](double x) -> fem::Vec2 { return {h(x), 0.0}; };
    p.body_force = [f = model_.rho_g](double, double) -> fem::Vec2 { return {f[0], f[1]}; };
    stokes_->set_fixed_data(p);
  }
}

std::vector<double> ForwardOperator::eval(const prior::CoeffVector& coeffs,
                                          const std::vector<double>& points) {
  // beta on the bottom edge; theta lives on the unit interval, so the
  // boundary coordinate is normalized by Lx.
  const double Lx = mesh_.Lx;
  const double m_beta = model_.m_beta;
  auto beta = [&coeffs, Lx, m_beta](double x) {
    return m_beta + std::exp(prior::eval_theta(coeffs, x / Lx));
  };

  if (model_.type == ModelType::Laplace) {
    fem::LaplaceProblem p;
    p.beta = beta;
    p.neumann_top = [h = model_.h](double x) { return h(x); };
    const auto field = laplace_->solve(p);
    return fem::trace_on_gamma(field, points);
  }

  const auto [u, pr] = stokes_->solve_with_beta(beta);
  const auto trace = fem::velocity_trace_on_gamma(u, points);
  std::vector<double> flat;
  flat.reserve(2 * trace.size());
  for (const auto& v : trace) {
    flat.push_back(v[0]);
    flat.push_back(v[1]);
  }
  return flat;
}

std::vector<double> forward(const ModelKind& model, const Mesh& mesh,
                            const prior::CoeffVector& coeffs, const std::vector<double>& points) {
  ForwardOperator op(model, mesh);
  return op.eval(coeffs, points);
}

Dataset generate_data(const ModelKind& model, const Mesh& mesh, const prior::CoeffVector& theta0,
                      long N, double sigma_noise, std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("generate_data: N must be >= 1");
  if (sigma_noise < 0.0) throw std::invalid_argument("generate_data: sigma_noise must be >= 0");

  RngStream rng(seed);
  Dataset ds;
  ds.model = model;
  ds.mesh_nx = mesh.nx;
  ds.mesh_ny = mesh.ny;
  ds.mesh_Lx = mesh.Lx;
  ds.mesh_Ly = mesh.Ly;
  ds.sigma_noise = sigma_noise;
  ds.seed = seed;

  ds.points.reserve(N);
  for (long i = 0; i < N; ++i) ds.points.push_back(rng.uniform() * mesh.Lx);

  ds.values = forward(model, mesh, theta0, ds.points);
  for (double& v : ds.values) v += sigma_noise * rng.normal();
  return ds;
}

double log_likelihood(const Dataset& dataset, const std::vector<double>& predictions) {
  if (predictions.size() != dataset.values.size())
    throw std::invalid_argument("log_likelihood: prediction length mismatch");
  if (!(dataset.sigma_noise > 0.0))
    throw std::invalid_argument("log_likelihood: sigma_noise must be positive");
  double ss = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = dataset.values[i] - predictions[i];
    ss += d * d;
  }
  return -ss / (2.0 * dataset.sigma_noise * dataset.sigma_noise);
}

namespace {

json model_to_json(const ModelKind& m) {
  json j;
  j["kind"] = m.type == ModelType::Laplace ? "laplace" : "stokes";
  j["h_descriptor"] = {{"amplitude", m.h.amplitude}, {"frequency", m.h.frequency}, {"offset", m.h.offset}};
  j["m_beta"] = m.m_beta;
  if (m.type == ModelType::Stokes) j["rho_g"] = {m.rho_g[0], m.rho_g[1]};
  return j;
}

ModelKind model_from_json(const json& j) {
  ModelKind m;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "laplace") m.type = ModelType::Laplace;
  else if (kind == "stokes") m.type = ModelType::Stokes;
  else throw std::invalid_argument("dataset: unknown model kind '" + kind + "'");
  const auto& h = j.at("h_descriptor");
  m.h.amplitude = h.at("amplitude").get<double>();
  m.h.frequency = h.at("frequency").get<double>();
  m.h.offset = h.at("offset").get<double>();
  m.m_beta = j.at("m_beta").get<double>();
  if (m.type == ModelType::Stokes) {
    m.rho_g[0] = j.at("rho_g").at(0).get<double>();
    m.rho_g[1] = j.at("rho_g").at(1).get<double>();
  }
  return m;
}

}  // namespace

void save_dataset(const Dataset& ds, const std::string& path) {
  json j;
  j["model"] = model_to_json(ds.model);
  j["mesh"] = {{"nx", ds.mesh_nx}, {"ny", ds.mesh_ny}, {"Lx", ds.mesh_Lx}, {"Ly", ds.mesh_Ly}};
  j["sigma_noise"] = ds.sigma_noise;
  j["seed"] = ds.seed;
  j["points"] = ds.points;
  if (ds.obs_dim() == 1) {
    j["values"] = ds.values;
  } else {
    json vals = json::array();
    for (std::size_t i = 0; i + 1 < ds.values.size(); i += 2)
      vals.push_back({ds.values[i], ds.values[i + 1]});
    j["values"] = vals;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_dataset: cannot open " + path);
  os << j.dump(2) << "\n";
}

Dataset load_dataset(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_dataset: cannot open " + path);
  json j = json::parse(is);

  Dataset ds;
  ds.model = model_from_json(j.at("model"));
  const auto& mesh = j.at("mesh");
  ds.mesh_nx = mesh.at("nx").get<int>();
  ds.mesh_ny = mesh.at("ny").get<int>();
  ds.mesh_Lx = mesh.at("Lx").get<double>();
  ds.mesh_Ly = mesh.at("Ly").get<double>();
  ds.sigma_noise = j.at("sigma_noise").get<double>();
  ds.seed = j.at("seed").get<std::uint64_t>();
  ds.points = j.at("points").get<std::vector<double>>();
  if (ds.obs_dim() == 1) {
    ds.values = j.at("values").get<std::vector<double>>();
  } else {
    for (const auto& v : j.at("values")) {
      ds.values.push_back(v.at(0).get<double>());
      ds.values.push_back(v.at(1).get<double>());
    }
  }
  if (ds.values.size() != ds.points.size() * static_cast<std::size_t>(ds.obs_dim()))
    throw std::runtime_error("load_dataset: points/values size mismatch");
  return ds;
}

}  // namespace robin::obs
