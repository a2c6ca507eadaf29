#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "robin/observation.hpp"

using namespace robin;

namespace {

prior::CoeffVector paper_theta0() {
  prior::CoeffVector c(2);
  c.theta = {-0.6, 0.7, 2.0, 0.1, -0.08};
  return c;
}

obs::ModelKind laplace_model() {
  obs::ModelKind m;
  m.type = obs::ModelType::Laplace;
  return m;
}

obs::ModelKind stokes_model() {
  obs::ModelKind m;
  m.type = obs::ModelType::Stokes;
  m.rho_g = {5.0, 5.0};
  return m;
}

}  // namespace

TEST_CASE("log-likelihood formula") {
  obs::Dataset ds;
  ds.model = laplace_model();
  ds.sigma_noise = 1.0;
  ds.points = {0.5};
  ds.values = {1.0};
  CHECK(obs::log_likelihood(ds, {1.0}) == 0.0);
  CHECK(obs::log_likelihood(ds, {0.0}) == doctest::Approx(-0.5).epsilon(1e-15));

  obs::Dataset vec;
  vec.model = stokes_model();
  vec.sigma_noise = 0.5;
  vec.points = {0.3, 0.7};
  vec.values = {1.0, 0.0, 0.0, 1.0};
  CHECK(obs::log_likelihood(vec, {0.0, 0.0, 0.0, 0.0}) == doctest::Approx(-4.0).epsilon(1e-15));

  CHECK_THROWS_AS(obs::log_likelihood(ds, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("log-likelihood properties") {
  obs::Dataset ds;
  ds.model = laplace_model();
  ds.sigma_noise = 0.3;
  ds.points = {0.1, 0.5, 0.9};
  ds.values = {1.0, -2.0, 0.5};

  // never positive, zero only at a perfect fit
  CHECK(obs::log_likelihood(ds, {0.9, -2.2, 0.6}) < 0.0);
  CHECK(obs::log_likelihood(ds, ds.values) == 0.0);

  // adding a datum never increases the value
  obs::Dataset more = ds;
  more.points.push_back(0.7);
  more.values.push_back(3.0);
  CHECK(obs::log_likelihood(more, {0.9, -2.2, 0.6, 0.0}) <=
        obs::log_likelihood(ds, {0.9, -2.2, 0.6}));

  // |loglik| scales exactly as sigma^{-2}
  obs::Dataset half = ds;
  half.sigma_noise = ds.sigma_noise / 2.0;
  const std::vector<double> pred = {0.0, 0.0, 0.0};
  CHECK(obs::log_likelihood(half, pred) ==
        doctest::Approx(4.0 * obs::log_likelihood(ds, pred)).epsilon(1e-13));
}

TEST_CASE("forward map consistency") {
  const auto mesh = build_rect_mesh(30, 6, 1.0, 0.2);
  const auto theta0 = paper_theta0();
  obs::ForwardOperator op(laplace_model(), mesh);

  const std::vector<double> a = {0.1, 0.4};
  const std::vector<double> b = {0.55, 0.8, 0.95};
  std::vector<double> joint = a;
  joint.insert(joint.end(), b.begin(), b.end());

  const auto va = op.eval(theta0, a);
  const auto vb = op.eval(theta0, b);
  const auto vj = op.eval(theta0, joint);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(vj[i] == va[i]);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(vj[a.size() + i] == vb[i]);

  // permuting points permutes outputs identically
  const std::vector<double> perm = {0.8, 0.95, 0.55};
  const auto vp = op.eval(theta0, perm);
  CHECK(vp[0] == vb[1]);
  CHECK(vp[1] == vb[2]);
  CHECK(vp[2] == vb[0]);
}

TEST_CASE("forward values for the experiment setup (regression lock)") {
  const auto mesh = build_rect_mesh(50, 10, 1.0, 0.2);
  const auto vals = obs::forward(laplace_model(), mesh, paper_theta0(), {0.2, 0.5, 0.8});
  CHECK(vals[0] == doctest::Approx(2.475089945799263).epsilon(1e-9));
  CHECK(vals[1] == doctest::Approx(3.1886624714474672).epsilon(1e-9));
  CHECK(vals[2] == doctest::Approx(2.0617794104988367).epsilon(1e-9));
}

TEST_CASE("Stokes forward with zero data is zero") {
  const auto mesh = build_rect_mesh(10, 4, 1.0, 0.2);
  obs::ModelKind m;
  m.type = obs::ModelType::Stokes;
  m.h.amplitude = 0.0;
  m.rho_g = {0.0, 0.0};
  const auto vals = obs::forward(m, mesh, paper_theta0(), {0.2, 0.6});
  REQUIRE(vals.size() == 4);
  for (double v : vals) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("synthetic data generation") {
  const auto mesh = build_rect_mesh(50, 10, 1.0, 0.2);
  const auto theta0 = paper_theta0();

  SUBCASE("noiseless datasets reproduce the forward map") {
    const auto ds = obs::generate_data(laplace_model(), mesh, theta0, 20, 0.0, 5);
    const auto pred = obs::forward(laplace_model(), mesh, theta0, ds.points);
    for (std::size_t i = 0; i < pred.size(); ++i) CHECK(ds.values[i] == pred[i]);
  }

  SUBCASE("same seed gives an identical dataset") {
    const auto a = obs::generate_data(laplace_model(), mesh, theta0, 30, 0.1, 99);
    const auto b = obs::generate_data(laplace_model(), mesh, theta0, 30, 0.1, 99);
    CHECK(a.points == b.points);
    CHECK(a.values == b.values);
  }

  SUBCASE("points lie strictly inside and residuals are centred") {
    const long N = 100;
    const double sigma = 0.1;
    const auto ds = obs::generate_data(laplace_model(), mesh, theta0, N, sigma, 303);
    for (double x : ds.points) {
      CHECK(x > 0.0);
      CHECK(x < 1.0);
    }
    const auto pred = obs::forward(laplace_model(), mesh, theta0, ds.points);
    double mean_resid = 0.0;
    for (long i = 0; i < N; ++i) mean_resid += ds.values[i] - pred[i];
    mean_resid /= N;
    CHECK(std::abs(mean_resid) <= 3.0 * sigma / std::sqrt(static_cast<double>(N)));
  }

  SUBCASE("invalid arguments are rejected") {
    CHECK_THROWS_AS(obs::generate_data(laplace_model(), mesh, theta0, 0, 0.1, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("dataset JSON round-trip") {
  const auto dir = std::filesystem::temp_directory_path() / "robin_obs_test";
  std::filesystem::create_directories(dir);

  SUBCASE("scalar values") {
    const auto mesh = build_rect_mesh(20, 4, 1.0, 0.2);
    const auto ds = obs::generate_data(laplace_model(), mesh, paper_theta0(), 7, 0.1, 42);
    const std::string path = (dir / "laplace.json").string();
    obs::save_dataset(ds, path);
    const auto back = obs::load_dataset(path);
    CHECK(back.points == ds.points);
    CHECK(back.values == ds.values);
    CHECK(back.sigma_noise == ds.sigma_noise);
    CHECK(back.seed == ds.seed);
    CHECK(back.mesh_nx == ds.mesh_nx);
    CHECK(back.obs_dim() == 1);
  }

  SUBCASE("vector values") {
    const auto mesh = build_rect_mesh(20, 4, 1.0, 0.2);
    const auto ds = obs::generate_data(stokes_model(), mesh, paper_theta0(), 5, 0.5, 43);
    REQUIRE(ds.values.size() == 10);
    const std::string path = (dir / "stokes.json").string();
    obs::save_dataset(ds, path);
    const auto back = obs::load_dataset(path);
    CHECK(back.points == ds.points);
    CHECK(back.values == ds.values);
    CHECK(back.obs_dim() == 2);
    CHECK(back.model.rho_g == ds.model.rho_g);
  }
}
