#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "robin/analysis.hpp"
#include "robin/rng.hpp"

using namespace robin;
constexpr double kPi = std::numbers::pi;

namespace {

mcmc::ChainRecord record_from(const std::vector<prior::CoeffVector>& samples) {
  mcmc::ChainRecord rec;
  rec.K = samples.empty() ? 0 : samples.front().K;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rec.samples.push_back(samples[i]);
    rec.iterations.push_back(static_cast<long>(i + 1));
    rec.logliks.push_back(0.0);
    rec.accept_flags.push_back(1);
    rec.step_trace.push_back(0.1);
  }
  return rec;
}

prior::CoeffVector coeffs(std::initializer_list<double> values) {
  prior::CoeffVector c(static_cast<int>(values.size() / 2));
  c.theta = values;
  return c;
}

}  // namespace

TEST_CASE("posterior mean") {
  const auto a = coeffs({1.0, 2.0, 3.0, -1.0, 0.5});
  CHECK(analysis::posterior_mean(record_from({a})).theta == a.theta);

  auto b = a;
  for (auto& t : b.theta) t = -t;
  const auto zero = analysis::posterior_mean(record_from({a, b}));
  for (double t : zero.theta) CHECK(t == 0.0);

  // permutation invariance
  const auto c = coeffs({0.3, -0.2, 0.9, 0.0, 0.1});
  const auto m1 = analysis::posterior_mean(record_from({a, b, c}));
  const auto m2 = analysis::posterior_mean(record_from({c, a, b}));
  for (int i = 0; i < m1.size(); ++i) CHECK(m1.theta[i] == doctest::Approx(m2.theta[i]).epsilon(1e-15));

  CHECK_THROWS_AS(analysis::posterior_mean(mcmc::ChainRecord{}), std::invalid_argument);
}

TEST_CASE("posterior mean of prior samples is centred") {
  prior::PriorSpec spec;
  spec.K = 2;
  RngStream rng(2024);
  std::vector<prior::CoeffVector> draws;
  const long n = 20000;
  for (long i = 0; i < n; ++i) draws.push_back(prior::sample_coeffs(spec, rng));
  const auto mean = analysis::posterior_mean(record_from(draws));
  for (int k = -2; k <= 2; ++k) {
    const double se = prior::weight(spec, k) / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean.at_k(k)) <= 3.0 * se);
  }
}

TEST_CASE("credible bands") {
  auto beta_of = [](const prior::CoeffVector& c, double x) {
    return std::exp(prior::eval_theta(c, x));
  };
  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};

  SUBCASE("identical samples collapse the band") {
    const auto s = coeffs({0.1, -0.2, 0.5, 0.3, 0.0});
    const auto rec = record_from({s, s, s});
    const auto [lo, hi] = analysis::credible_band(rec, grid, 0.95, beta_of);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(lo[i] == doctest::Approx(beta_of(s, grid[i])).epsilon(1e-14));
      CHECK(hi[i] == lo[i]);
    }
  }

  SUBCASE("level near one spans the sample range") {
    std::vector<prior::CoeffVector> samples;
    for (int i = 0; i < 9; ++i) {
      auto c = prior::CoeffVector(2);
      c.at_k(0) = 0.1 * i;
      samples.push_back(c);
    }
    const auto rec = record_from(samples);
    const auto [lo, hi] = analysis::credible_band(rec, {0.5}, 1.0 - 1e-12, beta_of);
    CHECK(lo[0] == doctest::Approx(std::exp(0.0)).epsilon(1e-9));
    CHECK(hi[0] == doctest::Approx(std::exp(0.8)).epsilon(1e-9));
  }

  SUBCASE("wider level gives a wider band") {
    RngStream rng(5);
    prior::PriorSpec spec;
    spec.K = 2;
    std::vector<prior::CoeffVector> samples;
    for (int i = 0; i < 500; ++i) samples.push_back(prior::sample_coeffs(spec, rng));
    const auto rec = record_from(samples);
    const auto [lo50, hi50] = analysis::credible_band(rec, grid, 0.5, beta_of);
    const auto [lo95, hi95] = analysis::credible_band(rec, grid, 0.95, beta_of);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(lo95[i] <= lo50[i]);
      CHECK(hi95[i] >= hi50[i]);
    }
  }

  SUBCASE("bad inputs are rejected") {
    CHECK_THROWS_AS(analysis::credible_band(mcmc::ChainRecord{}, grid, 0.95, beta_of),
                    std::invalid_argument);
    const auto rec = record_from({coeffs({0, 0, 0, 0, 0})});
    CHECK_THROWS_AS(analysis::credible_band(rec, grid, 1.5, beta_of), std::invalid_argument);
  }
}

TEST_CASE("reconstruction error") {
  const auto truth = coeffs({-0.6, 0.7, 2.0, 0.1, -0.08});

  SUBCASE("zero for a perfect reconstruction") {
    CHECK(analysis::reconstruction_error(truth, truth, 0.05, analysis::ErrorNorm::Linf) == 0.0);
    CHECK(analysis::reconstruction_error(truth, truth, 0.05, analysis::ErrorNorm::L2) == 0.0);
  }

  SUBCASE("constant difference") {
    auto shifted = truth;
    shifted.at_k(0) += 0.7;
    const double eps = 0.1;
    CHECK(analysis::reconstruction_error(shifted, truth, eps, analysis::ErrorNorm::Linf) ==
          doctest::Approx(0.7).epsilon(1e-12));
    CHECK(analysis::reconstruction_error(shifted, truth, eps, analysis::ErrorNorm::L2) ==
          doctest::Approx(0.7 * std::sqrt(1.0 - 2 * eps)).epsilon(1e-12));
  }

  SUBCASE("sinusoidal difference against the analytic integral") {
    // difference sin(2 pi x): integral of sin^2 over (0,1) is 1/2
    auto mean = coeffs({0.0, 0.0, 0.0, 1.0, 0.0});
    const auto zero = prior::CoeffVector(2);
    CHECK(analysis::reconstruction_error(mean, zero, 0.0, analysis::ErrorNorm::L2) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
    CHECK(analysis::reconstruction_error(mean, zero, 0.0, analysis::ErrorNorm::Linf) ==
          doctest::Approx(1.0).epsilon(1e-4));
  }

  SUBCASE("L2 error is non-increasing in epsilon") {
    auto mean = coeffs({0.2, -0.4, 0.3, 0.8, 0.1});
    double prev = analysis::reconstruction_error(mean, truth, 0.0, analysis::ErrorNorm::L2);
    for (double eps : {0.05, 0.1, 0.2, 0.3}) {
      const double e = analysis::reconstruction_error(mean, truth, eps, analysis::ErrorNorm::L2);
      CHECK(e <= prev + 1e-14);
      prev = e;
    }
  }

  SUBCASE("epsilon >= 1/2 is rejected") {
    CHECK_THROWS_AS(analysis::reconstruction_error(truth, truth, 0.5, analysis::ErrorNorm::L2),
                    std::invalid_argument);
  }
}

TEST_CASE("effective sample size") {
  SUBCASE("iid series") {
    RngStream rng(33);
    std::vector<double> series(10000);
    for (auto& v : series) v = rng.normal();
    const double ess = analysis::effective_sample_size(series);
    CHECK(ess >= 0.8 * 10000);
    CHECK(ess <= 1.2 * 10000);
  }

  SUBCASE("constant series reports one") {
    std::vector<double> series(100, 3.14);
    CHECK(analysis::effective_sample_size(series) == 1.0);
  }

  SUBCASE("AR(1) series against the analytic value") {
    const double phi = 0.9;
    const long n = 100000;
    RngStream rng(44);
    std::vector<double> series(n);
    series[0] = rng.normal();
    for (long i = 1; i < n; ++i)
      series[i] = phi * series[i - 1] + std::sqrt(1 - phi * phi) * rng.normal();
    const double ess = analysis::effective_sample_size(series);
    const double expected = n * (1 - phi) / (1 + phi);
    CHECK(ess >= 0.8 * expected);
    CHECK(ess <= 1.2 * expected);
  }

  SUBCASE("short series are rejected") {
    std::vector<double> series(9, 1.0);
    CHECK_THROWS_AS(analysis::effective_sample_size(series), std::invalid_argument);
  }
}

TEST_CASE("summary of a flat-likelihood chain") {
  prior::PriorSpec spec;
  spec.K = 2;
  mcmc::ChainConfig config;
  config.iterations = 30000;
  config.burn_in = 0;
  config.gamma0 = 0.125;  // step 0.5
  config.thinning = 1;
  config.seed = 2311;
  RngStream init_rng(7);
  const auto init = prior::sample_coeffs(spec, init_rng);
  const auto rec = mcmc::run_chain(
      config, spec, [](const prior::CoeffVector&) { return 0.0; }, init);

  const auto truth = coeffs({-0.6, 0.7, 2.0, 0.1, -0.08});
  const auto summary = analysis::summarize(rec, truth, 0.0, 0.05, 0.95, 64);

  // prior-centred mean and wide bands
  for (int k = -2; k <= 2; ++k) {
    const double w = prior::weight(spec, k);
    std::vector<double> series;
    for (const auto& s : rec.samples) series.push_back(s.at_k(k));
    const double ess = analysis::effective_sample_size(series);
    CHECK(std::abs(summary.mean_coeffs.at_k(k)) <= 4.0 * w / std::sqrt(ess));
  }
  for (std::size_t i = 0; i < summary.grid.size(); ++i) {
    CHECK(summary.band_lower[i] <= summary.band_upper[i]);
    CHECK(summary.band_upper[i] - summary.band_lower[i] > 0.5);
  }
  CHECK(summary.errors.at("theta_l2") > 0.0);
  CHECK(summary.ess.size() == 5);
}
