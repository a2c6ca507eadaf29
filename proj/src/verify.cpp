#include "robin/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

#include "robin/analysis.hpp"
#include "robin/fem_laplace.hpp"
#include "robin/fem_stokes.hpp"
#include "robin/mcmc.hpp"
#include "robin/mesh.hpp"
#include "robin/prior.hpp"
#include "quadrature.hpp"

namespace robin::verify {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

// ---------------------------------------------------------------------------
// Manufactured solutions on (0,1) x (0,0.2)
//
// Laplace: u(x,y) = sin(pi x) e^y + 0.2 sin(2 pi x) e^{2y}. It vanishes on
// the sides, and on the bottom edge the ratio -du/dnu / u reduces to
// (1 + 0.8 cos(pi x)) / (1 + 0.4 cos(pi x)), a smooth positive Robin
// coefficient. The residual -Laplace(u) enters as a volume source.

struct LaplaceMMS {
  static double exact(double x, double y) {
    return std::sin(kPi * x) * std::exp(y) + 0.2 * std::sin(2 * kPi * x) * std::exp(2 * y);
  }
  static std::array<double, 2> exact_grad(double x, double y) {
    return {kPi * std::cos(kPi * x) * std::exp(y) + 0.4 * kPi * std::cos(2 * kPi * x) * std::exp(2 * y),
            std::sin(kPi * x) * std::exp(y) + 0.4 * std::sin(2 * kPi * x) * std::exp(2 * y)};
  }
  static fem::LaplaceProblem problem(double Ly, double perturbation) {
    fem::LaplaceProblem p;
    p.beta = [](double x) {
      const double c = std::cos(kPi * x);
      return (1.0 + 0.8 * c) / (1.0 + 0.4 * c);
    };
    p.neumann_top = [Ly](double x) {
      return std::sin(kPi * x) * std::exp(Ly) + 0.4 * std::sin(2 * kPi * x) * std::exp(2 * Ly);
    };
    p.volume_source = [](double x, double y) {
      return (kPi * kPi - 1.0) * std::sin(kPi * x) * std::exp(y) +
             0.2 * (4 * kPi * kPi - 4.0) * std::sin(2 * kPi * x) * std::exp(2 * y);
    };
    p.stiffness_perturbation = perturbation;
    return p;
  }
};

struct LaplaceErrors {
  double l2 = 0, h1 = 0;
};

LaplaceErrors laplace_mms_errors(int nx, int ny, double perturbation) {
  const double Ly = 0.2;
  const auto mesh = build_rect_mesh(nx, ny, 1.0, Ly);
  const auto field = fem::solve_laplace(mesh, LaplaceMMS::problem(Ly, perturbation));

  LaplaceErrors e;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const double area = triangle_area(mesh, t);
    const auto& tri = mesh.triangles[t];
    for (const auto& q : quad::tri7) {
      const double l[3] = {q.l0, q.l1, q.l2};
      double x = 0, y = 0;
      for (int i = 0; i < 3; ++i) {
        x += l[i] * mesh.nodes[tri[i]][0];
        y += l[i] * mesh.nodes[tri[i]][1];
      }
      const double du = fem::eval_at(field, x, y) - LaplaceMMS::exact(x, y);
      const auto gh = fem::eval_grad_at(field, x, y);
      const auto ge = LaplaceMMS::exact_grad(x, y);
      e.l2 += area * q.w * du * du;
      e.h1 += area * q.w * ((gh[0] - ge[0]) * (gh[0] - ge[0]) + (gh[1] - ge[1]) * (gh[1] - ge[1]));
    }
  }
  e.l2 = std::sqrt(e.l2);
  e.h1 = std::sqrt(e.h1);
  return e;
}

// Stokes: divergence-free velocity from the stream function
// psi = sin(pi x) sin(pi y) and pressure p = cos(pi x) cos(pi y); the
// boundary data carries the full tractions so all four sides get
// inhomogeneous natural conditions.

struct StokesMMS {
  static fem::Vec2 exact_u(double x, double y) {
    return {kPi * std::sin(kPi * x) * std::cos(kPi * y), -kPi * std::cos(kPi * x) * std::sin(kPi * y)};
  }
  static double exact_p(double x, double y) { return std::cos(kPi * x) * std::cos(kPi * y); }

  static fem::StokesProblem problem(double Ly) {
    fem::StokesProblem p;
    p.beta = [](double x) { return 2.0 + std::cos(2 * kPi * x); };
    p.body_force = [](double x, double y) -> fem::Vec2 {
      return {(2 * kPi * kPi * kPi - kPi) * std::sin(kPi * x) * std::cos(kPi * y),
              -(2 * kPi * kPi * kPi + kPi) * std::cos(kPi * x) * std::sin(kPi * y)};
    };
    p.traction_top = [Ly](double x) -> fem::Vec2 {
      return {-kPi * kPi * std::sin(kPi * x) * std::sin(kPi * Ly),
              -(kPi * kPi + 1.0) * std::cos(kPi * x) * std::cos(kPi * Ly)};
    };
    p.robin_rhs = [](double x) -> fem::Vec2 {
      const double beta = 2.0 + std::cos(2 * kPi * x);
      return {beta * kPi * std::sin(kPi * x), (kPi * kPi + 1.0) * std::cos(kPi * x)};
    };
    p.traction_left = [](double y) -> fem::Vec2 { return {(1.0 - kPi * kPi) * std::cos(kPi * y), 0.0}; };
    p.traction_right = [](double y) -> fem::Vec2 { return {(1.0 - kPi * kPi) * std::cos(kPi * y), 0.0}; };
    return p;
  }
};

struct StokesErrors {
  double vel_l2 = 0, p_l2 = 0, div_residual = 0;
};

StokesErrors stokes_mms_errors(int nx, int ny) {
  const double Ly = 0.2;
  const auto mesh = build_rect_mesh(nx, ny, 1.0, Ly);
  fem::StokesSolver solver(mesh);
  const auto [u, pr] = solver.solve(StokesMMS::problem(Ly));

  StokesErrors e;
  e.div_residual = solver.last_div_residual();
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const double area = triangle_area(mesh, t);
    const auto& tri = mesh.triangles[t];
    for (const auto& q : quad::tri7) {
      const double l[3] = {q.l0, q.l1, q.l2};
      double x = 0, y = 0;
      for (int i = 0; i < 3; ++i) {
        x += l[i] * mesh.nodes[tri[i]][0];
        y += l[i] * mesh.nodes[tri[i]][1];
      }
      const auto uh = fem::eval_velocity_at(u, x, y);
      const auto ue = StokesMMS::exact_u(x, y);
      const double dp = fem::eval_pressure_at(pr, x, y) - StokesMMS::exact_p(x, y);
      e.vel_l2 += area * q.w * ((uh[0] - ue[0]) * (uh[0] - ue[0]) + (uh[1] - ue[1]) * (uh[1] - ue[1]));
      e.p_l2 += area * q.w * dp * dp;
    }
  }
  e.vel_l2 = std::sqrt(e.vel_l2);
  e.p_l2 = std::sqrt(e.p_l2);
  return e;
}

double order(double coarse, double fine) { return std::log2(coarse / fine); }

double lag1_autocorr(const std::vector<double>& v) {
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double c0 = 0, c1 = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    c0 += (v[i] - mean) * (v[i] - mean);
    if (i + 1 < v.size()) c1 += (v[i] - mean) * (v[i + 1] - mean);
  }
  return c1 / c0;
}

}  // namespace

std::vector<CheckResult> verify_fem(bool inject_fault) {
  std::vector<CheckResult> results;
  const double pert = inject_fault ? 0.5 : 0.0;

  {
    const auto e1 = laplace_mms_errors(20, 4, pert);
    const auto e2 = laplace_mms_errors(40, 8, pert);
    const auto e3 = laplace_mms_errors(80, 16, pert);
    const double l2a = order(e1.l2, e2.l2), l2b = order(e2.l2, e3.l2);
    const double h1a = order(e1.h1, e2.h1), h1b = order(e2.h1, e3.h1);
    const bool pass = std::min(l2a, l2b) >= 1.8 && std::min(h1a, h1b) >= 0.9;
    results.push_back({"laplace-mms", pass,
                       "L2 orders " + fmt(l2a) + ", " + fmt(l2b) + " (>= 1.8); H1 orders " + fmt(h1a) +
                           ", " + fmt(h1b) + " (>= 0.9)"});
  }

  {
    const auto e1 = stokes_mms_errors(20, 4);
    const auto e2 = stokes_mms_errors(40, 8);
    const auto e3 = stokes_mms_errors(80, 16);
    const double va = order(e1.vel_l2, e2.vel_l2), vb = order(e2.vel_l2, e3.vel_l2);
    const double pa = order(e1.p_l2, e2.p_l2), pb = order(e2.p_l2, e3.p_l2);
    const double div = std::max({e1.div_residual, e2.div_residual, e3.div_residual});
    const bool pass = std::min(va, vb) >= 2.5 && std::min(pa, pb) >= 1.5 && div <= 1e-8;
    results.push_back({"stokes-mms", pass,
                       "velocity L2 orders " + fmt(va) + ", " + fmt(vb) + " (>= 2.5); pressure L2 orders " +
                           fmt(pa) + ", " + fmt(pb) + " (>= 1.5); div residual " + fmt(div)});
  }
  return results;
}

std::vector<CheckResult> verify_prior() {
  std::vector<CheckResult> results;
  const long n = 100000;

  for (const auto family : {prior::Family::Matern, prior::Family::SquaredExp}) {
    prior::PriorSpec spec;
    spec.family = family;
    spec.alpha = 1.0;
    spec.r = 1.0;
    spec.K = 2;
    const std::string fname = family == prior::Family::Matern ? "matern" : "squared-exp";

    RngStream rng(family == prior::Family::Matern ? 7101 : 7102);
    std::vector<prior::CoeffVector> draws;
    draws.reserve(n);
    for (long i = 0; i < n; ++i) draws.push_back(prior::sample_coeffs(spec, rng));

    bool var_ok = true;
    double worst = 0;
    for (int k = -2; k <= 2; ++k) {
      double m = 0, s2 = 0;
      for (const auto& d : draws) m += d.at_k(k);
      m /= n;
      for (const auto& d : draws) s2 += (d.at_k(k) - m) * (d.at_k(k) - m);
      s2 /= n;
      const double w2 = prior::weight(spec, k) * prior::weight(spec, k);
      const double tol = 3.0 * w2 * std::sqrt(2.0 / n);
      worst = std::max(worst, std::abs(s2 - w2) / tol);
      var_ok = var_ok && std::abs(s2 - w2) <= tol;
    }
    results.push_back({"prior-variance-" + fname, var_ok,
                       "coefficient variances over 1e5 draws, worst deviation " + fmt(worst) +
                           " of the 3-sigma band"});

    RngStream prng(991);
    bool cov_ok = true;
    double worst_cov = 0;
    for (int pair = 0; pair < 5; ++pair) {
      const double x = prng.uniform(), y = prng.uniform();
      double mx = 0, my = 0;
      std::vector<double> tx(n), ty(n);
      for (long i = 0; i < n; ++i) {
        tx[i] = prior::eval_theta(draws[i], x);
        ty[i] = prior::eval_theta(draws[i], y);
        mx += tx[i];
        my += ty[i];
      }
      mx /= n;
      my /= n;
      double cov = 0;
      for (long i = 0; i < n; ++i) cov += (tx[i] - mx) * (ty[i] - my);
      cov /= n;
      const double kxy = prior::covariance(spec, x, y);
      const double se = std::sqrt((prior::covariance(spec, x, x) * prior::covariance(spec, y, y) +
                                   kxy * kxy) /
                                  n);
      worst_cov = std::max(worst_cov, std::abs(cov - kxy) / (3.0 * se));
      cov_ok = cov_ok && std::abs(cov - kxy) <= 3.0 * se;
    }
    results.push_back({"prior-covariance-" + fname, cov_ok,
                       "Monte Carlo covariance at 5 random pairs, worst deviation " + fmt(worst_cov) +
                           " of the 3-sigma band"});
  }
  return results;
}

std::vector<CheckResult> verify_mcmc() {
  std::vector<CheckResult> results;

  // pCN prior invariance: flat likelihood at fixed step s = 0.5.
  {
    prior::PriorSpec spec;
    spec.K = 2;
    const double s = 0.5;
    mcmc::ChainConfig config;
    config.iterations = 100000;
    config.burn_in = 0;  // no adaptation: the step stays at sqrt(2*gamma0)
    config.gamma0 = s * s / 2.0;
    config.thinning = 1;
    config.seed = 515151;

    RngStream init_rng(99);
    const auto init = prior::sample_coeffs(spec, init_rng);
    const auto record =
        mcmc::run_chain(config, spec, [](const prior::CoeffVector&) { return 0.0; }, init);

    const double n = static_cast<double>(record.size());
    const double n_eff_var = n * s * s / (2.0 - s * s);
    const double rho_expected = std::sqrt(1.0 - s * s);
    bool pass = record.acceptance_rate == 1.0;
    double worst_var = 0, worst_rho = 0;
    for (int k = -2; k <= 2; ++k) {
      std::vector<double> series;
      series.reserve(record.size());
      for (const auto& smp : record.samples) series.push_back(smp.at_k(k));
      double m = 0, v = 0;
      for (double x : series) m += x;
      m /= n;
      for (double x : series) v += (x - m) * (x - m);
      v /= n;
      const double w2 = prior::weight(spec, k) * prior::weight(spec, k);
      const double tol = 3.0 * w2 * std::sqrt(2.0 / n_eff_var);
      worst_var = std::max(worst_var, std::abs(v - w2) / tol);
      pass = pass && std::abs(v - w2) <= tol;
      const double rho = lag1_autocorr(series);
      worst_rho = std::max(worst_rho, std::abs(rho - rho_expected));
      pass = pass && std::abs(rho - rho_expected) <= 0.02;
    }
    results.push_back({"pcn-prior-invariance", pass,
                       "variance deviation " + fmt(worst_var) + " of 3-sigma band; |lag1 - " +
                           fmt(rho_expected) + "| = " + fmt(worst_rho) + " (<= 0.02)"});
  }

  // Conjugate oracle: linear forward map, closed-form Gaussian posterior.
  {
    prior::PriorSpec spec;
    spec.K = 2;
    const int dim = spec.K * 2 + 1;
    const int n_obs = 10;
    const double sigma = 0.5;

    RngStream setup_rng(20240601);
    Eigen::MatrixXd A(n_obs, dim);
    for (int i = 0; i < n_obs; ++i)
      for (int j = 0; j < dim; ++j) A(i, j) = setup_rng.normal();
    Eigen::VectorXd theta_true(dim);
    theta_true << 0.3, -0.5, 1.0, 0.2, -0.1;
    Eigen::VectorXd y = A * theta_true;
    for (int i = 0; i < n_obs; ++i) y(i) += sigma * setup_rng.normal();

    Eigen::MatrixXd Cinv = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = -spec.K; k <= spec.K; ++k) {
      const double w = prior::weight(spec, k);
      Cinv(k + spec.K, k + spec.K) = 1.0 / (w * w);
    }
    const Eigen::MatrixXd post_cov = (Cinv + A.transpose() * A / (sigma * sigma)).inverse();
    const Eigen::VectorXd post_mean = post_cov * (A.transpose() * y) / (sigma * sigma);

    mcmc::ChainConfig config;
    config.iterations = 220000;
    config.burn_in = 20000;
    config.gamma0 = 0.005;
    config.thinning = 1;
    config.adapt_interval = 1000;
    config.adapt_gain = 2.0;
    config.seed = 424242;

    const auto loglik = [&](const prior::CoeffVector& c) {
      Eigen::Map<const Eigen::VectorXd> t(c.theta.data(), dim);
      return -(y - A * t).squaredNorm() / (2.0 * sigma * sigma);
    };
    const auto record = mcmc::run_chain(config, spec, loglik, prior::CoeffVector(spec.K));

    bool pass = true;
    double worst_mean = 0, worst_var = 0;
    for (int k = -spec.K; k <= spec.K; ++k) {
      std::vector<double> series;
      series.reserve(record.size());
      for (const auto& smp : record.samples) series.push_back(smp.at_k(k));
      const double n = static_cast<double>(series.size());
      double m = 0, v = 0;
      for (double x : series) m += x;
      m /= n;
      for (double x : series) v += (x - m) * (x - m);
      v /= n;
      const double ess = analysis::effective_sample_size(series);
      const double se_mean = std::sqrt(v / ess);
      const double se_var = v * std::sqrt(2.0 / ess);
      const int i = k + spec.K;
      worst_mean = std::max(worst_mean, std::abs(m - post_mean(i)) / (3.0 * se_mean));
      worst_var = std::max(worst_var, std::abs(v - post_cov(i, i)) / (3.0 * se_var));
      pass = pass && std::abs(m - post_mean(i)) <= 3.0 * se_mean &&
             std::abs(v - post_cov(i, i)) <= 3.0 * se_var;
    }
    results.push_back({"pcn-conjugate-oracle", pass,
                       "posterior mean deviation " + fmt(worst_mean) + ", variance deviation " +
                           fmt(worst_var) + " of the 3-sigma bands"});
  }
  return results;
}

std::vector<CheckResult> run_suite(const std::string& suite, bool inject_fault) {
  std::vector<CheckResult> results;
  auto append = [&](std::vector<CheckResult> r) {
    for (auto& c : r) results.push_back(std::move(c));
  };
  if (suite == "fem" || suite == "all") append(verify_fem(inject_fault));
  if (suite == "prior" || suite == "all") append(verify_prior());
  if (suite == "mcmc" || suite == "all") append(verify_mcmc());
  if (results.empty()) results.push_back({"suite", false, "unknown suite '" + suite + "'"});
  return results;
}

}  // namespace robin::verify
