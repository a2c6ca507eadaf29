#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "robin/fem_laplace.hpp"
#include "robin/mesh.hpp"
#include "robin/prior.hpp"

using namespace robin;
constexpr double kPi = std::numbers::pi;

namespace {

// Manufactured solution u = sin(pi x) e^y + 0.2 sin(2 pi x) e^{2y}:
// vanishes on the sides, smooth positive Robin ratio on the bottom.
double mms_exact(double x, double y) {
  return std::sin(kPi * x) * std::exp(y) + 0.2 * std::sin(2 * kPi * x) * std::exp(2 * y);
}

std::array<double, 2> mms_grad(double x, double y) {
  return {kPi * std::cos(kPi * x) * std::exp(y) + 0.4 * kPi * std::cos(2 * kPi * x) * std::exp(2 * y),
          std::sin(kPi * x) * std::exp(y) + 0.4 * std::sin(2 * kPi * x) * std::exp(2 * y)};
}

fem::LaplaceProblem mms_problem(double Ly) {
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
  return p;
}

struct Errors {
  double l2, h1;
};

Errors mms_errors(int nx, int ny) {
  const double Ly = 0.2;
  const auto mesh = build_rect_mesh(nx, ny, 1.0, Ly);
  const auto field = fem::solve_laplace(mesh, mms_problem(Ly));
  // midpoint-edge quadrature per triangle (degree 2)
  double l2 = 0, h1 = 0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const double area = triangle_area(mesh, t);
    const auto& tri = mesh.triangles[t];
    const double mids[3][2] = {{0.5, 0.5}, {0.0, 0.5}, {0.5, 0.0}};
    for (const auto& m : mids) {
      const double l0 = 1.0 - m[0] - m[1];
      const double x = l0 * mesh.nodes[tri[0]][0] + m[0] * mesh.nodes[tri[1]][0] + m[1] * mesh.nodes[tri[2]][0];
      const double y = l0 * mesh.nodes[tri[0]][1] + m[0] * mesh.nodes[tri[1]][1] + m[1] * mesh.nodes[tri[2]][1];
      const double du = fem::eval_at(field, x, y) - mms_exact(x, y);
      const auto gh = fem::eval_grad_at(field, x, y);
      const auto ge = mms_grad(x, y);
      l2 += area / 3.0 * du * du;
      h1 += area / 3.0 * ((gh[0] - ge[0]) * (gh[0] - ge[0]) + (gh[1] - ge[1]) * (gh[1] - ge[1]));
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

prior::CoeffVector paper_theta0() {
  prior::CoeffVector c(2);
  c.theta = {-0.6, 0.7, 2.0, 0.1, -0.08};
  return c;
}

}  // namespace

TEST_CASE("zero data gives the zero solution") {
  const auto mesh = build_rect_mesh(10, 4, 1.0, 0.2);
  fem::LaplaceProblem p;
  p.beta = [](double) { return 3.0; };
  p.neumann_top = [](double) { return 0.0; };
  const auto field = fem::solve_laplace(mesh, p);
  for (double v : field.values) CHECK(std::abs(v) <= 1e-14);
}

TEST_CASE("manufactured solution converges at order 2 in L2, order 1 in H1") {
  const auto e1 = mms_errors(10, 2);
  const auto e2 = mms_errors(20, 4);
  const auto e3 = mms_errors(40, 8);
  const double l2a = std::log2(e1.l2 / e2.l2);
  const double l2b = std::log2(e2.l2 / e3.l2);
  const double h1a = std::log2(e1.h1 / e2.h1);
  const double h1b = std::log2(e2.h1 / e3.h1);
  CHECK(l2a >= 1.8);
  CHECK(l2b >= 1.8);
  CHECK(h1a >= 0.9);
  CHECK(h1b >= 0.9);
}

TEST_CASE("Dirichlet values vanish exactly on the sides") {
  const auto mesh = build_rect_mesh(12, 4, 1.0, 0.2);
  const auto field = fem::solve_laplace(mesh, mms_problem(0.2));
  for (auto tag : {BoundaryTag::GammaLeft, BoundaryTag::GammaRight})
    for (int n : boundary_nodes(mesh, tag)) CHECK(field.values[n] == 0.0);
}

TEST_CASE("solver reports a tiny algebraic residual") {
  const auto mesh = build_rect_mesh(30, 6, 1.0, 0.2);
  fem::LaplaceSolver solver(mesh);
  fem::LaplaceProblem p;
  p.beta = [](double x) { return 2.0 + std::sin(2 * kPi * x); };
  p.neumann_top = [](double x) { return 10.0 * (std::sin(12 * kPi * x) + 1.0); };
  solver.solve(p);
  CHECK(solver.last_rel_residual() <= 1e-10);
}

TEST_CASE("discrete positivity for nonnegative flux data") {
  const auto mesh = build_rect_mesh(50, 10, 1.0, 0.2);
  const auto theta0 = paper_theta0();
  fem::LaplaceProblem p;
  p.beta = [&](double x) { return std::exp(prior::eval_theta(theta0, x)); };
  p.neumann_top = [](double x) { return 10.0 * (std::sin(12 * kPi * x) + 1.0); };
  const auto field = fem::solve_laplace(mesh, p);
  for (double v : field.values) CHECK(v >= -1e-8);
}

TEST_CASE("stronger drag lowers the trace") {
  const auto mesh = build_rect_mesh(40, 8, 1.0, 0.2);
  const auto theta0 = paper_theta0();
  auto h = [](double x) { return 10.0 * (std::sin(12 * kPi * x) + 1.0); };
  fem::LaplaceProblem weak, strong;
  weak.beta = [&](double x) { return std::exp(prior::eval_theta(theta0, x)); };
  weak.neumann_top = h;
  strong.beta = [&](double x) { return 2.0 * std::exp(prior::eval_theta(theta0, x)); };
  strong.neumann_top = h;
  const auto u_weak = fem::solve_laplace(mesh, weak);
  const auto u_strong = fem::solve_laplace(mesh, strong);
  std::vector<double> pts;
  for (int i = 0; i <= 40; ++i) pts.push_back(i / 40.0);
  const auto t_weak = fem::trace_on_gamma(u_weak, pts);
  const auto t_strong = fem::trace_on_gamma(u_strong, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(t_strong[i] <= t_weak[i] + 1e-8);
}

TEST_CASE("non-positive beta is rejected") {
  const auto mesh = build_rect_mesh(4, 2, 1.0, 0.2);
  fem::LaplaceProblem p;
  p.beta = [](double) { return 0.0; };
  p.neumann_top = [](double) { return 1.0; };
  CHECK_THROWS_AS(fem::solve_laplace(mesh, p), std::invalid_argument);
  p.beta = [](double x) { return x - 0.5; };
  CHECK_THROWS_AS(fem::solve_laplace(mesh, p), std::invalid_argument);
}

TEST_CASE("trace interpolation") {
  const auto mesh = build_rect_mesh(4, 2, 1.0, 0.2);
  fem::ScalarField field;
  field.mesh = &mesh;
  field.values.assign(mesh.n_nodes(), 0.0);

  SUBCASE("zero field gives zeros") {
    const auto tr = fem::trace_on_gamma(field, {0.0, 0.3, 1.0});
    for (double v : tr) CHECK(v == 0.0);
  }

  SUBCASE("nodal identity and midpoint average") {
    const auto top = boundary_nodes(mesh, BoundaryTag::GammaTop);
    field.values[top[1]] = 3.0;  // node at x = 0.25
    field.values[top[2]] = 5.0;  // node at x = 0.5
    const auto tr = fem::trace_on_gamma(field, {0.25, 0.375, 0.5});
    CHECK(tr[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(tr[1] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(tr[2] == doctest::Approx(5.0).epsilon(1e-14));
  }

  SUBCASE("points outside the edge are rejected") {
    CHECK_THROWS_AS(fem::trace_on_gamma(field, {-0.1}), std::invalid_argument);
    CHECK_THROWS_AS(fem::trace_on_gamma(field, {1.1}), std::invalid_argument);
  }
}

TEST_CASE("experiment configuration trace (regression lock)") {
  const auto mesh = build_rect_mesh(400, 50, 1.0, 0.2);
  const auto theta0 = paper_theta0();
  fem::LaplaceProblem p;
  p.beta = [&](double x) { return std::exp(prior::eval_theta(theta0, x)); };
  p.neumann_top = [](double x) { return 10.0 * (std::sin(12 * kPi * x) + 1.0); };
  const auto field = fem::solve_laplace(mesh, p);

  const std::vector<std::pair<double, double>> locked = {
      {0.10, 1.3813246111977344},
      {0.25, 2.5025771001034345},
      {0.40, 3.2049373965960433},
      {0.50, 3.1896236674902214},
      {0.60, 2.9377736217698849},
      {0.75, 2.5605019989017079},
      {0.90, 1.7168721817888037},
  };
  std::vector<double> pts;
  for (const auto& [x, v] : locked) pts.push_back(x);
  const auto tr = fem::trace_on_gamma(field, pts);
  for (std::size_t i = 0; i < locked.size(); ++i) {
    CHECK(std::isfinite(tr[i]));
    CHECK(tr[i] == doctest::Approx(locked[i].second).epsilon(1e-9));
  }
}
