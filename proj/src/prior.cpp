#include "robin/prior.hpp"

#include <cmath>
#include <stdexcept>

namespace robin::prior {

namespace {

double basis(int k, double x) {
  if (k > 0) return std::sin(2.0 * M_PI * k * x);
  if (k < 0) return std::cos(2.0 * M_PI * k * x);
  return 1.0;
}

void validate(const PriorSpec& spec) {
  if (spec.K < 0) throw std::invalid_argument("PriorSpec: K must be >= 0");
  if (spec.family == Family::Matern && !(spec.alpha > 0.5))
    throw std::invalid_argument("PriorSpec: alpha must exceed 1/2");
  if (spec.family == Family::SquaredExp && !(spec.r > 0.0))
    throw std::invalid_argument("PriorSpec: r must be positive");
}

}  // namespace

double weight(const PriorSpec& spec, int k) {
  validate(spec);
  if (k > spec.K || k < -spec.K)
    throw std::invalid_argument("weight: |k| exceeds the truncation order");
  const double k2 = static_cast<double>(k) * k;
  if (spec.family == Family::Matern) return std::pow(1.0 + k2, -spec.alpha / 2.0);
  return std::exp(-0.5 * spec.r * k2);
}

double rescale_factor(const PriorSpec& spec, double N) {
  validate(spec);
  if (!spec.rescale) return 1.0;
  if (!(N >= 2.0)) throw std::invalid_argument("rescale_factor: N must be >= 2 when rescaling is on");
  if (spec.family == Family::Matern) return std::pow(N, -1.0 / (4.0 * spec.alpha + 2.0));
  return 1.0 / std::log(N);
}

double kappa(const PriorSpec& spec) { return rescale_factor(spec, spec.rescale_N); }

CoeffVector sample_coeffs(const PriorSpec& spec, RngStream& rng) {
  validate(spec);
  const double kap = kappa(spec);
  CoeffVector c(spec.K);
  for (int k = -spec.K; k <= spec.K; ++k)
    c.at_k(k) = kap * weight(spec, k) * rng.normal();
  return c;
}

double eval_theta(const CoeffVector& coeffs, double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("eval_theta: x outside [0,1]");
  double sum = 0.0;
  for (int k = -coeffs.K; k <= coeffs.K; ++k) sum += coeffs.at_k(k) * basis(k, x);
  return sum;
}

double covariance(const PriorSpec& spec, double x, double y) {
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
    throw std::invalid_argument("covariance: arguments outside [0,1]");
  const double kap2 = kappa(spec) * kappa(spec);
  double sum = 0.0;
  for (int k = -spec.K; k <= spec.K; ++k) {
    const double w = weight(spec, k);
    sum += kap2 * w * w * basis(k, x) * basis(k, y);
  }
  return sum;
}

}  // namespace robin::prior
