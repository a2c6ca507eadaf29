#pragma once

#include <vector>

#include "robin/rng.hpp"

namespace robin::prior {

enum class Family { Matern, SquaredExp };

// Truncated trigonometric-series Gaussian prior. Coefficients are indexed
// k = -K..K with basis phi_k(x) = sin(2*pi*k*x) for k > 0, cos(2*pi*k*x)
// for k < 0 and phi_0 = 1. The optional rescaling shrinks the amplitude
// with the observation count N.
struct PriorSpec {
  Family family = Family::Matern;
  double alpha = 1.0;   // Matern smoothness, used iff family == Matern
  double r = 1.0;       // squared-exponential decay, used iff family == SquaredExp
  int K = 2;            // truncation order, coefficients for |k| <= K
  bool rescale = false;
  double rescale_N = 0; // observation count driving the rescaling when on
};

struct CoeffVector {
  int K = 0;
  std::vector<double> theta;  // length 2K+1, ordered k = -K..K

  CoeffVector() = default;
  explicit CoeffVector(int k) : K(k), theta(2 * k + 1, 0.0) {}

  double& at_k(int k) { return theta[static_cast<std::size_t>(k + K)]; }
  double at_k(int k) const { return theta[static_cast<std::size_t>(k + K)]; }
  int size() const { return 2 * K + 1; }
};

// Spectral weight w_k: (1+k^2)^(-alpha/2) for Matern, exp(-r k^2/2) for
// the squared exponential.
double weight(const PriorSpec& spec, int k);

// Amplitude factor kappa_N: N^(-1/(4*alpha+2)) for Matern, 1/log(N) for the
// squared exponential; 1 when rescaling is off.
double rescale_factor(const PriorSpec& spec, double N);

// The factor baked into samples/covariance for this spec.
double kappa(const PriorSpec& spec);

// theta_k = kappa * w_k * g_k with g_k i.i.d. standard normal.
CoeffVector sample_coeffs(const PriorSpec& spec, RngStream& rng);

// Evaluate the truncated series at x in [0,1].
double eval_theta(const CoeffVector& coeffs, double x);

// Truncated covariance sum_{|k|<=K} kappa^2 w_k^2 phi_k(x) phi_k(y).
double covariance(const PriorSpec& spec, double x, double y);

}  // namespace robin::prior
