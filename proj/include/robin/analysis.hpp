#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "robin/mcmc.hpp"
#include "robin/prior.hpp"

namespace robin::analysis {

enum class ErrorNorm { Linf, L2 };

struct PosteriorSummary {
  prior::CoeffVector mean_coeffs;
  std::vector<double> grid;             // x-values on [0,1]
  std::vector<double> beta_mean_curve;  // beta(posterior-mean theta) on the grid
  std::vector<double> band_lower, band_upper;
  std::map<std::string, double> errors;
  double acceptance_rate = 0.0;
  std::vector<double> ess;  // per coefficient, ordered k = -K..K
};

prior::CoeffVector posterior_mean(const mcmc::ChainRecord& record);

// Curve evaluated from a sample at a grid point, e.g. beta(theta_s)(x).
using CurveTransform = std::function<double(const prior::CoeffVector&, double)>;

// Pointwise empirical quantile band at levels (1 -/+ level)/2.
std::pair<std::vector<double>, std::vector<double>> credible_band(
    const mcmc::ChainRecord& record, const std::vector<double>& grid, double level,
    const CurveTransform& transform);

// Norm of eval_theta(mean) - eval_theta(truth) over the interior
// (epsilon, 1-epsilon): Linf on a 1000-point grid, L2 by composite
// trapezoid quadrature.
double reconstruction_error(const prior::CoeffVector& mean_coeffs, const prior::CoeffVector& truth,
                            double epsilon, ErrorNorm norm);

// Same norms for an arbitrary pointwise difference (used for the auxiliary
// beta-level error).
double curve_error(const std::function<double(double)>& diff, double epsilon, ErrorNorm norm);

// N / (1 + 2 sum rho_t) with the initial-positive-sequence truncation of
// the empirical autocorrelations. A constant series reports 1.
double effective_sample_size(const std::vector<double>& series);

PosteriorSummary summarize(const mcmc::ChainRecord& record, const prior::CoeffVector& truth,
                           double m_beta, double epsilon, double level, int grid_size);

}  // namespace robin::analysis
