#include "robin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robin::analysis {

namespace {

// Linear-interpolation quantile of unsorted values; q=0 gives the minimum,
// q=1 the maximum.
double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * (static_cast<double>(v.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(lo);
  return (1.0 - frac) * v[lo] + frac * v[lo + 1];
}

}  // namespace

prior::CoeffVector posterior_mean(const mcmc::ChainRecord& record) {
  if (record.samples.empty()) throw std::invalid_argument("posterior_mean: empty chain record");
  prior::CoeffVector mean(record.K);
  for (const auto& s : record.samples)
    for (int i = 0; i < mean.size(); ++i) mean.theta[i] += s.theta[i];
  for (auto& t : mean.theta) t /= static_cast<double>(record.samples.size());
  return mean;
}

std::pair<std::vector<double>, std::vector<double>> credible_band(
    const mcmc::ChainRecord& record, const std::vector<double>& grid, double level,
    const CurveTransform& transform) {
  if (record.samples.empty()) throw std::invalid_argument("credible_band: empty chain record");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("credible_band: level must lie in (0,1)");

  const double qlo = (1.0 - level) / 2.0;
  const double qhi = (1.0 + level) / 2.0;
  std::vector<double> lower, upper;
  lower.reserve(grid.size());
  upper.reserve(grid.size());
  std::vector<double> vals(record.samples.size());
  for (double x : grid) {
    for (std::size_t s = 0; s < record.samples.size(); ++s)
      vals[s] = transform(record.samples[s], x);
    lower.push_back(quantile(vals, qlo));
    upper.push_back(quantile(vals, qhi));
  }
  return {std::move(lower), std::move(upper)};
}

double curve_error(const std::function<double(double)>& diff, double epsilon, ErrorNorm norm) {
  if (!(epsilon >= 0.0 && epsilon < 0.5))
    throw std::invalid_argument("curve_error: epsilon must lie in [0, 1/2)");

  if (norm == ErrorNorm::Linf) {
    const int n = 1000;
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = epsilon + (1.0 - 2.0 * epsilon) * (i + 0.5) / n;
      m = std::max(m, std::abs(diff(x)));
    }
    return m;
  }

  const int n = 1001;
  const double hgrid = (1.0 - 2.0 * epsilon) / (n - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = epsilon + hgrid * i;
    const double d = diff(x);
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += w * d * d;
  }
  return std::sqrt(sum * hgrid);
}

double reconstruction_error(const prior::CoeffVector& mean_coeffs, const prior::CoeffVector& truth,
                            double epsilon, ErrorNorm norm) {
  return curve_error(
      [&](double x) { return prior::eval_theta(mean_coeffs, x) - prior::eval_theta(truth, x); },
      epsilon, norm);
}

double effective_sample_size(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 10) throw std::invalid_argument("effective_sample_size: series too short");

  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);

  double c0 = 0.0;
  for (double v : series) c0 += (v - mean) * (v - mean);
  c0 /= static_cast<double>(n);
  if (c0 <= 0.0) return 1.0;  // constant series

  double rho_sum = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    double ct = 0.0;
    for (std::size_t i = 0; i + t < n; ++i) ct += (series[i] - mean) * (series[i + t] - mean);
    ct /= static_cast<double>(n);
    const double rho = ct / c0;
    if (rho <= 0.0) break;
    rho_sum += rho;
  }
  const double ess = static_cast<double>(n) / (1.0 + 2.0 * rho_sum);
  return std::clamp(ess, 1.0, static_cast<double>(n));
}

PosteriorSummary summarize(const mcmc::ChainRecord& record, const prior::CoeffVector& truth,
                           double m_beta, double epsilon, double level, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("summarize: grid_size must be >= 2");

  PosteriorSummary s;
  s.mean_coeffs = posterior_mean(record);
  s.acceptance_rate = record.acceptance_rate;

  s.grid.reserve(grid_size);
  for (int i = 0; i < grid_size; ++i)
    s.grid.push_back(static_cast<double>(i) / (grid_size - 1));

  auto beta_of = [m_beta](const prior::CoeffVector& c, double x) {
    return m_beta + std::exp(prior::eval_theta(c, x));
  };
  s.beta_mean_curve.reserve(grid_size);
  for (double x : s.grid) s.beta_mean_curve.push_back(beta_of(s.mean_coeffs, x));

  std::tie(s.band_lower, s.band_upper) = credible_band(record, s.grid, level, beta_of);

  s.errors["theta_linf"] = reconstruction_error(s.mean_coeffs, truth, epsilon, ErrorNorm::Linf);
  s.errors["theta_l2"] = reconstruction_error(s.mean_coeffs, truth, epsilon, ErrorNorm::L2);
  auto beta_diff = [&](double x) { return beta_of(s.mean_coeffs, x) - beta_of(truth, x); };
  s.errors["beta_linf"] = curve_error(beta_diff, epsilon, ErrorNorm::Linf);
  s.errors["beta_l2"] = curve_error(beta_diff, epsilon, ErrorNorm::L2);

  for (int k = -record.K; k <= record.K; ++k) {
    std::vector<double> series;
    series.reserve(record.samples.size());
    for (const auto& smp : record.samples) series.push_back(smp.at_k(k));
    s.ess.push_back(series.size() >= 10 ? effective_sample_size(series)
                                        : static_cast<double>(series.size()));
  }
  return s;
}

}  // namespace robin::analysis
