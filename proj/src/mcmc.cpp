#include "robin/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace robin::mcmc {

namespace {

bool accept_log_ratio(double logr, RngStream& rng) {
  if (logr >= 0.0) return true;
  return std::log(rng.uniform()) < logr;
}

prior::CoeffVector propose(const ChainState& state, const prior::PriorSpec& spec, RngStream& rng) {
  const auto xi = prior::sample_coeffs(spec, rng);
  const double c = std::sqrt(std::max(0.0, 1.0 - state.step * state.step));
  prior::CoeffVector prop(spec.K);
  for (int i = 0; i < prop.size(); ++i)
    prop.theta[i] = c * state.theta.theta[i] + state.step * xi.theta[i];
  return prop;
}

void validate(const ChainConfig& config) {
  if (config.iterations < 1) throw std::invalid_argument("ChainConfig: iterations must be >= 1");
  if (config.burn_in < 0 || config.burn_in >= config.iterations)
    throw std::invalid_argument("ChainConfig: burn_in must satisfy 0 <= burn_in < iterations");
  if (!(config.gamma0 > 0.0)) throw std::invalid_argument("ChainConfig: gamma0 must be positive");
  if (!(config.target_accept > 0.0 && config.target_accept < 1.0))
    throw std::invalid_argument("ChainConfig: target_accept must lie in (0,1)");
  if (config.adapt_interval < 1) throw std::invalid_argument("ChainConfig: adapt_interval must be >= 1");
  if (!(config.adapt_gain > 0.0)) throw std::invalid_argument("ChainConfig: adapt_gain must be positive");
  if (config.thinning < 1) throw std::invalid_argument("ChainConfig: thinning must be >= 1");
}

// Shared driver for the single- and two-level chains.
template <typename StepFn, typename InitFn>
ChainRecord drive(const ChainConfig& config, const prior::PriorSpec& spec,
                  const prior::CoeffVector& init, InitFn&& init_logliks, StepFn&& step_fn) {
  validate(config);
  if (init.K != spec.K) throw std::invalid_argument("run_chain: init truncation differs from the prior");

  RngStream rng(config.seed);
  ChainState state;
  state.theta = init;
  state.step = std::clamp(std::sqrt(2.0 * config.gamma0), 1e-12, 1.0);
  init_logliks(state);

  ChainRecord rec;
  rec.K = spec.K;
  rec.total_iterations = config.iterations;
  rec.burn_in = config.burn_in;

  long window_accepts = 0, window_count = 0;
  long post_accepts = 0, post_count = 0;
  long proposals = 0, failures = 0;
  bool warned = false;

  for (long it = 1; it <= config.iterations; ++it) {
    const StepOutcome out = step_fn(state, rng);
    ++proposals;
    if (out.solver_failed) {
      ++failures;
      if (!warned) {
        std::cerr << "run_chain: forward solve failed, proposal rejected\n";
        warned = true;
      }
      if (proposals >= 20 && 2 * failures > proposals)
        throw std::runtime_error("run_chain: more than half of all proposals failed the forward solve");
    }

    window_accepts += out.accepted;
    ++window_count;
    if (it <= config.burn_in && it % config.adapt_interval == 0) {
      const double observed = static_cast<double>(window_accepts) / window_count;
      state.step = adapt_step(state.step, observed, config.target_accept, config.adapt_gain);
      window_accepts = 0;
      window_count = 0;
    }

    if (it > config.burn_in) {
      post_accepts += out.accepted;
      ++post_count;
      if ((it - config.burn_in) % config.thinning == 0) {
        rec.iterations.push_back(it);
        rec.samples.push_back(state.theta);
        rec.logliks.push_back(state.loglik);
        rec.accept_flags.push_back(out.accepted ? 1 : 0);
        rec.step_trace.push_back(state.step);
      }
    }
  }

  rec.acceptance_rate = post_count > 0 ? static_cast<double>(post_accepts) / post_count : 0.0;
  rec.solver_failures = failures;
  if (failures > 0)
    std::cerr << "run_chain: " << failures << " of " << proposals << " proposals failed the forward solve\n";
  return rec;
}

}  // namespace

double adapt_step(double step, double observed_accept, double target, double gain) {
  const double s = step * std::exp(gain * (observed_accept - target));
  return std::clamp(s, 1e-12, 1.0);
}

StepOutcome pcn_step(ChainState& state, const prior::PriorSpec& spec, const LogLik& loglik,
                     RngStream& rng) {
  const auto prop = propose(state, spec, rng);

  double ll;
  try {
    ll = loglik(prop);
  } catch (const std::exception&) {
    return {false, true};
  }
  if (!std::isfinite(ll) && !(ll == -std::numeric_limits<double>::infinity()))
    return {false, true};

  StepOutcome out;
  if (accept_log_ratio(ll - state.loglik, rng)) {
    state.theta = prop;
    state.loglik = ll;
    out.accepted = true;
  }
  return out;
}

StepOutcome two_level_step(ChainState& state, const prior::PriorSpec& spec, const LogLik& coarse,
                           const LogLik& fine, RngStream& rng, bool literal) {
  const auto prop = propose(state, spec, rng);

  double llc;
  try {
    llc = coarse(prop);
  } catch (const std::exception&) {
    return {false, true};
  }

  if (!accept_log_ratio(llc - state.coarse_loglik, rng)) return {};

  double llf;
  try {
    llf = fine(prop);
  } catch (const std::exception&) {
    return {false, true};
  }

  const double correction = literal ? 0.0 : (llc - state.coarse_loglik);
  StepOutcome out;
  if (accept_log_ratio((llf - state.loglik) - correction, rng)) {
    state.theta = prop;
    state.loglik = llf;
    state.coarse_loglik = llc;
    out.accepted = true;
  }
  return out;
}

ChainRecord run_chain(const ChainConfig& config, const prior::PriorSpec& spec, const LogLik& loglik,
                      const prior::CoeffVector& init) {
  return drive(
      config, spec, init,
      [&](ChainState& s) { s.loglik = loglik(s.theta); },
      [&](ChainState& s, RngStream& rng) { return pcn_step(s, spec, loglik, rng); });
}

ChainRecord run_chain_two_level(const ChainConfig& config, const prior::PriorSpec& spec,
                                const LogLik& coarse, const LogLik& fine,
                                const prior::CoeffVector& init, bool literal) {
  return drive(
      config, spec, init,
      [&](ChainState& s) {
        s.loglik = fine(s.theta);
        s.coarse_loglik = coarse(s.theta);
      },
      [&](ChainState& s, RngStream& rng) {
        return two_level_step(s, spec, coarse, fine, rng, literal);
      });
}

}  // namespace robin::mcmc
