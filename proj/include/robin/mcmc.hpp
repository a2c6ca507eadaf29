#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "robin/prior.hpp"
#include "robin/rng.hpp"

namespace robin::mcmc {

struct ChainConfig {
  long iterations = 50000;
  long burn_in = 10000;
  double gamma0 = 1e-7;        // initial step size is sqrt(2*gamma0)
  double target_accept = 0.33;
  long adapt_interval = 1000;  // adaptation happens during burn-in only
  double adapt_gain = 2.0;
  long thinning = 10;
  std::uint64_t seed = 1;
};

struct ChainState {
  prior::CoeffVector theta;
  double loglik = 0.0;         // log-likelihood at theta (fine level in two-level mode)
  double coarse_loglik = 0.0;  // maintained in two-level mode only
  double step = 1.0;
};

struct ChainRecord {
  int K = 0;
  std::vector<long> iterations;             // iteration index of each record
  std::vector<prior::CoeffVector> samples;  // post burn-in, thinned
  std::vector<double> logliks;
  std::vector<char> accept_flags;
  std::vector<double> step_trace;

  long total_iterations = 0;
  long burn_in = 0;
  double acceptance_rate = 0.0;  // post burn-in
  long solver_failures = 0;

  std::size_t size() const { return samples.size(); }
};

using LogLik = std::function<double(const prior::CoeffVector&)>;

struct StepOutcome {
  bool accepted = false;
  bool solver_failed = false;
};

// One pCN update: proposal sqrt(1-s^2)*theta + s*xi with xi a fresh prior
// draw; accepted with probability min(1, exp(loglik' - loglik)). A throwing
// likelihood counts as a rejected proposal. The accept uniform is only drawn
// when the log-ratio is negative, so a stage whose ratio is certain consumes
// no randomness.
StepOutcome pcn_step(ChainState& state, const prior::PriorSpec& spec, const LogLik& loglik,
                     RngStream& rng);

// Two-stage update: the proposal is screened by the coarse likelihood, and
// only on coarse acceptance is the fine likelihood evaluated. The corrected
// second-stage ratio exp[(lf'-lf) - (lc'-lc)] keeps the fine posterior
// exactly invariant; literal mode uses the plain fine ratio instead.
StepOutcome two_level_step(ChainState& state, const prior::PriorSpec& spec, const LogLik& coarse,
                           const LogLik& fine, RngStream& rng, bool literal = false);

// Multiplicative step-size controller, clamped to (1e-12, 1].
double adapt_step(double step, double observed_accept, double target, double gain);

ChainRecord run_chain(const ChainConfig& config, const prior::PriorSpec& spec, const LogLik& loglik,
                      const prior::CoeffVector& init);

ChainRecord run_chain_two_level(const ChainConfig& config, const prior::PriorSpec& spec,
                                const LogLik& coarse, const LogLik& fine,
                                const prior::CoeffVector& init, bool literal = false);

}  // namespace robin::mcmc
