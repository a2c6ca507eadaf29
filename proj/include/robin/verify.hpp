#pragma once

#include <string>
#include <vector>

namespace robin::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Manufactured-solution convergence for both solvers. inject_fault perturbs
// one stiffness entry, which must make the order checks fail.
std::vector<CheckResult> verify_fem(bool inject_fault = false);

// Monte Carlo checks of the prior weights and covariance.
std::vector<CheckResult> verify_prior();

// pCN prior invariance and the linear-Gaussian conjugate oracle.
std::vector<CheckResult> verify_mcmc();

// suite: one of "fem", "prior", "mcmc", "all".
std::vector<CheckResult> run_suite(const std::string& suite, bool inject_fault = false);

}  // namespace robin::verify
