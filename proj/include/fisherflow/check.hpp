#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fisherflow/core.hpp"

namespace fisherflow {

// Named, deterministic invariant checks, one per documented library
// invariant. The CLI `check` subcommand runs them; the suite printout is a
// pure function of (suite, n, seed), so repeated runs are byte-identical.

struct CheckResult {
  std::string name;      // "module/invariant-slug"
  bool pass = false;
  double residual = 0.0; // worst observed violation
  double limit = 0.0;    // allowed bound
};

struct CheckOptions {
  std::size_t n = 8;        // ambient dimension for randomized checks
  std::uint64_t seed = 7;
  Tolerances tol{};
};

std::vector<CheckResult> check_core(const CheckOptions& opt);
std::vector<CheckResult> check_transform(const CheckOptions& opt);
std::vector<CheckResult> check_metric(const CheckOptions& opt);
std::vector<CheckResult> check_flow(const CheckOptions& opt);
std::vector<CheckResult> check_hamiltonian(const CheckOptions& opt);

/// Runs one suite by name ("core", "transform", "metric", "flow",
/// "hamiltonian", or "all"). Throws errc::invalid_spec for unknown names.
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const CheckOptions& opt);

/// One line per result plus a summary line; returns true iff all passed.
bool print_results(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace fisherflow
