#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "fisherflow/core.hpp"

namespace fisherflow {

enum class Command {
  transform,
  distance,
  geodesic,
  flow,
  solve_lp,
  hamiltonian,
  check,
};

enum class OutputFormat { csv, json };

/// Parsed command line. Field applicability by command is documented on
/// each flag in the CLI; unused fields keep their defaults and are
/// ignored. String-valued inputs stay unparsed here so that run() owns
/// every validation and its error-to-exit-code mapping.
struct RunConfig {
  Command command = Command::check;

  std::size_t n = 8;          // ambient dimension for generated inputs
  std::uint64_t seed = 1;     // random inputs; FISHERFLOW_SEED overrides
  OutputFormat format = OutputFormat::json;
  std::string out_path;       // empty writes to the provided stream
  Tolerances tol{};

  std::string cost_arg;            // parse_cost_arg form
  std::string init_arg = "uniform";  // parse_init_arg form
  std::string from_arg;            // distance/geodesic start point
  std::string to_arg;              // distance/geodesic end point

  double q = 2.0;             // transform exponent
  std::size_t points = 101;   // samples along geodesic/flow/evolution
  double t_end = 1.0;         // flow / evolution horizon
  double step = 1e-3;         // ODE step
  bool use_ode = false;       // flow: integrate W_c instead of closed form
  double gap_tol = 1e-8;      // solve-lp certificate target
  double t_max = 1e6;         // solve-lp horizon cap
  std::string verb;           // hamiltonian: evolve|brackets|momentum|report
  std::size_t samples = 100;  // hamiltonian sampling count
  std::string suite = "all";  // check suite name
};

/// Executes the configured command. The artifact goes to cfg.out_path, or
/// to `out` when the path is empty; diagnostics go to `err` as one-line
/// messages. Returns the process exit status: 0 success, 1 validation
/// failure (bad inputs, unwritable output), 2 numerical failure (a
/// numerical procedure broke down or did not converge, including solve-lp
/// hitting t_max and a failed check suite).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace fisherflow
