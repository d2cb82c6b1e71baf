#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fisherflow/core.hpp"
#include "fisherflow/flow.hpp"
#include "fisherflow/hamiltonian.hpp"
#include "fisherflow/metric.hpp"

namespace fisherflow {

// All emitters print floating-point values with 17 significant digits
// (%.17g), which round-trips doubles bit-exactly; readers parse with
// strtod. Malformed input surfaces as errc::io_error or, for structurally
// valid but semantically bad data, the constructor's own error.

// ── JSON ─────────────────────────────────────────────────────────────────────

/// {"kind":"geometric","ratio":r,"n":n} | {"kind":"power","exponent":s,
/// "n":n} | {"kind":"explicit","values":[...]}; an optional "shift" key is
/// accepted and emitted only when nonzero.
std::string cost_to_json(const CostSpec& spec);
CostSpec cost_from_json(const std::string& text);

/// {"weights":[...]}. Weights already normalized within tol_sum are taken
/// bit-for-bit (so emit/parse round-trips exactly); anything else is
/// renormalized through make_simplex.
std::string simplex_to_json(const SimplexPoint& p);
SimplexPoint simplex_from_json(const std::string& text,
                               const Tolerances& tol = {});

std::string lp_solution_to_json(const LpSolution& sol);

std::string report_to_json(const IntegrabilityReport& report);
IntegrabilityReport report_from_json(const std::string& text);

/// {"t":[...],"p":[[...],...],"objective":[...],"gap":[...]}, the same
/// fields as the CSV form.
std::string trajectory_to_json(const FlowTrajectory& traj);

std::string momentum_to_json(const MomentumValue& value);

// ── CSV ──────────────────────────────────────────────────────────────────────

/// Header exactly `t,p_0,...,p_{N-1},objective,gap`, one row per sample.
void write_trajectory_csv(std::ostream& out, const FlowTrajectory& traj);
std::string trajectory_to_csv(const FlowTrajectory& traj);
FlowTrajectory trajectory_from_csv(std::istream& in,
                                   const Tolerances& tol = {});
FlowTrajectory trajectory_from_csv(const std::string& text,
                                   const Tolerances& tol = {});

/// Header `t,p_0,...,p_{N-1}`: parameter and sampled weights of a
/// geodesic at n_points uniform parameters.
void write_geodesic_csv(std::ostream& out, const GeodesicSegment& seg,
                        std::size_t n_points);

// ── CLI argument forms ───────────────────────────────────────────────────────

/// "geometric:0.5" | "power:1.0" | "explicit:1,0.5,0.25" | inline JSON
/// (leading '{'). The generated kinds take their length from n; explicit
/// values carry their own length. An optional third ":shift" field adds a
/// constant (e.g. "geometric:0.5:1").
CostSpec parse_cost_arg(const std::string& text, std::size_t n);

/// "uniform" | "random" | comma-separated weights (normalized through
/// make_simplex) | inline JSON. `random` draws from random_simplex(n, seed).
SimplexPoint parse_init_arg(const std::string& text, std::size_t n,
                            std::uint64_t seed,
                            const Tolerances& tol = {});

/// %.17g rendering used by every emitter.
std::string format_double(double x);

}  // namespace fisherflow
