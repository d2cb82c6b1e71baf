#include "fisherflow/cli.hpp"

#include <complex>
#include <fstream>
#include <ostream>
#include <vector>

#include "json.hpp"

#include "fisherflow/check.hpp"
#include "fisherflow/flow.hpp"
#include "fisherflow/hamiltonian.hpp"
#include "fisherflow/io.hpp"
#include "fisherflow/metric.hpp"
#include "fisherflow/transform.hpp"

namespace fisherflow {

namespace {

using nlohmann::json;

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::vector<double> require_cost(const RunConfig& cfg) {
  if (cfg.cost_arg.empty()) {
    throw Error(errc::invalid_spec, "missing --cost");
  }
  return realize_cost(parse_cost_arg(cfg.cost_arg, cfg.n));
}

SimplexPoint point_arg(const std::string& text, const char* flag,
                       const RunConfig& cfg, std::size_t n) {
  if (text.empty()) {
    throw Error(errc::invalid_spec, std::string("missing ") + flag);
  }
  return parse_init_arg(text, n, cfg.seed, cfg.tol);
}

int run_transform(const RunConfig& cfg, std::ostream& out) {
  const SimplexPoint p = point_arg(cfg.init_arg, "--init", cfg, cfg.n);
  const SphereQPoint x = q_root(p, cfg.q, cfg.tol);
  json j;
  j["q"] = cfg.q;
  j["p"] = p.weights();
  j["x"] = x.coords();
  emit_json(out, j);
  return 0;
}

int run_distance(const RunConfig& cfg, std::ostream& out) {
  const SimplexPoint a = point_arg(cfg.from_arg, "--from", cfg, cfg.n);
  const SimplexPoint b = point_arg(cfg.to_arg, "--to", cfg, cfg.n);
  json j;
  j["distance"] = fr_distance(a, b);
  emit_json(out, j);
  return 0;
}

int run_geodesic(const RunConfig& cfg, std::ostream& out) {
  const SimplexPoint a = point_arg(cfg.from_arg, "--from", cfg, cfg.n);
  const SimplexPoint b = point_arg(cfg.to_arg, "--to", cfg, cfg.n);
  const GeodesicSegment seg = geodesic(a, b, cfg.tol);
  if (cfg.format == OutputFormat::csv) {
    write_geodesic_csv(out, seg, cfg.points);
    return 0;
  }
  if (cfg.points < 2) {
    throw Error(errc::too_few_points, "geodesic needs at least 2 points");
  }
  json j;
  j["length"] = seg.length();
  std::vector<double> ts;
  std::vector<std::vector<double>> ps;
  for (std::size_t i = 0; i < cfg.points; ++i) {
    const double t =
        static_cast<double>(i) / static_cast<double>(cfg.points - 1);
    ts.push_back(t);
    ps.push_back(seg.sample(t).weights());
  }
  j["t"] = ts;
  j["p"] = ps;
  emit_json(out, j);
  return 0;
}

int run_flow(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> cost = require_cost(cfg);
  const SimplexPoint p0 = point_arg(cfg.init_arg, "--init", cfg, cost.size());
  const FlowTrajectory traj =
      cfg.use_ode
          ? flow_ode(p0, cost, cfg.t_end, cfg.step, cfg.tol)
          : sample_flow(p0, cost, uniform_times(cfg.t_end, cfg.points),
                        cfg.tol);
  if (cfg.format == OutputFormat::csv) {
    write_trajectory_csv(out, traj);
  } else {
    out << trajectory_to_json(traj) << "\n";
  }
  return 0;
}

int run_solve_lp(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<double> cost = require_cost(cfg);
  const SimplexPoint p0 = point_arg(cfg.init_arg, "--init", cfg, cost.size());
  const LpSolution sol =
      solve_lp(p0, cost, cfg.gap_tol, cfg.t_max, cfg.tol);
  out << lp_solution_to_json(sol) << "\n";
  if (!sol.converged) {
    err << "HorizonExceeded: gap " << format_double(sol.certificate_gap)
        << " > " << format_double(cfg.gap_tol) << " at t_max "
        << format_double(cfg.t_max) << "\n";
    return 2;
  }
  return 0;
}

int run_hamiltonian(const RunConfig& cfg, std::ostream& out) {
  if (cfg.verb == "evolve") {
    const std::vector<double> cost = require_cost(cfg);
    const SimplexPoint p0 =
        point_arg(cfg.init_arg, "--init", cfg, cost.size());
    const ComplexState s0 = embed_simplex(p0, cfg.tol);
    const ComplexState s = hamiltonian_flow(s0, cost, cfg.t_end, cfg.tol);
    json j;
    j["t"] = cfg.t_end;
    j["hamiltonian"] = hamiltonian_value(s, cost);
    std::vector<std::vector<double>> amps;
    std::vector<double> moduli;
    for (const std::complex<double>& z : s.amplitudes()) {
      amps.push_back({z.real(), z.imag()});
      moduli.push_back(std::norm(z));
    }
    j["amplitudes"] = amps;
    j["moduli_squared"] = moduli;
    emit_json(out, j);
    return 0;
  }
  if (cfg.verb == "momentum") {
    const SimplexPoint p = point_arg(cfg.init_arg, "--init", cfg, cfg.n);
    const ComplexState s = embed_simplex(p, cfg.tol);
    json j;
    j["unit"] = MomentumValue::unit();
    j["mu_S1"] = momentum_s1(s).coefficients[0];
    j["mu_Tinf"] = momentum_torus(project(s, cfg.tol)).coefficients;
    emit_json(out, j);
    return 0;
  }
  if (cfg.verb == "brackets" || cfg.verb == "report") {
    const std::vector<double> cost = require_cost(cfg);
    const IntegrabilityReport report =
        integrability_report(cost, cfg.samples, cfg.seed, cfg.tol);
    if (cfg.verb == "report") {
      out << report_to_json(report) << "\n";
      return 0;
    }
    json j;
    j["max_pairwise_bracket"] = report.max_pairwise_bracket;
    j["max_bracket_with_Hc"] = report.max_bracket_with_hc;
    j["negative_control_bracket"] = report.negative_control_bracket;
    j["samples"] = report.samples;
    j["seed"] = report.seed;
    emit_json(out, j);
    return 0;
  }
  throw Error(errc::invalid_spec,
              "hamiltonian verb must be evolve|brackets|momentum|report, got "
              "\"" + cfg.verb + "\"");
}

int run_check(const RunConfig& cfg, std::ostream& out) {
  CheckOptions opt;
  opt.n = cfg.n;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  const std::vector<CheckResult> results = run_suite(cfg.suite, opt);
  return print_results(out, results) ? 0 : 2;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::transform:
      return run_transform(cfg, out);
    case Command::distance:
      return run_distance(cfg, out);
    case Command::geodesic:
      return run_geodesic(cfg, out);
    case Command::flow:
      return run_flow(cfg, out);
    case Command::solve_lp:
      return run_solve_lp(cfg, out, err);
    case Command::hamiltonian:
      return run_hamiltonian(cfg, out);
    case Command::check:
      return run_check(cfg, out);
  }
  throw Error(errc::invalid_spec, "unknown command");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.tol.validate();
    if (!cfg.out_path.empty()) {
      std::ofstream file(cfg.out_path);
      if (!file) {
        throw Error(errc::io_error,
                    "cannot open \"" + cfg.out_path + "\" for writing");
      }
      const int status = dispatch(cfg, file, err);
      if (!file.good()) {
        throw Error(errc::io_error,
                    "short write to \"" + cfg.out_path + "\"");
      }
      return status;
    }
    return dispatch(cfg, out, err);
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return e.numerical() ? 2 : 1;
  } catch (const std::exception& e) {
    err << "Error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fisherflow
