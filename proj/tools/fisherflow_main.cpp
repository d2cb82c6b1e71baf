#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fisherflow/cli.hpp"

namespace {

// FISHERFLOW_SEED supplies the default seed; an explicit --seed wins.
bool apply_env_seed(fisherflow::RunConfig& cfg, std::string& message) {
  const char* env = std::getenv("FISHERFLOW_SEED");
  if (env == nullptr || *env == '\0') return true;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    message = std::string("FISHERFLOW_SEED is not an integer: \"") + env +
              "\"";
    return false;
  }
  cfg.seed = value;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using fisherflow::Command;
  using fisherflow::OutputFormat;

  fisherflow::RunConfig cfg;
  std::string env_error;
  if (!apply_env_seed(cfg, env_error)) {
    std::cerr << "InvalidSpec: " << env_error << "\n";
    return 1;
  }

  CLI::App app{
      "Fisher-Rao geometry on truncated simplices: q-root transforms, "
      "geodesics, replicator flows, linear programs, and the integrable "
      "Hamiltonian picture."};
  app.require_subcommand(1);

  std::string emit = "json";
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "dimension for generated inputs");
    sub->add_option("--seed", cfg.seed, "seed for random inputs");
    sub->add_option("--out", cfg.out_path, "write the artifact to this file");
  };
  const auto add_emit = [&](CLI::App* sub) {
    sub->add_option("--emit", emit, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* transform =
      app.add_subcommand("transform", "map a point through the q-root");
  transform->add_option("--init", cfg.init_arg,
                        "uniform | random | w_0,w_1,... | JSON");
  transform->add_option("--q", cfg.q, "transform exponent, q > 1");
  add_common(transform);
  transform->callback([&] { cfg.command = Command::transform; });

  CLI::App* distance =
      app.add_subcommand("distance", "Fisher-Rao distance between points");
  distance->add_option("--from", cfg.from_arg, "start point");
  distance->add_option("--to", cfg.to_arg, "end point");
  add_common(distance);
  distance->callback([&] { cfg.command = Command::distance; });

  CLI::App* geodesic =
      app.add_subcommand("geodesic", "sample the connecting geodesic");
  geodesic->add_option("--from", cfg.from_arg, "start point");
  geodesic->add_option("--to", cfg.to_arg, "end point");
  geodesic->add_option("--points", cfg.points, "number of samples");
  add_emit(geodesic);
  add_common(geodesic);
  geodesic->callback([&] { cfg.command = Command::geodesic; });

  CLI::App* flow =
      app.add_subcommand("flow", "run the cost-ascent flow on the simplex");
  flow->add_option("--cost", cfg.cost_arg,
                   "geometric:R | power:S | explicit:v0,v1,... | JSON");
  flow->add_option("--init", cfg.init_arg, "initial point");
  flow->add_option("--t", cfg.t_end, "time horizon");
  flow->add_option("--points", cfg.points, "closed-form samples");
  flow->add_option("--step", cfg.step, "ODE step size");
  flow->add_flag("--ode", cfg.use_ode,
                 "integrate the vector field instead of the closed form");
  add_emit(flow);
  add_common(flow);
  flow->callback([&] { cfg.command = Command::flow; });

  CLI::App* solve_lp = app.add_subcommand(
      "solve-lp", "maximize a cost over the simplex via the flow");
  solve_lp->add_option("--cost", cfg.cost_arg, "cost specification");
  solve_lp->add_option("--init", cfg.init_arg, "initial point");
  solve_lp->add_option("--gap-tol", cfg.gap_tol, "certificate gap target");
  solve_lp->add_option("--t-max", cfg.t_max, "horizon cap");
  add_common(solve_lp);
  solve_lp->callback([&] { cfg.command = Command::solve_lp; });

  CLI::App* hamiltonian = app.add_subcommand(
      "hamiltonian", "evolve, probe, or report the Hamiltonian system");
  hamiltonian->add_option("verb", cfg.verb, "evolve|brackets|momentum|report")
      ->required()
      ->check(CLI::IsMember({"evolve", "brackets", "momentum", "report"}));
  hamiltonian->add_option("--cost", cfg.cost_arg, "cost specification");
  hamiltonian->add_option("--init", cfg.init_arg, "initial simplex point");
  hamiltonian->add_option("--t", cfg.t_end, "evolution time");
  hamiltonian->add_option("--samples", cfg.samples, "random states to probe");
  add_common(hamiltonian);
  hamiltonian->callback([&] { cfg.command = Command::hamiltonian; });

  CLI::App* check =
      app.add_subcommand("check", "run the invariant suites");
  check->add_option("--suite", cfg.suite,
                    "core|transform|metric|flow|hamiltonian|all");
  add_common(check);
  check->callback([&] { cfg.command = Command::check; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  cfg.format = (emit == "csv") ? OutputFormat::csv : OutputFormat::json;
  return fisherflow::run(cfg, std::cout, std::cerr);
}
