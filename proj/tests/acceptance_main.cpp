// Acceptance gate: every release-blocking property on one page, one line
// of output per criterion. Exit status is the number of failed criteria.
// argv[1] names the CLI binary, used by the determinism criterion.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fisherflow/check.hpp"
#include "fisherflow/core.hpp"
#include "fisherflow/flow.hpp"
#include "fisherflow/hamiltonian.hpp"
#include "fisherflow/metric.hpp"
#include "fisherflow/transform.hpp"

using namespace fisherflow;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool pass, double residual,
            double limit) {
  std::printf("[%s] %2d %-34s residual=%.3e limit=%.3e\n",
              pass ? "PASS" : "FAIL", index, name, residual, limit);
  if (!pass) ++g_failures;
}

void report_flag(int index, const char* name, bool pass,
                 const std::string& detail) {
  std::printf("[%s] %2d %-34s %s\n", pass ? "PASS" : "FAIL", index, name,
              detail.c_str());
  if (!pass) ++g_failures;
}

double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

// 1. At q = 2 the root transform is a linear isometry of tangent spaces.
void criterion_isometry_l2() {
  Rng rng(101);
  double worst = 0.0;
  for (std::size_t n : {std::size_t{2}, std::size_t{8}, std::size_t{64}}) {
    for (int rep = 0; rep < 10000; ++rep) {
      const SimplexPoint p = random_simplex(n, rng.next_u64());
      const TangentVec v = random_tangent(p, rng);
      const TangentVec w = random_tangent(p, rng);
      const SphereTangent dv = pushforward(p, v, 2.0);
      const SphereTangent dw = pushforward(p, w, 2.0);
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += dv[i] * dw[i];
      worst = std::max(worst, std::abs(fisher_rao_inner(p, v, w) - dot));
    }
  }
  report(1, "isometry, q=2", worst <= 1e-10, worst, 1e-10);
}

// 2. For general q the sphere norm of the pushforward is (1/q) times the
//    Finsler norm.
void criterion_isometry_q() {
  Rng rng(102);
  double worst = 0.0;
  for (double q : {1.5, 2.0, 3.0}) {
    for (int rep = 0; rep < 1000; ++rep) {
      const SimplexPoint p = random_simplex(8, rng.next_u64());
      const TangentVec v = random_tangent(p, rng);
      const double lhs = sphere_norm_q(pushforward(p, v, q));
      const double rhs = finsler_norm_q(p, v, q) / q;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  report(2, "isometry, general q", worst <= 1e-10, worst, 1e-10);
}

// 3. The closed-form flow solves pdot = p (c - <c, p>), and the RK4
//    integrator reproduces it.
void criterion_flow_correctness() {
  const std::vector<double> cost = realize_cost(geometric_cost(0.5, 8));
  Rng rng(103);
  const double h = 1e-5;
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const SimplexPoint p0 = random_simplex(8, rng.next_u64());
    for (double t : {0.0, 0.3, 1.0, 2.7, 6.0, 10.0}) {
      const SimplexPoint plus = flow_closed_form(p0, cost, t + h);
      const SimplexPoint minus = flow_closed_form(p0, cost, t - h);
      const SimplexPoint at = flow_closed_form(p0, cost, t);
      const TangentVec field = gradient_field(at, cost);
      for (std::size_t i = 0; i < 8; ++i) {
        const double fd = (plus[i] - minus[i]) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - field[i]));
      }
    }
  }

  const SimplexPoint p0 = random_simplex(8, 1003);
  const FlowTrajectory traj = flow_ode(p0, cost, 10.0, 1e-3);
  double worst_l1 = 0.0;
  for (std::size_t row = 0; row < traj.size(); ++row) {
    const SimplexPoint ref = flow_closed_form(p0, cost, traj.times[row]);
    worst_l1 = std::max(worst_l1,
                        l1_diff(traj.states[row].weights(), ref.weights()));
  }
  const double residual = std::max(worst, worst_l1);
  report(3, "flow solves the replicator ODE", residual <= 1e-6, residual,
         1e-6);
}

// 4. The LP run certifies a gap <= 1e-6 and lands at the first corner.
void criterion_lp_convergence() {
  const std::vector<double> cost = realize_cost(geometric_cost(0.5, 8));
  const LpSolution sol = solve_lp(uniform_simplex(8), cost, 1e-6);
  std::vector<double> corner(8, 0.0);
  corner[0] = 1.0;
  const double l1 = l1_diff(sol.maximizer.weights(), corner);
  const bool pass =
      sol.converged && sol.certificate_gap <= 1e-6 && l1 <= 1e-6;
  report(4, "LP certificate and maximizer", pass,
         std::max(sol.certificate_gap, l1), 1e-6);
}

// 5. The fitted log-gap slope equals the difference of the two largest
//    cost entries, for three cost families.
void criterion_exponential_rate() {
  struct Family {
    std::vector<double> cost;
  };
  const Family families[] = {
      {realize_cost(geometric_cost(0.5, 6))},
      {realize_cost(power_cost(1.0, 6))},
      {realize_cost(explicit_cost({2.0, 1.25, 0.5, 0.25, 0.1, 0.05}))},
  };
  double worst = 0.0;
  for (const Family& family : families) {
    std::vector<double> sorted = family.cost;
    std::sort(sorted.begin(), sorted.end());
    const double expected = -(sorted[5] - sorted[4]);
    const FlowTrajectory traj = sample_flow(uniform_simplex(6), family.cost,
                                            uniform_times(40.0, 401));
    const double rate = convergence_rate(traj, family.cost);
    worst = std::max(worst, std::abs(rate - expected) / std::abs(expected));
  }
  report(5, "exponential gap decay rate", worst <= 0.05, worst, 0.05);
}

// 6. d/dt objective equals the cost variance along the flow.
void criterion_monotonicity_identity() {
  const std::vector<double> cost = realize_cost(geometric_cost(0.5, 8));
  Rng rng(106);
  const double h = 1e-5;
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const SimplexPoint p0 = random_simplex(8, rng.next_u64());
    const double t = 5.0 * rng.uniform();
    const double fwd = objective(flow_closed_form(p0, cost, t + h), cost);
    const double bwd = objective(flow_closed_form(p0, cost, t - h), cost);
    const double fd = (fwd - bwd) / (2.0 * h);
    const double var = cost_variance(flow_closed_form(p0, cost, t), cost);
    worst = std::max(worst, std::abs(fd - var));
  }
  report(6, "objective rate is the variance", worst <= 1e-6, worst, 1e-6);
}

// 7. Discrete geodesic length matches the Bhattacharyya angle, and the
//    geodesic beats 100 perturbed paths on energy.
void criterion_geodesics() {
  Rng rng(107);
  const SimplexPoint p = random_simplex(8, rng.next_u64());
  const SimplexPoint r = random_simplex(8, rng.next_u64());
  const GeodesicSegment seg = geodesic(p, r);
  const double length_err =
      std::abs(path_length(seg.sample_uniform(10001)) - fr_distance(p, r));

  const std::size_t nodes = 401;
  const double dt = 1.0 / static_cast<double>(nodes - 1);
  const std::vector<SimplexPoint> base = seg.sample_uniform(nodes);
  double amp_cap = 1.0;
  for (const SimplexPoint& point : base) {
    for (std::size_t i = 0; i < point.dim(); ++i) {
      amp_cap = std::min(amp_cap, point[i]);
    }
  }
  const double energy_geo = path_energy(base, dt);
  const double pi = std::acos(-1.0);
  bool beats_all = true;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> pattern(8);
    double mean = 0.0;
    for (double& e : pattern) {
      e = rng.normal();
      mean += e;
    }
    double biggest = 0.0;
    for (double& e : pattern) {
      e -= mean / 8.0;
      biggest = std::max(biggest, std::abs(e));
    }
    const double amp = 0.25 * amp_cap / biggest;
    std::vector<SimplexPoint> path;
    path.reserve(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
      const double bump = amp * std::sin(pi * static_cast<double>(k) * dt);
      std::vector<double> weights = base[k].weights();
      for (std::size_t i = 0; i < 8; ++i) weights[i] += bump * pattern[i];
      path.push_back(make_simplex(weights));
    }
    if (path_energy(path, dt) < energy_geo) beats_all = false;
  }
  report(7, "geodesic length and least energy",
         length_err <= 1e-6 && beats_all, length_err, 1e-6);
}

// 8. Every |z_n|^2, H_n and H_c is constant along the Hamiltonian flow.
void criterion_hamiltonian_conservation() {
  const std::vector<double> cost = realize_cost(geometric_cost(0.5, 8));
  Rng rng(108);
  const ComplexState s = random_complex_state(8, rng);
  const double h0 = hamiltonian_value(s, cost);
  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.5, 5.0, 10.0, 25.0, 50.0, 100.0}) {
    const ComplexState moved = hamiltonian_flow(s, cost, t);
    worst = std::max(worst, std::abs(hamiltonian_value(moved, cost) - h0));
    for (std::size_t i = 0; i < 8; ++i) {
      worst = std::max(worst, std::abs(std::norm(moved[i]) - std::norm(s[i])));
      worst = std::max(worst, std::abs(conserved_quantity(moved, cost, i) -
                                       conserved_quantity(s, cost, i)));
    }
  }
  report(8, "conservation along the flow", worst <= 1e-12, worst, 1e-12);
}

// 9. Mode Hamiltonians commute pairwise and with the total, while the
//    non-commuting control stays far from zero.
void criterion_integrability() {
  const std::vector<double> cost = realize_cost(geometric_cost(0.5, 6));
  const IntegrabilityReport rep = integrability_report(cost, 100, 7);
  const double worst =
      std::max(rep.max_pairwise_bracket, rep.max_bracket_with_hc);
  const bool pass = worst <= 1e-8 && rep.negative_control_bracket >= 1e-3;
  report(9, "commuting brackets with live control", pass, worst, 1e-8);
}

// 10. Momentum/projection diagram commutes, the embedding intertwines the
//     Hamiltonian with the flow objective, and doubled coefficients form a
//     closed simplex point.
void criterion_momentum_diagram() {
  Rng rng(110);
  double worst = 0.0;
  bool closed_ok = true;
  for (int rep = 0; rep < 100; ++rep) {
    const ComplexState s = random_complex_state(8, rng);
    const MomentumValue via = momentum_torus(project(s));
    const MomentumValue direct = half_moduli(s);
    std::vector<double> doubled(8);
    for (std::size_t i = 0; i < 8; ++i) {
      worst = std::max(worst, std::abs(via.coefficients[i] -
                                       direct.coefficients[i]));
      doubled[i] = 2.0 * via.coefficients[i];
    }
    try {
      ClosedSimplexPoint::from_normalized(doubled);
    } catch (const Error&) {
      closed_ok = false;
    }
  }
  const std::vector<double> cost = realize_cost(geometric_cost(0.5, 8));
  for (int rep = 0; rep < 100; ++rep) {
    const SimplexPoint p = random_simplex(8, rng.next_u64());
    worst = std::max(worst, std::abs(hamiltonian_value(embed_simplex(p), cost) -
                                     objective(p, cost)));
  }
  report(10, "momentum diagram and pullback", worst <= 1e-12 && closed_ok,
         worst, 1e-12);
}

// 11. The sphere-side gradient flow at time t is the canonical flow at 4t.
void criterion_sphere_calibration() {
  const std::vector<double> cost = realize_cost(geometric_cost(0.5, 8));
  const SimplexPoint p0 = random_simplex(8, 1011);
  const double t = 1.0;
  const LpSolution sol = sphere_gradient_flow_to_lp(p0, cost, t, 1e-3);
  const SimplexPoint ref = flow_closed_form(p0, cost, 4.0 * t);
  const double l1 = l1_diff(sol.maximizer.weights(), ref.weights());
  report(11, "sphere flow runs at 4x speed", l1 <= 1e-6, l1, 1e-6);
}

// 12. The CLI self-check is byte-deterministic and green.
void criterion_cli_determinism(const char* cli_path) {
  if (cli_path == nullptr) {
    report_flag(12, "CLI self-check determinism", false,
                "no CLI binary path given");
    return;
  }
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path out1 = dir / "fisherflow_acceptance_1.txt";
  const fs::path out2 = dir / "fisherflow_acceptance_2.txt";
  const std::string base = std::string("\"") + cli_path +
                           "\" check --suite all --n 8 --seed 7 > ";
  int codes[2] = {-1, -1};
  const fs::path outs[2] = {out1, out2};
  for (int i = 0; i < 2; ++i) {
    const std::string cmd = base + "\"" + outs[i].string() + "\" 2>&1";
    const int raw = std::system(cmd.c_str());
    codes[i] = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  }
  std::string text[2];
  for (int i = 0; i < 2; ++i) {
    std::ifstream in(outs[i], std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    text[i] = buf.str();
  }
  fs::remove(out1);
  fs::remove(out2);
  const bool pass = codes[0] == 0 && codes[1] == 0 && !text[0].empty() &&
                    text[0] == text[1];
  std::ostringstream detail;
  detail << "exit codes " << codes[0] << "/" << codes[1] << ", "
         << (text[0] == text[1] ? "byte-identical" : "outputs differ") << " ("
         << text[0].size() << " bytes)";
  report_flag(12, "CLI self-check determinism", pass, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  criterion_isometry_l2();
  criterion_isometry_q();
  criterion_flow_correctness();
  criterion_lp_convergence();
  criterion_exponential_rate();
  criterion_monotonicity_identity();
  criterion_geodesics();
  criterion_hamiltonian_conservation();
  criterion_integrability();
  criterion_momentum_diagram();
  criterion_sphere_calibration();
  criterion_cli_determinism(argc > 1 ? argv[1] : nullptr);
  std::printf("%d/12 criteria passed\n", 12 - g_failures);
  return g_failures;
}
