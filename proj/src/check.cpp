#include "fisherflow/check.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "fisherflow/flow.hpp"
#include "fisherflow/hamiltonian.hpp"
#include "fisherflow/metric.hpp"
#include "fisherflow/transform.hpp"

namespace fisherflow {

namespace {

double linf_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double sum_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

CheckResult bounded(const std::string& name, double residual, double limit) {
  return CheckResult{name, residual <= limit, residual, limit};
}

void require_options(const CheckOptions& opt) {
  opt.tol.validate();
  if (opt.n < 2) {
    throw Error(errc::invalid_dimension, "check needs n >= 2");
  }
}

std::vector<double> scaled_for_positivity(const SimplexPoint& p,
                                          const TangentVec& v) {
  // Shrinks v until p + t v stays positive for |t| <= fd_step; the
  // finite-difference error is cubic in the scale while the differential
  // is linear, so shrinking only sharpens the comparison.
  double p_min = p[0];
  double v_max = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    p_min = std::min(p_min, p[i]);
    v_max = std::max(v_max, std::abs(v[i]));
  }
  const double scale = std::min(1.0, 0.5 * p_min / (v_max + 1e-300));
  std::vector<double> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = scale * v[i];
  return out;
}

}  // namespace

// ── core ─────────────────────────────────────────────────────────────────────

std::vector<CheckResult> check_core(const CheckOptions& opt) {
  require_options(opt);
  std::vector<CheckResult> results;

  {
    double worst_sum = 0.0;
    double min_weight = 1.0;
    for (std::uint64_t k = 0; k < 64; ++k) {
      const double concentration = (k % 4 == 0) ? 0.5 : 1.0 + (k % 3);
      const SimplexPoint p = random_simplex(opt.n, opt.seed + k, concentration);
      worst_sum = std::max(worst_sum, std::abs(sum_of(p.weights()) - 1.0));
      min_weight = std::min(
          min_weight, *std::min_element(p.weights().begin(), p.weights().end()));
    }
    CheckResult r = bounded("core/simplex-normalized", worst_sum,
                            opt.tol.tol_sum);
    r.pass = r.pass && min_weight > 0.0;
    results.push_back(r);
  }

  {
    Rng rng(opt.seed);
    double worst = 0.0;
    for (int k = 0; k < 64; ++k) {
      const SimplexPoint p = random_simplex(opt.n, opt.seed + 100 + k);
      const TangentVec v = random_tangent(p, rng);
      const TangentVec again = make_tangent(p, v.components());
      worst = std::max(worst, linf_diff(v.components(), again.components()));
      worst = std::max(worst, std::abs(sum_of(v.components())));
    }
    results.push_back(bounded("core/tangent-projection-idempotent", worst,
                              opt.tol.tol_sum));
  }

  {
    double worst_step = -1.0;
    bool tails_ok = true;
    const CostSpec specs[] = {geometric_cost(0.5, opt.n),
                              geometric_cost(0.9, opt.n),
                              power_cost(1.0, opt.n), power_cost(0.75, opt.n)};
    for (const CostSpec& spec : specs) {
      const std::vector<double> cost = realize_cost(spec);
      for (std::size_t k = 0; k + 1 < cost.size(); ++k) {
        worst_step = std::max(worst_step, cost[k + 1] - cost[k]);
      }
      double previous = tail_mass(spec, 0);
      for (std::size_t m = 1; m <= 8; ++m) {
        const double current = tail_mass(spec, m);
        tails_ok = tails_ok && current >= 0.0 && current <= previous;
        previous = current;
      }
    }
    CheckResult r{"core/cost-decreasing-tail-shrinking", worst_step < 0.0,
                  worst_step, 0.0};
    r.pass = r.pass && tails_ok;
    results.push_back(r);
  }

  {
    const SimplexPoint a = random_simplex(opt.n, opt.seed, 2.0);
    const SimplexPoint b = random_simplex(opt.n, opt.seed, 2.0);
    const SimplexPoint c = random_simplex(opt.n, opt.seed + 1, 2.0);
    const double repeat = linf_diff(a.weights(), b.weights());
    const double vary = linf_diff(a.weights(), c.weights());
    results.push_back(
        CheckResult{"core/random-simplex-deterministic",
                    repeat == 0.0 && vary > 0.0, repeat, 0.0});
  }

  return results;
}

// ── transform ────────────────────────────────────────────────────────────────

std::vector<CheckResult> check_transform(const CheckOptions& opt) {
  require_options(opt);
  std::vector<CheckResult> results;
  const double qs[] = {1.5, 2.0, 3.0, 4.0};

  {
    double worst = 0.0;
    for (int k = 0; k < 128; ++k) {
      const SimplexPoint p = random_simplex(opt.n, opt.seed + k);
      for (double q : qs) {
        const SimplexPoint back =
            q_root_inverse(q_root(p, q, opt.tol), opt.tol);
        worst = std::max(worst, l1_diff(p.weights(), back.weights()));
      }
    }
    results.push_back(bounded("transform/round-trip-identity", worst, 1e-12));
  }

  {
    Rng rng(opt.seed + 1);
    double worst = 0.0;
    for (int k = 0; k < 64; ++k) {
      const SimplexPoint p = random_simplex(opt.n, opt.seed + 300 + k);
      const std::vector<double> v =
          scaled_for_positivity(p, random_tangent(p, rng));
      for (double q : qs) {
        const SphereTangent w =
            pushforward(p, make_tangent(p, v), q, opt.tol);
        const double h = opt.tol.fd_step;
        std::vector<double> plus(p.dim()), minus(p.dim());
        for (std::size_t i = 0; i < p.dim(); ++i) {
          plus[i] = p[i] + h * v[i];
          minus[i] = p[i] - h * v[i];
        }
        const SphereQPoint x_plus = q_root(make_simplex(plus), q, opt.tol);
        const SphereQPoint x_minus = q_root(make_simplex(minus), q, opt.tol);
        double diff = 0.0;
        double scale = 1e-30;
        for (std::size_t i = 0; i < p.dim(); ++i) {
          const double fd = (x_plus[i] - x_minus[i]) / (2.0 * h);
          diff = std::max(diff, std::abs(fd - w[i]));
          scale = std::max(scale, std::abs(w[i]));
        }
        worst = std::max(worst, diff / std::max(scale, 1e-12));
      }
    }
    results.push_back(
        bounded("transform/differential-matches-finite-difference", worst,
                1e-6));
  }

  {
    Rng rng(opt.seed + 2);
    double worst_sum = 0.0;
    double worst_round = 0.0;
    for (int k = 0; k < 64; ++k) {
      const SimplexPoint p = random_simplex(opt.n, opt.seed + 600 + k);
      const TangentVec v = random_tangent(p, rng);
      for (double q : qs) {
        const SphereQPoint x = q_root(p, q, opt.tol);
        const SphereTangent w = pushforward(p, v, q, opt.tol);
        const TangentVec back = pullback(x, w, opt.tol);
        worst_sum = std::max(worst_sum, std::abs(sum_of(back.components())));
        worst_round =
            std::max(worst_round, l1_diff(v.components(), back.components()));
      }
    }
    CheckResult r = bounded("transform/pullback-sum-zero-round-trip",
                            worst_round, 1e-10);
    r.pass = r.pass && worst_sum <= opt.tol.tol_sum;
    results.push_back(r);
  }

  return results;
}

// ── metric ───────────────────────────────────────────────────────────────────

std::vector<CheckResult> check_metric(const CheckOptions& opt) {
  require_options(opt);
  std::vector<CheckResult> results;

  {
    Rng rng(opt.seed + 3);
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const SimplexPoint p =
          random_simplex(opt.n, opt.seed + 1000 + k);
      const TangentVec v = random_tangent(p, rng);
      const TangentVec w = random_tangent(p, rng);
      const SphereTangent dv = pushforward(p, v, 2.0, opt.tol);
      const SphereTangent dw = pushforward(p, w, 2.0, opt.tol);
      double sphere_inner = 0.0;
      for (std::size_t i = 0; i < p.dim(); ++i) {
        sphere_inner += dv[i] * dw[i];
      }
      worst = std::max(
          worst, std::abs(fisher_rao_inner(p, v, w) - sphere_inner));
    }
    results.push_back(bounded("metric/isometry-l2", worst, 1e-10));
  }

  {
    Rng rng(opt.seed + 4);
    double worst = 0.0;
    for (double q : {1.5, 2.0, 3.0}) {
      for (int k = 0; k < 400; ++k) {
        const SimplexPoint p = random_simplex(opt.n, opt.seed + 2000 + k);
        const TangentVec v = random_tangent(p, rng);
        const SphereTangent w = pushforward(p, v, q, opt.tol);
        worst = std::max(worst, std::abs(sphere_norm_q(w) -
                                         finsler_norm_q(p, v, q) / q));
      }
    }
    results.push_back(
        bounded("metric/isometry-q-calibrated", worst, 1e-10));
  }

  {
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const SimplexPoint p = random_simplex(opt.n, opt.seed + 3000 + k);
      const SimplexPoint r = random_simplex(opt.n, opt.seed + 4000 + k);
      const SimplexPoint s = random_simplex(opt.n, opt.seed + 5000 + k);
      const double d_pr = fr_distance(p, r);
      worst = std::max(worst, std::abs(d_pr - fr_distance(r, p)));
      worst = std::max(worst,
                       d_pr - (fr_distance(p, s) + fr_distance(s, r)));
      worst = std::max(worst, fr_distance(p, p));
      worst = std::max(worst, d_pr - 2.0 * std::atan(1.0) - 1e-15);
    }
    results.push_back(bounded("metric/distance-axioms", worst, 1e-12));
  }

  {
    double worst_end = 0.0;
    double min_weight = 1.0;
    for (int k = 0; k < 100; ++k) {
      const SimplexPoint p = random_simplex(opt.n, opt.seed + 6000 + k);
      const SimplexPoint r = random_simplex(opt.n, opt.seed + 7000 + k);
      const GeodesicSegment seg = geodesic(p, r, opt.tol);
      worst_end =
          std::max(worst_end, l1_diff(seg.sample(0.0).weights(), p.weights()));
      worst_end =
          std::max(worst_end, l1_diff(seg.sample(1.0).weights(), r.weights()));
      for (const SimplexPoint& mid : seg.sample_uniform(21)) {
        min_weight = std::min(min_weight, *std::min_element(
            mid.weights().begin(), mid.weights().end()));
      }
    }
    CheckResult r = bounded("metric/geodesic-endpoints-interior", worst_end,
                            1e-10);
    r.pass = r.pass && min_weight > 0.0;
    results.push_back(r);
  }

  {
    Rng rng(opt.seed + 5);
    double worst = 0.0;
    for (int k = 0; k < 400; ++k) {
      const SimplexPoint p = random_simplex(opt.n, opt.seed + 8000 + k);
      const TangentVec v = random_tangent(p, rng);
      for (double q : {1.5, 2.0, 3.0}) {
        const double base = finsler_norm_q(p, v, q);
        for (double lambda : {-2.5, -1.0, 0.25, 3.0}) {
          std::vector<double> scaled(v.dim());
          for (std::size_t i = 0; i < v.dim(); ++i) scaled[i] = lambda * v[i];
          const double norm =
              finsler_norm_q(p, make_tangent(p, scaled), q);
          worst = std::max(
              worst, std::abs(norm - std::abs(lambda) * base) /
                         std::max(1.0, std::abs(lambda) * base));
        }
      }
    }
    results.push_back(bounded("metric/finsler-homogeneity", worst, 1e-13));
  }

  return results;
}

// ── flow ─────────────────────────────────────────────────────────────────────

std::vector<CheckResult> check_flow(const CheckOptions& opt) {
  require_options(opt);
  std::vector<CheckResult> results;
  const std::vector<double> cost = realize_cost(geometric_cost(0.5, opt.n));
  const SimplexPoint p0 = random_simplex(opt.n, opt.seed + 9000);

  {
    double worst = 0.0;
    const double h = opt.tol.fd_step;
    for (double t : {0.0, 0.5, 1.0, 3.0, 7.0}) {
      const SimplexPoint p = flow_closed_form(p0, cost, t, opt.tol);
      const SimplexPoint plus = flow_closed_form(p0, cost, t + h, opt.tol);
      const SimplexPoint minus = flow_closed_form(p0, cost, t - h, opt.tol);
      const TangentVec field = gradient_field(p, cost);
      for (std::size_t i = 0; i < p.dim(); ++i) {
        const double fd = (plus[i] - minus[i]) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - field[i]));
      }
    }
    results.push_back(bounded("flow/closed-form-satisfies-ode", worst, 1e-6));
  }

  {
    double worst_sum = 0.0;
    double min_weight = 1.0;
    for (double t : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
      const SimplexPoint p = flow_closed_form(p0, cost, t, opt.tol);
      worst_sum = std::max(worst_sum, std::abs(sum_of(p.weights()) - 1.0));
      min_weight = std::min(min_weight, *std::min_element(
          p.weights().begin(), p.weights().end()));
    }
    const FlowTrajectory traj = flow_ode(p0, cost, 2.0, 1e-2, opt.tol);
    for (const SimplexPoint& p : traj.states) {
      worst_sum = std::max(worst_sum, std::abs(sum_of(p.weights()) - 1.0));
      min_weight = std::min(min_weight, *std::min_element(
          p.weights().begin(), p.weights().end()));
    }
    CheckResult r = bounded("flow/conservation-positivity", worst_sum,
                            opt.tol.tol_sum);
    r.pass = r.pass && min_weight > 0.0;
    results.push_back(r);
  }

  {
    double worst = 0.0;
    const double h = opt.tol.fd_step;
    for (int k = 0; k < 64; ++k) {
      const SimplexPoint p = random_simplex(opt.n, opt.seed + 10000 + k);
      const double t = 0.25 * static_cast<double>(k % 8);
      const SimplexPoint at = flow_closed_form(p, cost, t, opt.tol);
      const double fd =
          (objective(flow_closed_form(p, cost, t + h, opt.tol), cost) -
           objective(flow_closed_form(p, cost, t - h, opt.tol), cost)) /
          (2.0 * h);
      worst = std::max(worst, std::abs(fd - cost_variance(at, cost)));
    }
    results.push_back(bounded("flow/objective-rate-is-variance", worst, 1e-6));
  }

  {
    const FlowTrajectory traj =
        sample_flow(p0, cost, uniform_times(20.0, 201), opt.tol);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
      worst = std::max(worst, traj.objective[i] - traj.objective[i + 1]);
      worst = std::max(worst, traj.gap[i + 1] - traj.gap[i]);
    }
    for (double g : traj.gap) worst = std::max(worst, -g);
    results.push_back(bounded("flow/trajectory-monotonicity", worst,
                              opt.tol.tol_ode));
  }

  {
    double worst = 0.0;
    for (double alpha : {1.0, -2.0, 0.3333333333333333}) {
      std::vector<double> shifted(cost);
      for (double& c : shifted) c += alpha;
      for (double t : {0.5, 4.0}) {
        worst = std::max(
            worst, linf_diff(flow_closed_form(p0, cost, t, opt.tol).weights(),
                             flow_closed_form(p0, shifted, t, opt.tol)
                                 .weights()));
      }
      worst = std::max(
          worst, linf_diff(gradient_field(p0, cost).components(),
                           gradient_field(p0, shifted).components()));
    }
    results.push_back(bounded("flow/shift-invariance", worst, 1e-13));
  }

  {
    double worst = 0.0;
    for (const auto& [s, t] : {std::pair{0.5, 1.5}, {2.0, 2.0}, {1.0, 7.0}}) {
      const SimplexPoint direct = flow_closed_form(p0, cost, s + t, opt.tol);
      const SimplexPoint staged = flow_closed_form(
          flow_closed_form(p0, cost, s, opt.tol), cost, t, opt.tol);
      worst = std::max(worst, l1_diff(direct.weights(), staged.weights()));
    }
    results.push_back(bounded("flow/semigroup", worst, 1e-12));
  }

  {
    const FlowTrajectory traj =
        sample_flow(p0, cost, uniform_times(40.0, 401), opt.tol);
    const double rate = convergence_rate(traj, cost);
    const double expected = -(cost[0] - cost[1]);
    const double rel = std::abs(rate - expected) / std::abs(expected);
    // The corner distance and the gap share the same exponential envelope:
    // both are dominated by the second-largest cost entry.
    std::vector<double> corner_ts, corner_logs;
    for (std::size_t i = traj.size() / 2; i < traj.size(); ++i) {
      std::vector<double> e0(traj.dim(), 0.0);
      e0[0] = 1.0;
      const double dist = l1_diff(traj.states[i].weights(), e0);
      if (dist > 0.0) {
        corner_ts.push_back(traj.times[i]);
        corner_logs.push_back(std::log(dist));
      }
    }
    double t_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < corner_ts.size(); ++i) {
      t_mean += corner_ts[i];
      y_mean += corner_logs[i];
    }
    t_mean /= static_cast<double>(corner_ts.size());
    y_mean /= static_cast<double>(corner_ts.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < corner_ts.size(); ++i) {
      num += (corner_ts[i] - t_mean) * (corner_logs[i] - y_mean);
      den += (corner_ts[i] - t_mean) * (corner_ts[i] - t_mean);
    }
    const double corner_rel =
        std::abs(num / den - expected) / std::abs(expected);
    results.push_back(bounded("flow/corner-convergence-rate",
                              std::max(rel, corner_rel), 0.05));
  }

  return results;
}

// ── hamiltonian ──────────────────────────────────────────────────────────────

std::vector<CheckResult> check_hamiltonian(const CheckOptions& opt) {
  require_options(opt);
  std::vector<CheckResult> results;
  const std::vector<double> cost = realize_cost(geometric_cost(0.5, opt.n));

  {
    Rng rng(opt.seed + 6);
    double worst = 0.0;
    for (int k = 0; k < 64; ++k) {
      const ComplexState s = random_complex_state(opt.n, rng);
      const double phi = 6.283185307179586 * rng.uniform();
      std::vector<std::complex<double>> rotated(s.amplitudes());
      const std::complex<double> phase(std::cos(phi), std::sin(phi));
      for (auto& z : rotated) z *= phase;
      const ComplexState s_rot =
          ComplexState::from_normalized(rotated, opt.tol);
      worst = std::max(worst, std::abs(hamiltonian_value(s, cost) -
                                       hamiltonian_value(s_rot, cost)));
      for (std::size_t i = 0; i < opt.n; ++i) {
        worst = std::max(worst, std::abs(conserved_quantity(s, cost, i) -
                                         conserved_quantity(s_rot, cost, i)));
      }
      const auto rep_a = project(s, opt.tol).representative();
      const auto rep_b = project(s_rot, opt.tol).representative();
      for (std::size_t i = 0; i < opt.n; ++i) {
        worst = std::max(worst, std::abs(rep_a[i] - rep_b[i]));
      }
    }
    results.push_back(bounded("hamiltonian/gauge-invariance", worst, 1e-12));
  }

  {
    Rng rng(opt.seed + 7);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const ComplexState s = random_complex_state(opt.n, rng);
      const double h_ref = hamiltonian_value(s, cost);
      for (double t : {0.5, 1.0, 5.0, 25.0, 100.0}) {
        const ComplexState evolved = hamiltonian_flow(s, cost, t, opt.tol);
        for (std::size_t i = 0; i < opt.n; ++i) {
          worst = std::max(worst,
                           std::abs(std::norm(evolved[i]) - std::norm(s[i])));
          worst = std::max(worst, std::abs(conserved_quantity(evolved, cost, i) -
                                           conserved_quantity(s, cost, i)));
        }
        worst =
            std::max(worst, std::abs(hamiltonian_value(evolved, cost) - h_ref));
      }
    }
    results.push_back(bounded("hamiltonian/conservation", worst, 1e-12));
  }

  {
    Rng rng(opt.seed + 8);
    double worst_structure = 0.0;
    double worst_antisym = 0.0;
    const ScalarField h_c = hamiltonian_field(cost);
    const ScalarField probe = cross_term_field(0, 1);
    for (int k = 0; k < 5; ++k) {
      const ComplexState s = random_complex_state(opt.n, rng);
      for (std::size_t a = 0; a < opt.n; ++a) {
        const ScalarField f = mode_field(cost, a);
        worst_structure = std::max(
            worst_structure, std::abs(poisson_bracket(f, h_c, s, opt.tol)));
        for (std::size_t b = a + 1; b < opt.n; ++b) {
          const ScalarField g = mode_field(cost, b);
          worst_structure = std::max(
              worst_structure, std::abs(poisson_bracket(f, g, s, opt.tol)));
        }
      }
      worst_antisym = std::max(
          worst_antisym, std::abs(poisson_bracket(probe, probe, s, opt.tol)));
      worst_antisym = std::max(
          worst_antisym, std::abs(poisson_bracket(probe, h_c, s, opt.tol) +
                                  poisson_bracket(h_c, probe, s, opt.tol)));
    }
    // Control state (1, i, 0, ...)/sqrt(2): the non-commuting pair attains
    // bracket 1 there.
    std::vector<std::complex<double>> control(opt.n, 0.0);
    control[0] = {std::sqrt(0.5), 0.0};
    control[1] = {0.0, std::sqrt(0.5)};
    const double control_bracket = std::abs(poisson_bracket(
        [](const std::vector<std::complex<double>>& z) {
          return std::norm(z[0]);
        },
        probe, make_complex_state(control, opt.tol), opt.tol));
    CheckResult r = bounded("hamiltonian/bracket-structure", worst_structure,
                            1e-8);
    r.pass = r.pass && worst_antisym <= 1e-10 && control_bracket >= 1e-3;
    results.push_back(r);
  }

  {
    Rng rng(opt.seed + 9);
    double worst = 0.0;
    bool closed_ok = true;
    for (int k = 0; k < 300; ++k) {
      const ComplexState s = random_complex_state(opt.n, rng);
      const MomentumValue via_projection = momentum_torus(project(s, opt.tol));
      const MomentumValue direct = half_moduli(s);
      worst = std::max(
          worst, linf_diff(via_projection.coefficients, direct.coefficients));
      std::vector<double> doubled(direct.coefficients);
      for (double& x : doubled) x *= 2.0;
      try {
        ClosedSimplexPoint::from_normalized(doubled, opt.tol);
      } catch (const Error&) {
        closed_ok = false;
      }
    }
    CheckResult r = bounded("hamiltonian/momentum-diagram", worst, 1e-12);
    r.pass = r.pass && closed_ok;
    results.push_back(r);
  }

  {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const SimplexPoint p = random_simplex(opt.n, opt.seed + 11000 + k);
      const ComplexState s = embed_simplex(p, opt.tol);
      worst = std::max(
          worst, std::abs(hamiltonian_value(s, cost) - objective(p, cost)));
      std::vector<double> recovered = half_moduli(s).coefficients;
      for (double& x : recovered) x *= 2.0;
      worst = std::max(worst, linf_diff(recovered, p.weights()));
      worst = std::max(worst,
                       std::abs(momentum_s1(s).coefficients[0] - 1.0));
    }
    results.push_back(bounded("hamiltonian/simplex-pullback", worst, 1e-12));
  }

  {
    const SimplexPoint p0 = random_simplex(opt.n, opt.seed + 12000);
    double worst = 0.0;
    for (double t : {0.25, 1.0, 2.5}) {
      const LpSolution sphere_sol =
          sphere_gradient_flow_to_lp(p0, cost, t, 1e-3, 1e-8, opt.tol);
      const SimplexPoint reference =
          flow_closed_form(p0, cost, 4.0 * t, opt.tol);
      worst = std::max(worst, l1_diff(sphere_sol.maximizer.weights(),
                                      reference.weights()));
    }
    const LpSolution via_sphere =
        sphere_gradient_flow_to_lp(p0, cost, 10.0, 1e-3, 1e-8, opt.tol);
    const LpSolution via_flow = solve_lp(p0, cost, 1e-8, 1e6, opt.tol);
    const double solver_gap = l1_diff(via_sphere.maximizer.weights(),
                                      via_flow.maximizer.weights());
    CheckResult r = bounded("hamiltonian/sphere-flow-calibration", worst, 1e-6);
    r.pass = r.pass && solver_gap <= 1e-6 && via_sphere.converged;
    results.push_back(r);
  }

  return results;
}

// ── Suite plumbing ───────────────────────────────────────────────────────────

std::vector<CheckResult> run_suite(const std::string& suite,
                                   const CheckOptions& opt) {
  std::vector<CheckResult> results;
  const auto append = [&results](std::vector<CheckResult> part) {
    results.insert(results.end(), part.begin(), part.end());
  };
  if (suite == "core") {
    append(check_core(opt));
  } else if (suite == "transform") {
    append(check_transform(opt));
  } else if (suite == "metric") {
    append(check_metric(opt));
  } else if (suite == "flow") {
    append(check_flow(opt));
  } else if (suite == "hamiltonian") {
    append(check_hamiltonian(opt));
  } else if (suite == "all") {
    append(check_core(opt));
    append(check_transform(opt));
    append(check_metric(opt));
    append(check_flow(opt));
    append(check_hamiltonian(opt));
  } else {
    throw Error(errc::invalid_spec, "unknown check suite \"" + suite + "\"");
  }
  return results;
}

bool print_results(std::ostream& out,
                   const std::vector<CheckResult>& results) {
  std::size_t passed = 0;
  for (const CheckResult& r : results) {
    char line[160];
    std::snprintf(line, sizeof(line), "[%s] %-44s residual=%.6e limit=%.6e\n",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.residual,
                  r.limit);
    out << line;
    if (r.pass) ++passed;
  }
  out << passed << "/" << results.size() << " checks passed\n";
  return passed == results.size();
}

}  // namespace fisherflow
