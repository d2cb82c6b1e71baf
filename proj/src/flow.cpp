#include "fisherflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace fisherflow {

namespace {

void check_cost(const std::vector<double>& cost, std::size_t dim,
                const char* what) {
  if (cost.size() != dim) {
    throw Error(errc::dimension_mismatch,
                std::string(what) + ": cost has length " +
                    std::to_string(cost.size()) + ", point has dimension " +
                    std::to_string(dim));
  }
  for (double c : cost) {
    if (!std::isfinite(c)) {
      throw Error(errc::invalid_spec, "cost entries must be finite");
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double gap_of(const std::vector<double>& cost, const std::vector<double>& p) {
  const double c_max = *std::max_element(cost.begin(), cost.end());
  double gap = 0.0;
  for (std::size_t i = 0; i < cost.size(); ++i) {
    gap += (c_max - cost[i]) * p[i];
  }
  return gap;
}

// W_c on raw weights; used by RK4 stages where intermediate vectors are
// not valid simplex points.
void replicator(const std::vector<double>& cost, const std::vector<double>& p,
                std::vector<double>& out) {
  const double mean = dot(cost, p);
  out.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = p[i] * (cost[i] - mean);
  }
}

void normalize_in_place(std::vector<double>& p) {
  double sum = 0.0;
  for (double w : p) sum += w;
  for (double& w : p) w /= sum;
}

void append_state(FlowTrajectory& traj, double t, SimplexPoint state,
                  const std::vector<double>& cost) {
  traj.times.push_back(t);
  traj.objective.push_back(dot(cost, state.weights()));
  traj.gap.push_back(gap_of(cost, state.weights()));
  traj.states.push_back(std::move(state));
}

}  // namespace

// ── Objective and vector fields ──────────────────────────────────────────────

double objective(const SimplexPoint& p, const std::vector<double>& cost) {
  check_cost(cost, p.dim(), "objective");
  return dot(cost, p.weights());
}

double objective(const ClosedSimplexPoint& p, const std::vector<double>& cost) {
  check_cost(cost, p.dim(), "objective");
  return dot(cost, p.weights());
}

double optimality_gap(const SimplexPoint& p, const std::vector<double>& cost) {
  check_cost(cost, p.dim(), "optimality gap");
  return gap_of(cost, p.weights());
}

double optimality_gap(const ClosedSimplexPoint& p,
                      const std::vector<double>& cost) {
  check_cost(cost, p.dim(), "optimality gap");
  return gap_of(cost, p.weights());
}

double cost_variance(const SimplexPoint& p, const std::vector<double>& cost) {
  check_cost(cost, p.dim(), "cost variance");
  const double mean = dot(cost, p.weights());
  double var = 0.0;
  for (std::size_t i = 0; i < cost.size(); ++i) {
    const double centered = cost[i] - mean;
    var += centered * centered * p[i];
  }
  return var;
}

TangentVec gradient_field(const SimplexPoint& p,
                          const std::vector<double>& cost) {
  check_cost(cost, p.dim(), "gradient field");
  std::vector<double> raw;
  replicator(cost, p.weights(), raw);
  return make_tangent(p, raw);
}

SphereTangent sphere_gradient(const SphereQPoint& x,
                              const std::vector<double>& cost,
                              const Tolerances& tol) {
  if (x.q() != 2.0) {
    throw Error(errc::invalid_q, "sphere gradient is defined on the l2 sphere");
  }
  check_cost(cost, x.dim(), "sphere gradient");
  // P_x(2 Diag(x) c) = 2 Diag(x) c - <2 Diag(x) c, x> x.
  double radial = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    radial += 2.0 * cost[i] * x[i] * x[i];
  }
  std::vector<double> components(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    components[i] = 2.0 * cost[i] * x[i] - radial * x[i];
  }
  return make_sphere_tangent(x, std::move(components), tol);
}

// ── Flow solutions ───────────────────────────────────────────────────────────

SimplexPoint flow_closed_form(const SimplexPoint& p0,
                              const std::vector<double>& cost, double t,
                              const Tolerances& tol) {
  check_cost(cost, p0.dim(), "closed-form flow");
  if (!std::isfinite(t)) {
    throw Error(errc::invalid_spec, "flow time must be finite");
  }
  // Shift by the cost entry that dominates for this sign of t, so every
  // exponent is <= 0. Differences are formed before multiplying by t;
  // constant cost shifts then cancel term by term.
  const double c_star = t >= 0.0
                            ? *std::max_element(cost.begin(), cost.end())
                            : *std::min_element(cost.begin(), cost.end());
  std::vector<double> weights(p0.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < p0.dim(); ++i) {
    weights[i] = p0[i] * std::exp((cost[i] - c_star) * t);
    sum += weights[i];
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw Error(errc::overflow, "closed-form flow normalizer degenerated");
  }
  for (double& w : weights) {
    w /= sum;
    // A weight can underflow to 0 at extreme horizons; the interior
    // invariant is preserved by clamping to the smallest positive normal.
    if (w == 0.0) w = std::numeric_limits<double>::min();
  }
  return SimplexPoint::from_normalized(std::move(weights), tol);
}

std::size_t FlowTrajectory::dim() const {
  if (states.empty()) {
    throw Error(errc::too_few_points, "trajectory is empty");
  }
  return states.front().dim();
}

FlowTrajectory sample_flow(const SimplexPoint& p0,
                           const std::vector<double>& cost,
                           const std::vector<double>& times,
                           const Tolerances& tol) {
  if (times.empty()) {
    throw Error(errc::too_few_points, "need at least one sample time");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) {
      throw Error(errc::invalid_spec, "sample times must be finite");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw Error(errc::invalid_spec,
                  "sample times must be strictly increasing");
    }
  }
  FlowTrajectory traj;
  for (double t : times) {
    append_state(traj, t, flow_closed_form(p0, cost, t, tol), cost);
  }
  return traj;
}

std::vector<double> uniform_times(double t_end, std::size_t n_samples) {
  if (n_samples < 2) {
    throw Error(errc::too_few_points, "need at least 2 sample times");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(errc::invalid_spec, "t_end must be a positive real");
  }
  std::vector<double> times(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    times[i] = t_end * static_cast<double>(i) /
               static_cast<double>(n_samples - 1);
  }
  return times;
}

namespace {

void rk4_step(const std::vector<double>& cost, std::vector<double>& p,
              double h) {
  const std::size_t n = p.size();
  std::vector<double> k1, k2, k3, k4, stage(n);
  replicator(cost, p, k1);
  for (std::size_t i = 0; i < n; ++i) stage[i] = p[i] + 0.5 * h * k1[i];
  replicator(cost, stage, k2);
  for (std::size_t i = 0; i < n; ++i) stage[i] = p[i] + 0.5 * h * k2[i];
  replicator(cost, stage, k3);
  for (std::size_t i = 0; i < n; ++i) stage[i] = p[i] + h * k3[i];
  replicator(cost, stage, k4);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

bool positive_and_finite(const std::vector<double>& p) {
  for (double w : p) {
    if (!(w > 0.0) || !std::isfinite(w)) return false;
  }
  return true;
}

// One guarded step of size h: RK4 is not positivity-preserving, so a step
// that exits the positive cone is replaced by two half steps, recursively.
void advance_guarded(const std::vector<double>& cost, std::vector<double>& p,
                     double h, int depth) {
  std::vector<double> trial = p;
  rk4_step(cost, trial, h);
  if (positive_and_finite(trial)) {
    normalize_in_place(trial);
    p = std::move(trial);
    return;
  }
  if (depth >= 40) {
    throw Error(errc::step_too_large,
                "positivity lost after 40 step halvings");
  }
  advance_guarded(cost, p, 0.5 * h, depth + 1);
  advance_guarded(cost, p, 0.5 * h, depth + 1);
}

}  // namespace

FlowTrajectory flow_ode(const SimplexPoint& p0,
                        const std::vector<double>& cost, double t_end,
                        double step, const Tolerances& tol) {
  check_cost(cost, p0.dim(), "flow ODE");
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(errc::invalid_spec, "step must be a positive real");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(errc::invalid_spec, "t_end must be a nonnegative real");
  }
  FlowTrajectory traj;
  append_state(traj, 0.0, p0, cost);
  std::vector<double> p = p0.weights();
  double t = 0.0;
  while (t < t_end - 1e-15 * std::max(1.0, t_end)) {
    const double h = std::min(step, t_end - t);
    advance_guarded(cost, p, h, 0);
    t += h;
    append_state(traj, t, SimplexPoint::from_normalized(p, tol), cost);
  }
  return traj;
}

// ── LP solving by flow ───────────────────────────────────────────────────────

LpSolution solve_lp(const SimplexPoint& p0, const std::vector<double>& cost,
                    double gap_tol, double t_max, const Tolerances& tol) {
  check_cost(cost, p0.dim(), "LP solve");
  if (!(gap_tol > 0.0) || !std::isfinite(gap_tol)) {
    throw Error(errc::invalid_spec, "gap_tol must be a positive real");
  }
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw Error(errc::invalid_spec, "t_max must be a nonnegative real");
  }
  const double c_max = *std::max_element(cost.begin(), cost.end());
  const std::size_t argmax_count = static_cast<std::size_t>(
      std::count(cost.begin(), cost.end(), c_max));

  LpSolution sol{p0.closure(), 0.0, 0.0, 0.0, false, argmax_count == 1};
  SimplexPoint current = p0;
  double horizon = 0.0;
  // Horizons 0, 1, 2, 4, ...; the gap of the closed-form flow is
  // non-increasing in t, so the last evaluation is always the best.
  for (;;) {
    sol.certificate_gap = optimality_gap(current, cost);
    sol.horizon = horizon;
    if (sol.certificate_gap <= gap_tol) {
      sol.converged = true;
      break;
    }
    double next = horizon == 0.0 ? 1.0 : 2.0 * horizon;
    if (next > t_max) {
      if (horizon < t_max) {
        next = t_max;  // one last evaluation at the cap
      } else {
        break;
      }
    }
    horizon = next;
    current = flow_closed_form(p0, cost, horizon, tol);
  }
  sol.maximizer = current.closure();
  sol.value = objective(sol.maximizer, cost);
  sol.certificate_gap = optimality_gap(sol.maximizer, cost);
  return sol;
}

double convergence_rate(const FlowTrajectory& traj,
                        const std::vector<double>& cost) {
  if (traj.size() < 2) {
    throw Error(errc::degenerate_window,
                "trajectory too short for a rate fit");
  }
  check_cost(cost, traj.dim(), "convergence rate");
  const auto [lo, hi] = std::minmax_element(cost.begin(), cost.end());
  if (*lo == *hi) {
    throw Error(errc::degenerate_window,
                "constant cost has no decaying gap");
  }
  // Fit log(gap) ~ a + slope * t over the trailing half, skipping samples
  // whose gap already collapsed to zero.
  std::vector<double> ts, logs;
  for (std::size_t i = traj.size() / 2; i < traj.size(); ++i) {
    if (traj.gap[i] > 0.0) {
      ts.push_back(traj.times[i]);
      logs.push_back(std::log(traj.gap[i]));
    }
  }
  if (ts.size() < 2) {
    throw Error(errc::degenerate_window,
                "fewer than two positive gaps in the fit window");
  }
  double t_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t_mean += ts[i];
    y_mean += logs[i];
  }
  t_mean /= static_cast<double>(ts.size());
  y_mean /= static_cast<double>(ts.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    num += (ts[i] - t_mean) * (logs[i] - y_mean);
    den += (ts[i] - t_mean) * (ts[i] - t_mean);
  }
  if (den == 0.0) {
    throw Error(errc::degenerate_window, "fit window has no time spread");
  }
  return num / den;
}

}  // namespace fisherflow
