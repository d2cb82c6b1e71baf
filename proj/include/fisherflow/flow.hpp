#pragma once

#include <cstddef>
#include <vector>

#include "fisherflow/core.hpp"
#include "fisherflow/transform.hpp"

namespace fisherflow {

// ── Objective and vector fields ──────────────────────────────────────────────

/// Linear objective <c, p> = sum c_n p_n.
double objective(const SimplexPoint& p, const std::vector<double>& cost);
double objective(const ClosedSimplexPoint& p, const std::vector<double>& cost);

/// Optimality gap max_n c_n - <c, p>, computed as sum (c_max - c_n) p_n so
/// it stays accurate (and nonnegative) when p concentrates on the argmax.
double optimality_gap(const SimplexPoint& p, const std::vector<double>& cost);
double optimality_gap(const ClosedSimplexPoint& p,
                      const std::vector<double>& cost);

/// Variance of the cost under p, sum c_n^2 p_n - (sum c_n p_n)^2. Equals
/// the time derivative of the objective along the flow, which is why the
/// objective is non-decreasing.
double cost_variance(const SimplexPoint& p, const std::vector<double>& cost);

/// Replicator field W_c(p)_n = p_n (c_n - <c, p>), the ascent direction of
/// the objective on the simplex; invariant under constant shifts of c.
/// The gradient under the quarter-normalized Fisher-Rao metric is 4 W_c;
/// the library's canonical flow integrates W_c itself, a fixed time
/// rescaling.
TangentVec gradient_field(const SimplexPoint& p,
                          const std::vector<double>& cost);

/// Sphere-side gradient at x on the l^2 sphere: the tangential projection
/// P_x(2 Diag(x) c) = 2 Diag(x) c - 2 <c, x^2> x. Under p = x^2 this field
/// transports to 4 W_c(p), so the sphere flow runs four times faster than
/// the canonical simplex flow. Requires q == 2.
SphereTangent sphere_gradient(const SphereQPoint& x,
                              const std::vector<double>& cost,
                              const Tolerances& tol = {});

// ── Flow solutions ───────────────────────────────────────────────────────────

/// Closed-form integral curve of W_c through p0:
/// p_n(t) = p_n(0) exp(c_n t) / sum_k p_k(0) exp(c_k t).
/// Exponentials are evaluated as exp((c_n - max c) t), so the quotient is
/// stable for any t; weights that underflow to 0 are clamped to the
/// smallest positive normal to keep the point in the interior. Valid for
/// negative t as well.
SimplexPoint flow_closed_form(const SimplexPoint& p0,
                              const std::vector<double>& cost, double t,
                              const Tolerances& tol = {});

/// Time-sampled flow with per-sample objective and optimality gap, the
/// unit emitted as trajectory CSV. Along either flow the objective is
/// non-decreasing and the gap non-negative and non-increasing (up to
/// tol_ode for the integrated variant).
struct FlowTrajectory {
  std::vector<double> times;         // strictly increasing
  std::vector<SimplexPoint> states;  // one per time
  std::vector<double> objective;     // <c, p(t)>
  std::vector<double> gap;           // max c - <c, p(t)>

  std::size_t size() const noexcept { return times.size(); }
  std::size_t dim() const;
};

/// Samples the closed-form flow at the given times (strictly increasing).
/// Throws errc::too_few_points for an empty time vector.
FlowTrajectory sample_flow(const SimplexPoint& p0,
                           const std::vector<double>& cost,
                           const std::vector<double>& times,
                           const Tolerances& tol = {});

/// Equally spaced times 0, t_end/(n_samples-1), ..., t_end.
/// Requires n_samples >= 2 and t_end > 0.
std::vector<double> uniform_times(double t_end, std::size_t n_samples);

/// Integrates dp/dt = W_c(p) with classical RK4 at fixed step,
/// renormalizing the sum to 1 after every stage step. A step that leaves
/// the positive cone is retried at half size, recursively, at most 40
/// times before errc::step_too_large. States are recorded at the uniform
/// grid 0, step, 2 step, ..., t_end regardless of internal halving.
FlowTrajectory flow_ode(const SimplexPoint& p0,
                        const std::vector<double>& cost, double t_end,
                        double step, const Tolerances& tol = {});

// ── LP solving by flow ───────────────────────────────────────────────────────

/// Result of running the flow until the optimality gap certifies an
/// approximate maximizer of <c, p> over the closed simplex.
/// value + certificate_gap = max_n c_n up to roundoff by construction.
struct LpSolution {
  ClosedSimplexPoint maximizer;  // final iterate, widened to the closure
  double value = 0.0;            // objective at the maximizer
  double certificate_gap = 0.0;  // max c - value, always >= 0
  double horizon = 0.0;          // flow time of the final iterate
  bool converged = false;        // certificate_gap <= gap_tol
  bool unique_argmax = true;     // cost attains its maximum exactly once
};

/// Maximizes <c, p> by evaluating the closed-form flow at horizons
/// 0, 1, 2, 4, 8, ... until the gap drops to gap_tol; a last evaluation at
/// t_max is made before giving up (converged=false, best iterate kept).
/// For strictly decreasing c the maximizer approaches the first corner
/// e_0; with ties the limit splits mass over the argmax set proportionally
/// to p0, and unique_argmax is cleared.
LpSolution solve_lp(const SimplexPoint& p0, const std::vector<double>& cost,
                    double gap_tol = 1e-8, double t_max = 1e6,
                    const Tolerances& tol = {});

/// Asymptotic decay rate of the optimality gap: least-squares slope of
/// log(gap) against t over the trailing half of the trajectory (samples
/// with gap <= 0 are skipped). For a cost with a strict maximum the flow
/// gives slope -(c_(1) - c_(2)), the gap between the two largest entries.
/// Throws errc::degenerate_window when the cost is constant or fewer than
/// two usable samples remain.
double convergence_rate(const FlowTrajectory& traj,
                        const std::vector<double>& cost);

}  // namespace fisherflow
