#pragma once

#include <cstddef>
#include <vector>

#include "fisherflow/core.hpp"
#include "fisherflow/transform.hpp"

namespace fisherflow {

// ── Metric tensors ───────────────────────────────────────────────────────────

/// Fisher-Rao inner product at p: (1/4) sum v_n w_n / p_n.
/// Symmetric, bilinear, positive definite on sum-zero vectors.
double fisher_rao_inner(const SimplexPoint& p, const TangentVec& v,
                        const TangentVec& w);

/// Fisher-Rao norm, sqrt of the inner product of v with itself.
double fisher_rao_norm(const SimplexPoint& p, const TangentVec& v);

/// The l^q Finsler norm at p: F(v) = (sum |v_n / p_n|^q p_n)^(1/q).
/// Absolutely homogeneous; at q = 2 it equals twice the Fisher-Rao norm.
double finsler_norm_q(const SimplexPoint& p, const TangentVec& v, double q);

/// l^q norm of a sphere tangent, (sum |w_n|^q)^(1/q), taking q from the
/// base point. The pushforward of v under the q-root transform has l^q
/// norm (1/q) * finsler_norm_q(p, v, q); the 1/q is the chain-rule factor
/// of the transform and is pinned by tests rather than absorbed here.
double sphere_norm_q(const SphereTangent& w);

// ── Distance and geodesics ───────────────────────────────────────────────────

/// Fisher-Rao distance: the Bhattacharyya angle
/// arccos(sum sqrt(p_n r_n)), argument clamped to [-1, 1] to absorb
/// roundoff. Symmetric, zero iff p = r, at most pi/2.
double fr_distance(const SimplexPoint& p, const SimplexPoint& r);

/// Same formula on closed-simplex points; disjoint supports sit at the
/// maximal distance pi/2.
double fr_distance_closed(const ClosedSimplexPoint& p,
                          const ClosedSimplexPoint& r);

/// Minimizing Fisher-Rao geodesic between two interior points, realized as
/// the great-circle arc between their square-root images:
/// x(t) = (sin((1-t) theta) x0 + sin(t theta) x1) / sin(theta),
/// p(t) = x(t)^2. Sampling is exact; no ODE is solved.
class GeodesicSegment {
public:
  const SimplexPoint& start() const noexcept { return start_; }
  const SimplexPoint& end() const noexcept { return end_; }
  /// Bhattacharyya angle between the endpoints; equals the length.
  double angle() const noexcept { return angle_; }
  double length() const noexcept { return angle_; }

  /// Point at parameter t in [0, 1]; constant-speed parameterization.
  SimplexPoint sample(double t) const;

  /// Velocity at parameter t, attached to sample(t); its Fisher-Rao norm
  /// equals angle() for every t.
  TangentVec velocity(double t) const;

  /// n_points samples at equally spaced parameters including both ends.
  /// Requires n_points >= 2.
  std::vector<SimplexPoint> sample_uniform(std::size_t n_points) const;

private:
  friend GeodesicSegment geodesic(const SimplexPoint&, const SimplexPoint&,
                                  const Tolerances&);
  GeodesicSegment(SimplexPoint s, SimplexPoint e, std::vector<double> x0,
                  std::vector<double> x1, double angle, Tolerances tol);

  SimplexPoint start_;
  SimplexPoint end_;
  std::vector<double> x0_;  // sqrt of start weights
  std::vector<double> x1_;  // sqrt of end weights
  double angle_;
  Tolerances tol_;
};

/// Constructs the geodesic from p to r. Throws errc::identical_endpoints
/// when the Bhattacharyya angle vanishes.
GeodesicSegment geodesic(const SimplexPoint& p, const SimplexPoint& r,
                         const Tolerances& tol = {});

/// Geodesic sample between closed-simplex endpoints, t in [0, 1]. Corners
/// are allowed; coordinates vanishing at both endpoints stay zero, so the
/// result is only a closed point. Distinct endpoints required.
ClosedSimplexPoint closed_geodesic_point(const ClosedSimplexPoint& p,
                                         const ClosedSimplexPoint& r,
                                         double t,
                                         const Tolerances& tol = {});

// ── Discrete path functionals ────────────────────────────────────────────────

/// Discrete length: sum of fr_distance over consecutive pairs.
/// Requires at least two points.
double path_length(const std::vector<SimplexPoint>& path);

/// Discrete Fisher-Rao energy of a uniformly spaced path with time step
/// dt: sum_i |chord_i / dt|^2_g dt, with chord_i = p_{i+1} - p_i projected
/// to sum-zero and the metric evaluated at the normalized chord midpoint.
/// The midpoint base keeps the quadrature second order, which the
/// straddled left-endpoint rule is not; geodesics approach the infimum
/// length^2 / T as dt -> 0. Requires >= 2 points and dt > 0.
double path_energy(const std::vector<SimplexPoint>& path, double dt);

}  // namespace fisherflow
