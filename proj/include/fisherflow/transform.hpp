#pragma once

#include <cstddef>
#include <vector>

#include "fisherflow/core.hpp"

namespace fisherflow {

// ── q-root sphere points ─────────────────────────────────────────────────────

/// Point on the positive orthant of the unit sphere of l^q: coordinates
/// x_n > 0 with sum x_n^q = 1 (within tol_sum). Carries its q.
class SphereQPoint {
public:
  static SphereQPoint from_normalized(std::vector<double> coords, double q,
                                      const Tolerances& tol = {});

  const std::vector<double>& coords() const noexcept { return coords_; }
  double q() const noexcept { return q_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

private:
  SphereQPoint(std::vector<double> c, double q)
      : coords_(std::move(c)), q_(q) {}
  std::vector<double> coords_;
  double q_;
};

/// Tangent vector at a SphereQPoint: components w with
/// sum x_n^(q-1) w_n = 0 (within tol_metric), the kernel of the
/// differential of the sphere constraint.
class SphereTangent {
public:
  const std::vector<double>& components() const noexcept { return components_; }
  const SphereQPoint& base() const noexcept { return base_; }
  std::size_t dim() const noexcept { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }

private:
  friend SphereTangent pushforward(const SimplexPoint&,
                                   const TangentVec&, double,
                                   const Tolerances&);
  friend SphereTangent make_sphere_tangent(const SphereQPoint&,
                                           std::vector<double>,
                                           const Tolerances&);
  SphereTangent(std::vector<double> c, SphereQPoint b)
      : components_(std::move(c)), base_(std::move(b)) {}
  std::vector<double> components_;
  SphereQPoint base_;
};

/// Validates the tangency constraint and attaches components to base.
SphereTangent make_sphere_tangent(const SphereQPoint& base,
                                  std::vector<double> components,
                                  const Tolerances& tol = {});

// ── The transform and its differential ───────────────────────────────────────

/// Component-wise q-th root, p_n -> p_n^(1/q), mapping the simplex onto the
/// positive orthant of the l^q unit sphere. Requires finite q > 1; weights
/// below 1e-300 are rejected rather than risked against underflow.
SphereQPoint q_root(const SimplexPoint& p, double q,
                    const Tolerances& tol = {});

/// Inverse transform x_n -> x_n^q; exact round trip up to roundoff.
SimplexPoint q_root_inverse(const SphereQPoint& x,
                            const Tolerances& tol = {});

/// Differential of q_root at p applied to v:
/// w_n = (1/q) v_n p_n^(1/q - 1).
SphereTangent pushforward(const SimplexPoint& p, const TangentVec& v,
                          double q, const Tolerances& tol = {});

/// Differential of q_root_inverse at x applied to w:
/// v_n = q w_n x_n^(q-1). Inverse of pushforward on tangent vectors.
TangentVec pullback(const SphereQPoint& x, const SphereTangent& w,
                    const Tolerances& tol = {});

}  // namespace fisherflow
