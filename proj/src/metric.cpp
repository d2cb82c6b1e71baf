#include "fisherflow/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace fisherflow {

namespace {

void check_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(errc::dimension_mismatch,
                std::string(what) + ": dimensions " + std::to_string(a) +
                    " and " + std::to_string(b) + " disagree");
  }
}

void require_q(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw Error(errc::invalid_q, "q must be a finite real > 1");
  }
}

double bhattacharyya_angle(const std::vector<double>& p,
                           const std::vector<double>& r) {
  check_same_dim(p.size(), r.size(), "distance");
  // Coincident points short-circuit to 0: the arccos form cannot resolve
  // distances below ~1e-8 (arccos(1-eps) ~ sqrt(2 eps)), and d(p,p) must
  // be 0, not roundoff noise.
  if (p == r) return 0.0;
  double cosine = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cosine += std::sqrt(p[i] * r[i]);
  }
  // The overlap can exceed 1 by roundoff; the clamp keeps acos defined.
  return std::acos(std::clamp(cosine, -1.0, 1.0));
}

// Great-circle combination (sin((1-t)a) x0 + sin(ta) x1) / sin(a).
std::vector<double> slerp(const std::vector<double>& x0,
                          const std::vector<double>& x1, double angle,
                          double t) {
  const double denom = std::sin(angle);
  const double c0 = std::sin((1.0 - t) * angle) / denom;
  const double c1 = std::sin(t * angle) / denom;
  std::vector<double> x(x0.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = c0 * x0[i] + c1 * x1[i];
  }
  return x;
}

std::vector<double> componentwise_sqrt(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::sqrt(v[i]);
  return out;
}

}  // namespace

// ── Metric tensors ───────────────────────────────────────────────────────────

double fisher_rao_inner(const SimplexPoint& p, const TangentVec& v,
                        const TangentVec& w) {
  check_same_dim(v.dim(), p.dim(), "inner product");
  check_same_dim(w.dim(), p.dim(), "inner product");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    sum += v[i] * w[i] / p[i];
  }
  return 0.25 * sum;
}

double fisher_rao_norm(const SimplexPoint& p, const TangentVec& v) {
  return std::sqrt(fisher_rao_inner(p, v, v));
}

double finsler_norm_q(const SimplexPoint& p, const TangentVec& v, double q) {
  require_q(q);
  check_same_dim(v.dim(), p.dim(), "Finsler norm");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    sum += std::pow(std::abs(v[i]) / p[i], q) * p[i];
  }
  return std::pow(sum, 1.0 / q);
}

double sphere_norm_q(const SphereTangent& w) {
  const double q = w.base().q();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.dim(); ++i) {
    sum += std::pow(std::abs(w[i]), q);
  }
  return std::pow(sum, 1.0 / q);
}

// ── Distance and geodesics ───────────────────────────────────────────────────

double fr_distance(const SimplexPoint& p, const SimplexPoint& r) {
  return bhattacharyya_angle(p.weights(), r.weights());
}

double fr_distance_closed(const ClosedSimplexPoint& p,
                          const ClosedSimplexPoint& r) {
  return bhattacharyya_angle(p.weights(), r.weights());
}

GeodesicSegment::GeodesicSegment(SimplexPoint s, SimplexPoint e,
                                 std::vector<double> x0,
                                 std::vector<double> x1, double angle,
                                 Tolerances tol)
    : start_(std::move(s)),
      end_(std::move(e)),
      x0_(std::move(x0)),
      x1_(std::move(x1)),
      angle_(angle),
      tol_(tol) {}

SimplexPoint GeodesicSegment::sample(double t) const {
  const std::vector<double> x = slerp(x0_, x1_, angle_, t);
  std::vector<double> weights(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) weights[i] = x[i] * x[i];
  return SimplexPoint::from_normalized(std::move(weights), tol_);
}

TangentVec GeodesicSegment::velocity(double t) const {
  const std::vector<double> x = slerp(x0_, x1_, angle_, t);
  const double denom = std::sin(angle_);
  const double d0 = -angle_ * std::cos((1.0 - t) * angle_) / denom;
  const double d1 = angle_ * std::cos(t * angle_) / denom;
  std::vector<double> weights(x.size());
  std::vector<double> raw(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    weights[i] = x[i] * x[i];
    // d/dt x^2 = 2 x x'.
    raw[i] = 2.0 * x[i] * (d0 * x0_[i] + d1 * x1_[i]);
  }
  SimplexPoint base =
      SimplexPoint::from_normalized(std::move(weights), tol_);
  return make_tangent(base, raw);
}

std::vector<SimplexPoint> GeodesicSegment::sample_uniform(
    std::size_t n_points) const {
  if (n_points < 2) {
    throw Error(errc::too_few_points, "need at least 2 sample points");
  }
  std::vector<SimplexPoint> out;
  out.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double t =
        static_cast<double>(i) / static_cast<double>(n_points - 1);
    out.push_back(sample(t));
  }
  return out;
}

GeodesicSegment geodesic(const SimplexPoint& p, const SimplexPoint& r,
                         const Tolerances& tol) {
  tol.validate();
  const double angle = fr_distance(p, r);
  if (angle == 0.0) {
    throw Error(errc::identical_endpoints,
                "endpoints coincide; no geodesic direction");
  }
  return GeodesicSegment(p, r, componentwise_sqrt(p.weights()),
                         componentwise_sqrt(r.weights()), angle, tol);
}

ClosedSimplexPoint closed_geodesic_point(const ClosedSimplexPoint& p,
                                         const ClosedSimplexPoint& r,
                                         double t, const Tolerances& tol) {
  tol.validate();
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(errc::invalid_spec,
                "boundary geodesics are only sampled for t in [0, 1]");
  }
  const double angle = fr_distance_closed(p, r);
  if (angle == 0.0) {
    throw Error(errc::identical_endpoints,
                "endpoints coincide; no geodesic direction");
  }
  const std::vector<double> x = slerp(componentwise_sqrt(p.weights()),
                                      componentwise_sqrt(r.weights()),
                                      angle, t);
  std::vector<double> weights(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) weights[i] = x[i] * x[i];
  return ClosedSimplexPoint::from_normalized(std::move(weights), tol);
}

// ── Discrete path functionals ────────────────────────────────────────────────

double path_length(const std::vector<SimplexPoint>& path) {
  if (path.size() < 2) {
    throw Error(errc::too_few_points, "path needs at least 2 points");
  }
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    length += fr_distance(path[i], path[i + 1]);
  }
  return length;
}

double path_energy(const std::vector<SimplexPoint>& path, double dt) {
  if (path.size() < 2) {
    throw Error(errc::too_few_points, "path needs at least 2 points");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(errc::invalid_spec, "dt must be a positive real");
  }
  double energy = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const std::vector<double>& a = path[i].weights();
    const std::vector<double>& b = path[i + 1].weights();
    check_same_dim(a.size(), b.size(), "path energy");
    std::vector<double> mid(a.size());
    std::vector<double> chord(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      mid[k] = 0.5 * (a[k] + b[k]);
      chord[k] = (b[k] - a[k]) / dt;
    }
    const SimplexPoint base = make_simplex(mid);
    const TangentVec v = make_tangent(base, chord);
    energy += fisher_rao_inner(base, v, v) * dt;
  }
  return energy;
}

}  // namespace fisherflow
