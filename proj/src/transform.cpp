#include "fisherflow/transform.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace fisherflow {

namespace {

void require_q(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw Error(errc::invalid_q, "q must be a finite real > 1");
  }
}

// Fractional powers of positive reals as exp(e log x): monotone, never
// underflows to 0 for the guarded input range, and keeps one code path for
// every q.
double pos_pow(double x, double e) { return std::exp(e * std::log(x)); }

void check_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(errc::dimension_mismatch,
                std::string(what) + ": dimensions " + std::to_string(a) +
                    " and " + std::to_string(b) + " disagree");
  }
}

}  // namespace

// ── Sphere types ─────────────────────────────────────────────────────────────

SphereQPoint SphereQPoint::from_normalized(std::vector<double> coords,
                                           double q, const Tolerances& tol) {
  tol.validate();
  require_q(q);
  if (coords.empty()) {
    throw Error(errc::empty_vector, "coords is empty");
  }
  if (coords.size() < 2) {
    throw Error(errc::invalid_dimension, "coords needs at least 2 entries");
  }
  double sum_q = 0.0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!(coords[i] > 0.0) || !std::isfinite(coords[i])) {
      throw Error(errc::non_positive_entry,
                  "coords[" + std::to_string(i) + "] = " +
                      std::to_string(coords[i]) + " must be > 0");
    }
    sum_q += pos_pow(coords[i], q);
  }
  if (std::abs(sum_q - 1.0) > tol.tol_sum) {
    throw Error(errc::invalid_spec,
                "sum of coords^q differs from 1 by " +
                    std::to_string(std::abs(sum_q - 1.0)));
  }
  return SphereQPoint(std::move(coords), q);
}

SphereTangent make_sphere_tangent(const SphereQPoint& base,
                                  std::vector<double> components,
                                  const Tolerances& tol) {
  tol.validate();
  check_same_dim(components.size(), base.dim(), "sphere tangent");
  double pairing = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!std::isfinite(components[i])) {
      throw Error(errc::invalid_spec, "tangent component is not finite");
    }
    const double term = pos_pow(base[i], base.q() - 1.0) * components[i];
    pairing += term;
    scale = std::max(scale, std::abs(term));
  }
  // Tangency is checked relative to the largest pairing term so that
  // legitimately huge tangents near the boundary are not rejected for
  // roundoff alone.
  if (std::abs(pairing) > tol.tol_metric * scale) {
    throw Error(errc::invalid_spec,
                "components are not tangent: constraint residual " +
                    std::to_string(std::abs(pairing)));
  }
  return SphereTangent(std::move(components), base);
}

// ── The transform and its differential ───────────────────────────────────────

SphereQPoint q_root(const SimplexPoint& p, double q, const Tolerances& tol) {
  require_q(q);
  std::vector<double> coords(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (p[i] < 1e-300) {
      throw Error(errc::invalid_spec,
                  "weights[" + std::to_string(i) +
                      "] is below 1e-300; too close to the boundary for "
                      "the q-root transform");
    }
    coords[i] = pos_pow(p[i], 1.0 / q);
  }
  return SphereQPoint::from_normalized(std::move(coords), q, tol);
}

SimplexPoint q_root_inverse(const SphereQPoint& x, const Tolerances& tol) {
  std::vector<double> weights(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    weights[i] = pos_pow(x[i], x.q());
  }
  return SimplexPoint::from_normalized(std::move(weights), tol);
}

SphereTangent pushforward(const SimplexPoint& p, const TangentVec& v,
                          double q, const Tolerances& tol) {
  require_q(q);
  check_same_dim(v.dim(), p.dim(), "pushforward");
  SphereQPoint base = q_root(p, q, tol);
  std::vector<double> components(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    components[i] = v[i] * pos_pow(p[i], 1.0 / q - 1.0) / q;
  }
  return make_sphere_tangent(base, std::move(components), tol);
}

TangentVec pullback(const SphereQPoint& x, const SphereTangent& w,
                    const Tolerances& tol) {
  check_same_dim(w.dim(), x.dim(), "pullback");
  SimplexPoint base = q_root_inverse(x, tol);
  std::vector<double> raw(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    raw[i] = x.q() * w[i] * pos_pow(x[i], x.q() - 1.0);
  }
  // The raw sum vanishes analytically (it is the tangency pairing up to
  // the factor q); mean projection removes the roundoff residue.
  return make_tangent(base, raw);
}

}  // namespace fisherflow
