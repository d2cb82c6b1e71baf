#include "fisherflow/core.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <utility>

namespace fisherflow {

namespace {

double sum_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

std::string describe_entry(const char* what, std::size_t index, double value) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s[%zu] = %.17g", what, index, value);
  return buf;
}

void require_finite(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(errc::invalid_spec,
                  describe_entry(what, i, v[i]) + " is not finite");
    }
  }
}

void require_shape(const std::vector<double>& v, const char* what) {
  if (v.empty()) {
    throw Error(errc::empty_vector, std::string(what) + " is empty");
  }
  if (v.size() < 2) {
    throw Error(errc::invalid_dimension,
                std::string(what) + " needs at least 2 entries");
  }
  require_finite(v, what);
}

void require_unit_sum(const std::vector<double>& v, double tol_sum,
                      const char* what) {
  const double sum = sum_of(v);
  if (std::abs(sum - 1.0) > tol_sum) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%s sum %.17g differs from 1 by more than %g", what, sum,
                  tol_sum);
    throw Error(errc::invalid_spec, buf);
  }
}

}  // namespace

// ── Errors ───────────────────────────────────────────────────────────────────

const char* errc_name(errc code) {
  switch (code) {
    case errc::empty_vector: return "EmptyVector";
    case errc::invalid_dimension: return "InvalidDimension";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::non_positive_entry: return "NonPositiveEntry";
    case errc::negative_entry: return "NegativeEntry";
    case errc::invalid_spec: return "InvalidSpec";
    case errc::unsupported_kind: return "UnsupportedKind";
    case errc::invalid_q: return "InvalidQ";
    case errc::identical_endpoints: return "IdenticalEndpoints";
    case errc::too_few_points: return "TooFewPoints";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::step_too_large: return "StepTooLarge";
    case errc::degenerate_window: return "DegenerateWindow";
    case errc::numerical_breakdown: return "NumericalBreakdown";
    case errc::overflow: return "Overflow";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

bool Error::numerical() const noexcept {
  switch (code_) {
    case errc::step_too_large:
    case errc::degenerate_window:
    case errc::numerical_breakdown:
    case errc::overflow:
      return true;
    default:
      return false;
  }
}

// ── Tolerances ───────────────────────────────────────────────────────────────

void Tolerances::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"tol_sum", tol_sum},
      {"tol_metric", tol_metric},
      {"tol_ode", tol_ode},
      {"fd_step", fd_step},
  };
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(errc::invalid_spec,
                  std::string(name) + " must be a positive finite real");
    }
  }
}

// ── Points and tangent vectors ───────────────────────────────────────────────

ClosedSimplexPoint ClosedSimplexPoint::from_normalized(
    std::vector<double> weights, const Tolerances& tol) {
  tol.validate();
  require_shape(weights, "weights");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) {
      throw Error(errc::negative_entry,
                  describe_entry("weights", i, weights[i]) + " must be >= 0");
    }
  }
  require_unit_sum(weights, tol.tol_sum, "weights");
  return ClosedSimplexPoint(std::move(weights));
}

SimplexPoint SimplexPoint::from_normalized(std::vector<double> weights,
                                           const Tolerances& tol) {
  tol.validate();
  require_shape(weights, "weights");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) {
      throw Error(errc::non_positive_entry,
                  describe_entry("weights", i, weights[i]) + " must be > 0");
    }
  }
  require_unit_sum(weights, tol.tol_sum, "weights");
  return SimplexPoint(std::move(weights));
}

ClosedSimplexPoint SimplexPoint::closure() const {
  // Interior invariants imply the closed ones; no re-validation.
  return ClosedSimplexPoint(weights_);
}

SimplexPoint make_simplex(const std::vector<double>& raw,
                          const Tolerances& tol) {
  tol.validate();
  require_shape(raw, "weights");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] > 0.0)) {
      throw Error(errc::non_positive_entry,
                  describe_entry("weights", i, raw[i]) + " must be > 0");
    }
  }
  const double sum = sum_of(raw);
  if (!std::isfinite(sum)) {
    throw Error(errc::invalid_spec, "weight sum overflows");
  }
  std::vector<double> weights(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) weights[i] = raw[i] / sum;
  return SimplexPoint::from_normalized(std::move(weights), tol);
}

ClosedSimplexPoint make_closed_simplex(const std::vector<double>& raw,
                                       const Tolerances& tol) {
  tol.validate();
  require_shape(raw, "weights");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 0.0) {
      throw Error(errc::negative_entry,
                  describe_entry("weights", i, raw[i]) + " must be >= 0");
    }
  }
  const double sum = sum_of(raw);
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw Error(errc::invalid_spec, "weights need a positive finite sum");
  }
  std::vector<double> weights(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) weights[i] = raw[i] / sum;
  return ClosedSimplexPoint::from_normalized(std::move(weights), tol);
}

SimplexPoint uniform_simplex(std::size_t n) {
  if (n < 2) {
    throw Error(errc::invalid_dimension, "simplex needs dimension >= 2");
  }
  return SimplexPoint::from_normalized(
      std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

TangentVec make_tangent(const SimplexPoint& base,
                        const std::vector<double>& raw) {
  if (raw.size() != base.dim()) {
    throw Error(errc::dimension_mismatch,
                "tangent components have length " + std::to_string(raw.size()) +
                    ", base has dimension " + std::to_string(base.dim()));
  }
  require_finite(raw, "components");
  const double mean = sum_of(raw) / static_cast<double>(raw.size());
  std::vector<double> components(raw.size());
  double scale = 1.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    components[i] = raw[i] - mean;
    scale = std::max(scale, std::abs(components[i]));
  }
  // Projection leaves a roundoff residual proportional to the component
  // scale; the sum-zero invariant is enforced relative to it.
  const double residual = std::abs(sum_of(components));
  if (residual > 1e-12 * scale) {
    throw Error(errc::numerical_breakdown,
                "sum-zero projection residual " + std::to_string(residual));
  }
  return TangentVec(std::move(components), base);
}

// ── Cost sequences ───────────────────────────────────────────────────────────

CostSpec geometric_cost(double ratio, std::size_t n, double shift) {
  CostSpec spec;
  spec.kind = CostKind::geometric;
  spec.n = n;
  spec.ratio = ratio;
  spec.shift = shift;
  return spec;
}

CostSpec power_cost(double exponent, std::size_t n, double shift) {
  CostSpec spec;
  spec.kind = CostKind::power;
  spec.n = n;
  spec.exponent = exponent;
  spec.shift = shift;
  return spec;
}

CostSpec explicit_cost(std::vector<double> values) {
  CostSpec spec;
  spec.kind = CostKind::explicit_values;
  spec.n = values.size();
  spec.values = std::move(values);
  return spec;
}

std::vector<double> realize_cost(const CostSpec& spec) {
  if (!std::isfinite(spec.shift)) {
    throw Error(errc::invalid_spec, "cost shift must be finite");
  }
  std::vector<double> cost;
  switch (spec.kind) {
    case CostKind::explicit_values: {
      if (spec.values.empty()) {
        throw Error(errc::invalid_spec, "explicit cost needs values");
      }
      if (spec.n != spec.values.size()) {
        throw Error(errc::invalid_spec,
                    "explicit cost n disagrees with values length");
      }
      cost = spec.values;
      for (double& c : cost) c += spec.shift;
      break;
    }
    case CostKind::geometric: {
      if (!(spec.ratio > 0.0) || !(spec.ratio < 1.0)) {
        throw Error(errc::invalid_spec, "geometric ratio must lie in (0, 1)");
      }
      if (spec.n == 0) {
        throw Error(errc::invalid_spec, "cost length must be positive");
      }
      cost.resize(spec.n);
      for (std::size_t k = 0; k < spec.n; ++k) {
        cost[k] = std::pow(spec.ratio, static_cast<double>(k)) + spec.shift;
      }
      break;
    }
    case CostKind::power: {
      if (!(spec.exponent > 0.0) || !std::isfinite(spec.exponent)) {
        throw Error(errc::invalid_spec, "power exponent must be positive");
      }
      if (spec.n == 0) {
        throw Error(errc::invalid_spec, "cost length must be positive");
      }
      cost.resize(spec.n);
      for (std::size_t k = 0; k < spec.n; ++k) {
        cost[k] =
            std::pow(static_cast<double>(k + 1), -spec.exponent) + spec.shift;
      }
      break;
    }
  }
  require_finite(cost, "cost");
  if (spec.kind != CostKind::explicit_values) {
    for (std::size_t k = 1; k < cost.size(); ++k) {
      if (!(cost[k] < cost[k - 1])) {
        throw Error(errc::invalid_spec,
                    "generated cost is not strictly decreasing in double "
                    "precision; move ratio/exponent away from the boundary");
      }
    }
  }
  return cost;
}

double tail_mass(const CostSpec& spec, std::size_t n) {
  if (spec.shift != 0.0) {
    throw Error(errc::unsupported_kind,
                "tail mass of a shifted cost is not square-summable");
  }
  switch (spec.kind) {
    case CostKind::explicit_values:
      throw Error(errc::unsupported_kind,
                  "explicit costs have no generated tail");
    case CostKind::geometric: {
      if (!(spec.ratio > 0.0) || !(spec.ratio < 1.0)) {
        throw Error(errc::invalid_spec, "geometric ratio must lie in (0, 1)");
      }
      const double r2 = spec.ratio * spec.ratio;
      return std::pow(r2, static_cast<double>(n)) / (1.0 - r2);
    }
    case CostKind::power: {
      if (!(spec.exponent > 0.0) || !std::isfinite(spec.exponent)) {
        throw Error(errc::invalid_spec, "power exponent must be positive");
      }
      const double a = 2.0 * spec.exponent;
      if (a <= 1.0) return std::numeric_limits<double>::infinity();
      // Euler-Maclaurin for sum_{m >= M} m^-a, three terms.
      const double m = static_cast<double>(n) + 1.0;
      return std::pow(m, 1.0 - a) / (a - 1.0) + 0.5 * std::pow(m, -a) +
             a / 12.0 * std::pow(m, -a - 1.0);
    }
  }
  throw Error(errc::unsupported_kind, "unknown cost kind");
}

// ── Seeded random generation ─────────────────────────────────────────────────

// Variates below use explicit arithmetic on raw 64-bit draws instead of
// std::*_distribution, whose output is implementation-defined.

double Rng::uniform() {
  // 53 uniform bits centered in (0, 1); never returns an endpoint.
  const std::uint64_t bits = gen_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double Rng::exponential() { return -std::log(uniform()); }

SimplexPoint random_simplex(std::size_t n, std::uint64_t seed,
                            double concentration) {
  if (n < 2) {
    throw Error(errc::invalid_dimension, "simplex needs dimension >= 2");
  }
  if (!(concentration > 0.0) || !std::isfinite(concentration)) {
    throw Error(errc::invalid_spec, "concentration must be positive");
  }
  Rng rng(seed);
  std::vector<double> raw(n);
  for (double& w : raw) {
    w = std::pow(rng.exponential(), 1.0 / concentration);
  }
  return make_simplex(raw);
}

TangentVec random_tangent(const SimplexPoint& base, Rng& rng) {
  std::vector<double> raw(base.dim());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = std::sqrt(base[i]) * rng.normal();
  }
  return make_tangent(base, raw);
}

}  // namespace fisherflow
