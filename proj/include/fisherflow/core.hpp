#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fisherflow {

// ── Errors ───────────────────────────────────────────────────────────────────

/// Failure categories. Input/validation failures map to CLI exit code 1,
/// failures of numerical procedures to exit code 2.
enum class errc {
  empty_vector,
  invalid_dimension,
  dimension_mismatch,
  non_positive_entry,
  negative_entry,
  invalid_spec,
  unsupported_kind,
  invalid_q,
  identical_endpoints,
  too_few_points,
  index_out_of_range,
  step_too_large,
  degenerate_window,
  numerical_breakdown,
  overflow,
  io_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }
  /// True for failures of a numerical procedure (as opposed to bad inputs).
  bool numerical() const noexcept;

private:
  errc code_;
};

// ── Tolerances ───────────────────────────────────────────────────────────────

/// Numerical tolerances shared across the library. Defaults are sized for
/// double precision with central finite differences.
struct Tolerances {
  double tol_sum = 1e-12;    // simplex / sphere normalization residual
  double tol_metric = 1e-9;  // tangency and isometry residuals
  double tol_ode = 1e-6;     // trajectory accuracy and monotonicity slack
  double fd_step = 1e-5;     // central-difference step

  /// Throws errc::invalid_spec unless every field is strictly positive.
  void validate() const;
};

// ── Points and tangent vectors ───────────────────────────────────────────────

/// Point of the closed truncated simplex: n weights >= 0 summing to 1.
/// Limits of flows and LP maximizers live here; the metric degenerates on
/// the boundary, so geometric operations take the interior type below.
class ClosedSimplexPoint {
public:
  /// Validates without renormalizing; weights must already sum to 1
  /// within tol.tol_sum and be nonnegative.
  static ClosedSimplexPoint from_normalized(std::vector<double> weights,
                                            const Tolerances& tol = {});

  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t dim() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

private:
  friend class SimplexPoint;  // closure() widens without re-validation
  explicit ClosedSimplexPoint(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

/// Interior point of the truncated simplex: n strictly positive weights
/// summing to 1 within tol_sum. Immutable after construction.
class SimplexPoint {
public:
  /// Validates without renormalizing; use make_simplex to normalize raw
  /// positive data. Preserves the given bits exactly when valid.
  static SimplexPoint from_normalized(std::vector<double> weights,
                                      const Tolerances& tol = {});

  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t dim() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  /// Widening conversion; always valid.
  ClosedSimplexPoint closure() const;

private:
  explicit SimplexPoint(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

/// Tangent vector at a SimplexPoint: n components summing to 0 within
/// tol_sum, carried together with its base point.
class TangentVec {
public:
  const std::vector<double>& components() const noexcept { return components_; }
  const SimplexPoint& base() const noexcept { return base_; }
  std::size_t dim() const noexcept { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }

private:
  friend TangentVec make_tangent(const SimplexPoint&, const std::vector<double>&);
  TangentVec(std::vector<double> c, SimplexPoint b)
      : components_(std::move(c)), base_(std::move(b)) {}
  std::vector<double> components_;
  SimplexPoint base_;
};

/// Normalizes raw strictly positive weights to a simplex point.
/// Throws errc::empty_vector, errc::invalid_dimension (n < 2), or
/// errc::non_positive_entry (message names the offending index).
SimplexPoint make_simplex(const std::vector<double>& raw,
                          const Tolerances& tol = {});

/// Closed-simplex variant: entries >= 0 allowed, at least one positive.
ClosedSimplexPoint make_closed_simplex(const std::vector<double>& raw,
                                       const Tolerances& tol = {});

/// The barycenter (1/n, ..., 1/n).
SimplexPoint uniform_simplex(std::size_t n);

/// Projects raw onto the sum-zero hyperplane (subtracts the mean) and
/// attaches the result to base. Idempotent on sum-zero inputs.
TangentVec make_tangent(const SimplexPoint& base, const std::vector<double>& raw);

// ── Cost sequences ───────────────────────────────────────────────────────────

enum class CostKind { explicit_values, geometric, power };

/// Declarative generator for a truncated square-summable cost sequence.
/// geometric(r): c_k = r^k + shift, r in (0,1).
/// power(s):     c_k = (k+1)^-s + shift, s > 0.
/// Both families are strictly decreasing; shift adds a constant (the flow
/// is invariant under it, the tail mass is not defined for shift != 0).
struct CostSpec {
  CostKind kind = CostKind::explicit_values;
  std::size_t n = 0;
  double ratio = 0.0;
  double exponent = 0.0;
  double shift = 0.0;
  std::vector<double> values;  // explicit entries; n is values.size()
};

CostSpec geometric_cost(double ratio, std::size_t n, double shift = 0.0);
CostSpec power_cost(double exponent, std::size_t n, double shift = 0.0);
CostSpec explicit_cost(std::vector<double> values);

/// Deterministic realization of the cost spec as an n-vector.
/// Throws errc::invalid_spec for malformed parameters.
std::vector<double> realize_cost(const CostSpec& spec);

/// Mass of the discarded tail, sum_{k>=n} c_k^2, for the generated families:
/// closed form for geometric, integral estimate (Euler-Maclaurin, three
/// terms) for power. Returns +inf for power with exponent <= 1/2, where the
/// tail diverges. Throws errc::unsupported_kind for explicit or shifted
/// specs, whose tails are not defined by the generator.
double tail_mass(const CostSpec& spec, std::size_t n);

// ── Seeded random generation ─────────────────────────────────────────────────

/// Deterministic random source. Variates are derived from raw mt19937_64
/// output with explicit arithmetic (no std::*_distribution), so streams are
/// reproducible across standard libraries and platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  /// Exponential with unit rate.
  double exponential();

private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Seeded interior point: unit-rate exponentials raised to 1/concentration,
/// then normalized. A pure function of (n, seed, concentration).
/// Throws errc::invalid_dimension for n < 2, errc::invalid_spec for
/// concentration <= 0.
SimplexPoint random_simplex(std::size_t n, std::uint64_t seed,
                            double concentration = 1.0);

/// Random tangent at base with components scaled by sqrt(base weight), so
/// the Fisher-Rao norm stays O(1) regardless of how small weights get.
TangentVec random_tangent(const SimplexPoint& base, Rng& rng);

}  // namespace fisherflow
