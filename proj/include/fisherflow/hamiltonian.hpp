#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "fisherflow/core.hpp"
#include "fisherflow/flow.hpp"

namespace fisherflow {

// ── Phase-space types ────────────────────────────────────────────────────────

/// Unit vector of the complex l^2 sphere: N amplitudes with
/// sum |z_n|^2 = 1 within tol_sum.
class ComplexState {
public:
  static ComplexState from_normalized(std::vector<std::complex<double>> amps,
                                      const Tolerances& tol = {});

  const std::vector<std::complex<double>>& amplitudes() const noexcept {
    return amplitudes_;
  }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  const std::complex<double>& operator[](std::size_t i) const {
    return amplitudes_[i];
  }

private:
  explicit ComplexState(std::vector<std::complex<double>> a)
      : amplitudes_(std::move(a)) {}
  std::vector<std::complex<double>> amplitudes_;
};

/// Normalizes raw amplitudes to the unit sphere. Throws errc::empty_vector
/// or errc::invalid_spec for the zero vector.
ComplexState make_complex_state(const std::vector<std::complex<double>>& raw,
                                const Tolerances& tol = {});

/// Phase-equivalence class of unit states (point of truncated complex
/// projective space), stored through its canonical-gauge representative:
/// the coordinate of largest modulus is real and non-negative, ties broken
/// by lowest index. States differing by a global phase share one
/// representative up to roundoff.
class ProjPoint {
public:
  const ComplexState& representative() const noexcept { return rep_; }
  std::size_t dim() const noexcept { return rep_.dim(); }

private:
  friend ProjPoint project(const ComplexState&, const Tolerances&);
  explicit ProjPoint(ComplexState r) : rep_(std::move(r)) {}
  ComplexState rep_;
};

/// Canonical-gauge projection of a unit state.
ProjPoint project(const ComplexState& s, const Tolerances& tol = {});

/// Value of an i-valued momentum map, stored as the real coefficient
/// vector of i (unit() names the suppressed factor). The circle momentum
/// is the single coefficient <z, z>; the torus momentum stores |z_n|^2 / 2
/// per coordinate, so twice the coefficients of a unit state form a closed
/// simplex point.
struct MomentumValue {
  std::vector<double> coefficients;
  static constexpr const char* unit() noexcept { return "i"; }
};

// ── Hamiltonians and flow ────────────────────────────────────────────────────

/// H_c(z) = sum c_n |z_n|^2. Gauge-invariant.
double hamiltonian_value(const ComplexState& s, const std::vector<double>& cost);

/// The n-th commuting quantity H_n(z) = c_n |z_n|^2. Summing over n gives
/// hamiltonian_value. Throws errc::index_out_of_range.
double conserved_quantity(const ComplexState& s,
                          const std::vector<double>& cost, std::size_t n);

/// Phase-rotation speed of the Hamiltonian flow of H_c per unit cost:
/// z_n(t) = exp(i kPhaseRate c_n t) z_n(0). The value -2 is forced by the
/// convention omega_can = (i/2) sum dz_n ^ dzbar_n together with
/// omega(X_H, .) = dH, equivalently zdot = -2i dH/dzbar; tests re-derive it
/// from both characterizations.
inline constexpr double kPhaseRate = -2.0;

/// Exact flow of H_c: componentwise phase rotation by kPhaseRate c_n t.
/// Norm and every |z_n| are preserved to roundoff for any t.
ComplexState hamiltonian_flow(const ComplexState& s0,
                              const std::vector<double>& cost, double t,
                              const Tolerances& tol = {});

// ── Poisson brackets ─────────────────────────────────────────────────────────

/// Real-valued observable on raw amplitude vectors. Fields are evaluated
/// off the unit sphere during differentiation, so they must be defined on
/// a neighborhood (polynomials in Re z, Im z always are).
using ScalarField =
    std::function<double(const std::vector<std::complex<double>>&)>;

/// Canonical bracket {f, g} = 2i sum_j (df/dzbar_j dg/dz_j
/// - df/dz_j dg/dzbar_j), evaluated by central-difference Wirtinger
/// derivatives (d/dz = (d/dx - i d/dy)/2) at steps fd_step and fd_step/2.
/// Returns the Richardson combination of the two; throws
/// errc::numerical_breakdown when they disagree by more than one part in
/// a thousand, which flags fields too rough for the step.
double poisson_bracket(const ScalarField& f, const ScalarField& g,
                       const ComplexState& s, const Tolerances& tol = {});

/// f(z) = sum c_n |z_n|^2 as a ScalarField (the bracket probe for H_c).
ScalarField hamiltonian_field(std::vector<double> cost);

/// f(z) = c_n |z_n|^2 as a ScalarField (the bracket probe for H_n).
ScalarField mode_field(const std::vector<double>& cost, std::size_t n);

/// f(z) = Re(z_j conj(z_k)), a deliberately non-commuting probe:
/// {|z_j|^2, Re(z_j zbar_k)} = -2 Im(z_j zbar_k), nonzero at generic
/// states. Used as the negative control for bracket diagnostics.
ScalarField cross_term_field(std::size_t j, std::size_t k);

// ── Momentum maps ────────────────────────────────────────────────────────────

/// Circle momentum i<z, z>: the stored coefficient is sum |z_n|^2
/// (1 on unit states). The raw-vector overload supports unnormalized
/// inputs, including zero.
MomentumValue momentum_s1(const std::vector<std::complex<double>>& raw);
MomentumValue momentum_s1(const ComplexState& s);

/// Torus momentum (i/2)(|z_n|^2): coefficients |z_n|^2 / 2 of the
/// canonical representative. Gauge-invariant by construction.
MomentumValue momentum_torus(const ProjPoint& p);

/// (|z_n|^2 / 2) of a raw unit state; momentum_torus(project(s)) computes
/// exactly this, which is the commuting square of the reduction diagram.
MomentumValue half_moduli(const ComplexState& s);

/// Real-positive embedding of the simplex: amplitudes (sqrt(p_n), 0i).
/// Twice the torus-momentum coefficients of the image recover p, and
/// hamiltonian_value on the image equals objective(p, cost).
ComplexState embed_simplex(const SimplexPoint& p, const Tolerances& tol = {});

// ── Integrability diagnostics ────────────────────────────────────────────────

/// Worst-case residuals of the integrability structure over seeded random
/// unit states: pairwise brackets {H_k, H_m} (k < m), brackets {H_n, H_c},
/// drift of every H_n along the flow over t in [0, 100], and the
/// negative-control bracket {H_0, Re(z_0 zbar_1)} which must stay far from
/// zero at generic states.
struct IntegrabilityReport {
  double max_pairwise_bracket = 0.0;
  double max_bracket_with_hc = 0.0;
  double max_conservation_drift = 0.0;
  double negative_control_bracket = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Runs the diagnostics on `samples` random states of dimension
/// cost.size(). Deterministic in (cost, samples, seed).
IntegrabilityReport integrability_report(const std::vector<double>& cost,
                                         std::size_t samples,
                                         std::uint64_t seed,
                                         const Tolerances& tol = {});

/// Unit state with independent complex-normal amplitudes, normalized.
ComplexState random_complex_state(std::size_t n, Rng& rng);

// ── Sphere-side LP solver ────────────────────────────────────────────────────

/// Integrates xdot = sphere_gradient(x, cost) from x = sqrt(p0) with RK4
/// (fixed step, per-step renormalization to the unit sphere, positivity
/// guard as in flow_ode) and returns the squared limit as an LpSolution.
/// The simplex image of this flow at time t equals the canonical flow at
/// time 4t, so horizons here are a quarter of solve_lp's.
LpSolution sphere_gradient_flow_to_lp(const SimplexPoint& p0,
                                      const std::vector<double>& cost,
                                      double t_end, double step,
                                      double gap_tol = 1e-8,
                                      const Tolerances& tol = {});

}  // namespace fisherflow
