#include "fisherflow/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace fisherflow {

namespace {

using Amplitudes = std::vector<std::complex<double>>;

void check_cost_dim(const std::vector<double>& cost, std::size_t dim,
                    const char* what) {
  if (cost.size() != dim) {
    throw Error(errc::dimension_mismatch,
                std::string(what) + ": cost has length " +
                    std::to_string(cost.size()) + ", state has dimension " +
                    std::to_string(dim));
  }
}

double norm_squared(const Amplitudes& amps) {
  double sum = 0.0;
  for (const auto& z : amps) sum += std::norm(z);
  return sum;
}

void require_finite(const Amplitudes& amps) {
  for (const auto& z : amps) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(errc::invalid_spec, "amplitudes must be finite");
    }
  }
}

}  // namespace

// ── Phase-space types ────────────────────────────────────────────────────────

ComplexState ComplexState::from_normalized(Amplitudes amps,
                                           const Tolerances& tol) {
  tol.validate();
  if (amps.empty()) {
    throw Error(errc::empty_vector, "amplitudes is empty");
  }
  if (amps.size() < 2) {
    throw Error(errc::invalid_dimension,
                "amplitudes needs at least 2 entries");
  }
  require_finite(amps);
  const double n2 = norm_squared(amps);
  if (std::abs(n2 - 1.0) > tol.tol_sum) {
    throw Error(errc::invalid_spec,
                "sum of |z|^2 differs from 1 by " +
                    std::to_string(std::abs(n2 - 1.0)));
  }
  return ComplexState(std::move(amps));
}

ComplexState make_complex_state(const Amplitudes& raw, const Tolerances& tol) {
  if (raw.empty()) {
    throw Error(errc::empty_vector, "amplitudes is empty");
  }
  require_finite(raw);
  const double n2 = norm_squared(raw);
  if (!(n2 > 0.0)) {
    throw Error(errc::invalid_spec, "zero state cannot be normalized");
  }
  const double inv = 1.0 / std::sqrt(n2);
  Amplitudes amps(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) amps[i] = raw[i] * inv;
  return ComplexState::from_normalized(std::move(amps), tol);
}

ProjPoint project(const ComplexState& s, const Tolerances& tol) {
  const Amplitudes& z = s.amplitudes();
  // Pivot on the largest modulus, lowest index on ties; rotating its phase
  // away is stable under perturbation of everything else.
  std::size_t pivot = 0;
  double best = std::norm(z[0]);
  for (std::size_t i = 1; i < z.size(); ++i) {
    const double m = std::norm(z[i]);
    if (m > best) {
      best = m;
      pivot = i;
    }
  }
  const double modulus = std::abs(z[pivot]);
  const std::complex<double> phase = std::conj(z[pivot]) / modulus;
  Amplitudes rotated(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) rotated[i] = z[i] * phase;
  rotated[pivot] = modulus;  // exactly real and nonnegative
  return ProjPoint(ComplexState::from_normalized(std::move(rotated), tol));
}

// ── Hamiltonians and flow ────────────────────────────────────────────────────

double hamiltonian_value(const ComplexState& s,
                         const std::vector<double>& cost) {
  check_cost_dim(cost, s.dim(), "Hamiltonian");
  double sum = 0.0;
  for (std::size_t i = 0; i < cost.size(); ++i) {
    sum += cost[i] * std::norm(s[i]);
  }
  return sum;
}

double conserved_quantity(const ComplexState& s,
                          const std::vector<double>& cost, std::size_t n) {
  check_cost_dim(cost, s.dim(), "conserved quantity");
  if (n >= s.dim()) {
    throw Error(errc::index_out_of_range,
                "index " + std::to_string(n) + " not below " +
                    std::to_string(s.dim()));
  }
  return cost[n] * std::norm(s[n]);
}

ComplexState hamiltonian_flow(const ComplexState& s0,
                              const std::vector<double>& cost, double t,
                              const Tolerances& tol) {
  check_cost_dim(cost, s0.dim(), "Hamiltonian flow");
  if (!std::isfinite(t)) {
    throw Error(errc::invalid_spec, "flow time must be finite");
  }
  Amplitudes amps(s0.dim());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double theta = kPhaseRate * cost[i] * t;
    amps[i] = s0[i] * std::complex<double>(std::cos(theta), std::sin(theta));
  }
  return ComplexState::from_normalized(std::move(amps), tol);
}

// ── Poisson brackets ─────────────────────────────────────────────────────────

namespace {

// Wirtinger gradient (df/dz_j)_j of a real field by central differences in
// the underlying real coordinates: df/dz = (df/dx - i df/dy) / 2.
std::vector<std::complex<double>> wirtinger_gradient(const ScalarField& f,
                                                     const Amplitudes& base,
                                                     double h) {
  std::vector<std::complex<double>> grad(base.size());
  Amplitudes probe = base;
  for (std::size_t j = 0; j < base.size(); ++j) {
    const std::complex<double> z = base[j];
    probe[j] = z + std::complex<double>(h, 0.0);
    const double fx_plus = f(probe);
    probe[j] = z - std::complex<double>(h, 0.0);
    const double fx_minus = f(probe);
    probe[j] = z + std::complex<double>(0.0, h);
    const double fy_plus = f(probe);
    probe[j] = z - std::complex<double>(0.0, h);
    const double fy_minus = f(probe);
    probe[j] = z;
    const double dfdx = (fx_plus - fx_minus) / (2.0 * h);
    const double dfdy = (fy_plus - fy_minus) / (2.0 * h);
    grad[j] = std::complex<double>(0.5 * dfdx, -0.5 * dfdy);
  }
  return grad;
}

// {f, g} = 2i sum_j (df/dzbar_j dg/dz_j - df/dz_j dg/dzbar_j) at one step.
// For real fields df/dzbar = conj(df/dz), and the combination reduces to
// -4 sum_j Im(conj(df/dz_j) dg/dz_j), which is exactly real.
double bracket_at_step(const ScalarField& f, const ScalarField& g,
                       const Amplitudes& base, double h) {
  const auto df = wirtinger_gradient(f, base, h);
  const auto dg = wirtinger_gradient(g, base, h);
  double sum = 0.0;
  for (std::size_t j = 0; j < base.size(); ++j) {
    sum += std::imag(std::conj(df[j]) * dg[j]);
  }
  return -4.0 * sum;
}

}  // namespace

double poisson_bracket(const ScalarField& f, const ScalarField& g,
                       const ComplexState& s, const Tolerances& tol) {
  tol.validate();
  const double coarse = bracket_at_step(f, g, s.amplitudes(), tol.fd_step);
  const double fine = bracket_at_step(f, g, s.amplitudes(), 0.5 * tol.fd_step);
  if (std::abs(coarse - fine) > 1e-3 * std::max(1.0, std::abs(fine))) {
    throw Error(errc::numerical_breakdown,
                "bracket estimates disagree across step refinement: " +
                    std::to_string(coarse) + " vs " + std::to_string(fine));
  }
  // Richardson combination cancels the O(h^2) central-difference term.
  return (4.0 * fine - coarse) / 3.0;
}

ScalarField hamiltonian_field(std::vector<double> cost) {
  return [cost = std::move(cost)](const Amplitudes& z) {
    check_cost_dim(cost, z.size(), "Hamiltonian field");
    double sum = 0.0;
    for (std::size_t i = 0; i < cost.size(); ++i) {
      sum += cost[i] * std::norm(z[i]);
    }
    return sum;
  };
}

ScalarField mode_field(const std::vector<double>& cost, std::size_t n) {
  if (n >= cost.size()) {
    throw Error(errc::index_out_of_range,
                "index " + std::to_string(n) + " not below " +
                    std::to_string(cost.size()));
  }
  const double c_n = cost[n];
  return [c_n, n](const Amplitudes& z) {
    if (n >= z.size()) {
      throw Error(errc::index_out_of_range, "mode index exceeds state");
    }
    return c_n * std::norm(z[n]);
  };
}

ScalarField cross_term_field(std::size_t j, std::size_t k) {
  return [j, k](const Amplitudes& z) {
    if (j >= z.size() || k >= z.size()) {
      throw Error(errc::index_out_of_range, "cross-term index exceeds state");
    }
    return std::real(z[j] * std::conj(z[k]));
  };
}

// ── Momentum maps ────────────────────────────────────────────────────────────

MomentumValue momentum_s1(const Amplitudes& raw) {
  require_finite(raw);
  return MomentumValue{{norm_squared(raw)}};
}

MomentumValue momentum_s1(const ComplexState& s) {
  return momentum_s1(s.amplitudes());
}

MomentumValue half_moduli(const ComplexState& s) {
  MomentumValue value;
  value.coefficients.resize(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    value.coefficients[i] = 0.5 * std::norm(s[i]);
  }
  return value;
}

MomentumValue momentum_torus(const ProjPoint& p) {
  return half_moduli(p.representative());
}

ComplexState embed_simplex(const SimplexPoint& p, const Tolerances& tol) {
  Amplitudes amps(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    amps[i] = std::complex<double>(std::sqrt(p[i]), 0.0);
  }
  return ComplexState::from_normalized(std::move(amps), tol);
}

// ── Integrability diagnostics ────────────────────────────────────────────────

ComplexState random_complex_state(std::size_t n, Rng& rng) {
  if (n < 2) {
    throw Error(errc::invalid_dimension, "state needs dimension >= 2");
  }
  Amplitudes raw(n);
  for (auto& z : raw) {
    z = std::complex<double>(rng.normal(), rng.normal());
  }
  return make_complex_state(raw);
}

IntegrabilityReport integrability_report(const std::vector<double>& cost,
                                         std::size_t samples,
                                         std::uint64_t seed,
                                         const Tolerances& tol) {
  if (samples < 1) {
    throw Error(errc::invalid_spec, "need at least one sample");
  }
  const std::size_t n = cost.size();
  if (n < 2) {
    throw Error(errc::invalid_dimension, "cost needs at least 2 entries");
  }
  std::vector<ScalarField> modes;
  modes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) modes.push_back(mode_field(cost, i));
  const ScalarField h_c = hamiltonian_field(cost);
  // Cost-independent non-commuting pair: {|z_0|^2, Re(z_0 zbar_1)}
  // = -2 Im(z_0 zbar_1), generically far from zero.
  const ScalarField modulus0 = [](const Amplitudes& z) {
    return std::norm(z[0]);
  };
  const ScalarField control = cross_term_field(0, 1);
  const double drift_times[] = {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};

  IntegrabilityReport report;
  report.samples = samples;
  report.seed = seed;
  Rng rng(seed);
  for (std::size_t sample = 0; sample < samples; ++sample) {
    const ComplexState s = random_complex_state(n, rng);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t m = k + 1; m < n; ++m) {
        report.max_pairwise_bracket =
            std::max(report.max_pairwise_bracket,
                     std::abs(poisson_bracket(modes[k], modes[m], s, tol)));
      }
      report.max_bracket_with_hc =
          std::max(report.max_bracket_with_hc,
                   std::abs(poisson_bracket(modes[k], h_c, s, tol)));
    }
    report.negative_control_bracket =
        std::max(report.negative_control_bracket,
                 std::abs(poisson_bracket(modulus0, control, s, tol)));
    std::vector<double> reference(n + 1);
    for (std::size_t k = 0; k < n; ++k) {
      reference[k] = conserved_quantity(s, cost, k);
    }
    reference[n] = hamiltonian_value(s, cost);
    for (double t : drift_times) {
      const ComplexState evolved = hamiltonian_flow(s, cost, t, tol);
      for (std::size_t k = 0; k < n; ++k) {
        report.max_conservation_drift =
            std::max(report.max_conservation_drift,
                     std::abs(conserved_quantity(evolved, cost, k) -
                              reference[k]));
      }
      report.max_conservation_drift =
          std::max(report.max_conservation_drift,
                   std::abs(hamiltonian_value(evolved, cost) - reference[n]));
    }
  }
  return report;
}

// ── Sphere-side LP solver ────────────────────────────────────────────────────

namespace {

// P_x(2 Diag(x) c) on raw coordinates.
void sphere_field(const std::vector<double>& cost,
                  const std::vector<double>& x, std::vector<double>& out) {
  double radial = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    radial += 2.0 * cost[i] * x[i] * x[i];
  }
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = 2.0 * cost[i] * x[i] - radial * x[i];
  }
}

void sphere_rk4_step(const std::vector<double>& cost, std::vector<double>& x,
                     double h) {
  const std::size_t n = x.size();
  std::vector<double> k1, k2, k3, k4, stage(n);
  sphere_field(cost, x, k1);
  for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + 0.5 * h * k1[i];
  sphere_field(cost, stage, k2);
  for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + 0.5 * h * k2[i];
  sphere_field(cost, stage, k3);
  for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + h * k3[i];
  sphere_field(cost, stage, k4);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

void sphere_advance_guarded(const std::vector<double>& cost,
                            std::vector<double>& x, double h, int depth) {
  std::vector<double> trial = x;
  sphere_rk4_step(cost, trial, h);
  bool ok = true;
  double n2 = 0.0;
  for (double v : trial) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      ok = false;
      break;
    }
    n2 += v * v;
  }
  if (ok) {
    const double inv = 1.0 / std::sqrt(n2);
    for (double& v : trial) v *= inv;
    x = std::move(trial);
    return;
  }
  if (depth >= 40) {
    throw Error(errc::step_too_large,
                "positivity lost after 40 step halvings");
  }
  sphere_advance_guarded(cost, x, 0.5 * h, depth + 1);
  sphere_advance_guarded(cost, x, 0.5 * h, depth + 1);
}

}  // namespace

LpSolution sphere_gradient_flow_to_lp(const SimplexPoint& p0,
                                      const std::vector<double>& cost,
                                      double t_end, double step,
                                      double gap_tol, const Tolerances& tol) {
  check_cost_dim(cost, p0.dim(), "sphere gradient flow");
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(errc::invalid_spec, "step must be a positive real");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(errc::invalid_spec, "t_end must be a nonnegative real");
  }
  if (!(gap_tol > 0.0) || !std::isfinite(gap_tol)) {
    throw Error(errc::invalid_spec, "gap_tol must be a positive real");
  }
  std::vector<double> x(p0.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sqrt(p0[i]);
  double t = 0.0;
  while (t < t_end - 1e-15 * std::max(1.0, t_end)) {
    const double h = std::min(step, t_end - t);
    sphere_advance_guarded(cost, x, h, 0);
    t += h;
  }
  std::vector<double> weights(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) weights[i] = x[i] * x[i];
  const SimplexPoint limit = SimplexPoint::from_normalized(weights, tol);

  const double c_max = *std::max_element(cost.begin(), cost.end());
  LpSolution sol{limit.closure(), 0.0, 0.0, t_end, false,
                 std::count(cost.begin(), cost.end(), c_max) == 1};
  sol.value = objective(sol.maximizer, cost);
  sol.certificate_gap = optimality_gap(sol.maximizer, cost);
  sol.converged = sol.certificate_gap <= gap_tol;
  return sol;
}

}  // namespace fisherflow
