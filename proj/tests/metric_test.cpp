#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "doctest.h"

#include "fisherflow/core.hpp"
#include "fisherflow/metric.hpp"
#include "fisherflow/transform.hpp"

using namespace fisherflow;

namespace {

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return errc::io_error;
}

double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

// Simpson quadrature of f over [a, b] with n (even) intervals.
double simpson(const std::function<double(double)>& f, double a, double b,
               int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("fisher_rao_inner matches the weighted formula") {
  const SimplexPoint p = make_simplex({1.0, 1.0});
  const TangentVec v = make_tangent(p, {1.0, -1.0});
  CHECK(fisher_rao_inner(p, v, v) == 1.0);

  const TangentVec zero = make_tangent(p, {0.0, 0.0});
  CHECK(fisher_rao_inner(p, v, zero) == 0.0);
  CHECK(fisher_rao_norm(p, v) == 1.0);

  const SimplexPoint q3 = make_simplex({2.0, 1.0, 1.0});
  CHECK(code_of([&] { fisher_rao_inner(q3, v, v); }) ==
        errc::dimension_mismatch);
}

TEST_CASE("fisher_rao_inner is symmetric and bilinear") {
  Rng rng(31);
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const SimplexPoint p = random_simplex(7, 400 + seed);
    const TangentVec v = random_tangent(p, rng);
    const TangentVec w = random_tangent(p, rng);
    CHECK(fisher_rao_inner(p, v, w) == fisher_rao_inner(p, w, v));

    std::vector<double> sum_raw(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) sum_raw[i] = v[i] + 2.0 * w[i];
    const TangentVec combo = make_tangent(p, sum_raw);
    const double lhs = fisher_rao_inner(p, combo, w);
    const double rhs =
        fisher_rao_inner(p, v, w) + 2.0 * fisher_rao_inner(p, w, w);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(fisher_rao_inner(p, v, v) > 0.0);
  }
}

TEST_CASE("the square-root transform is an isometry") {
  Rng rng(37);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SimplexPoint p = random_simplex(6, 500 + seed);
    const TangentVec v = random_tangent(p, rng);
    const TangentVec w = random_tangent(p, rng);
    const SphereTangent dv = pushforward(p, v, 2.0);
    const SphereTangent dw = pushforward(p, w, 2.0);
    double sphere_inner = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) sphere_inner += dv[i] * dw[i];
    CHECK(std::abs(fisher_rao_inner(p, v, w) - sphere_inner) <= 1e-10);
  }
}

TEST_CASE("finsler_norm_q matches its formula and calibration") {
  const SimplexPoint p = make_simplex({1.0, 1.0});
  const TangentVec v = make_tangent(p, {0.5, -0.5});
  CHECK(finsler_norm_q(p, v, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(finsler_norm_q(p, make_tangent(p, {0.0, 0.0}), 3.0) == 0.0);
  CHECK(code_of([&] { finsler_norm_q(p, v, 1.0); }) == errc::invalid_q);

  Rng rng(41);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SimplexPoint r = random_simplex(5, 600 + seed);
    const TangentVec t = random_tangent(r, rng);
    // q=2 reduces to twice the Riemannian norm.
    CHECK(std::abs(finsler_norm_q(r, t, 2.0) - 2.0 * fisher_rao_norm(r, t)) <=
          1e-12);
    // The q-root differential contracts lengths by exactly 1/q.
    for (double q : {1.5, 2.0, 3.0}) {
      const SphereTangent w = pushforward(r, t, q);
      CHECK(std::abs(sphere_norm_q(w) - finsler_norm_q(r, t, q) / q) <= 1e-10);
    }
  }
}

TEST_CASE("finsler_norm_q is absolutely homogeneous") {
  Rng rng(43);
  const SimplexPoint p = random_simplex(6, 700);
  const TangentVec v = random_tangent(p, rng);
  for (double q : {1.5, 2.0, 3.0}) {
    const double base = finsler_norm_q(p, v, q);
    for (double lambda : {-3.0, -0.5, 0.0, 0.25, 2.0}) {
      std::vector<double> scaled(v.dim());
      for (std::size_t i = 0; i < v.dim(); ++i) scaled[i] = lambda * v[i];
      CHECK(finsler_norm_q(p, make_tangent(p, scaled), q) ==
            doctest::Approx(std::abs(lambda) * base).epsilon(1e-13));
    }
  }
}

TEST_CASE("fr_distance agrees with an independent quadrature oracle") {
  const SimplexPoint p = make_simplex({0.5, 0.5});
  const SimplexPoint r = make_simplex({0.9, 0.1});
  const double d = fr_distance(p, r);
  CHECK(d == doctest::Approx(0.4636476090008061).epsilon(1e-13));

  // Independent oracle: arclength of the segment a -> (a, 1-a) in the
  // metric, integrand sqrt(g) = 1/(2 sqrt(a(1-a))).
  const double arc = simpson(
      [](double a) { return 0.5 / std::sqrt(a * (1.0 - a)); }, 0.5, 0.9,
      10000);
  CHECK(d == doctest::Approx(arc).epsilon(1e-9));
}

TEST_CASE("fr_distance satisfies the metric axioms") {
  CHECK(fr_distance(make_simplex({1.0, 2.0}), make_simplex({1.0, 2.0})) ==
        0.0);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SimplexPoint p = random_simplex(5, 800 + seed);
    const SimplexPoint r = random_simplex(5, 1800 + seed);
    const SimplexPoint s = random_simplex(5, 2800 + seed);
    const double d_pr = fr_distance(p, r);
    CHECK(d_pr == fr_distance(r, p));
    CHECK(d_pr >= 0.0);
    CHECK(d_pr <= 2.0 * std::atan(1.0) + 1e-15);
    CHECK(d_pr <= fr_distance(p, s) + fr_distance(s, r) + 1e-12);
  }

  // Mass concentrated on opposite corners approaches the right angle.
  const double eps = 1e-12;
  const SimplexPoint near0 = make_simplex({1.0 - eps, eps});
  const SimplexPoint near1 = make_simplex({eps, 1.0 - eps});
  CHECK(std::abs(fr_distance(near0, near1) - 2.0 * std::atan(1.0)) <= 1e-5);

  CHECK(code_of([] {
          fr_distance(make_simplex({1.0, 1.0}), make_simplex({1.0, 1.0, 1.0}));
        }) == errc::dimension_mismatch);
}

TEST_CASE("geodesics hit their endpoints and stay interior") {
  const SimplexPoint p = make_simplex({0.9, 0.1});
  const SimplexPoint r = make_simplex({0.1, 0.9});
  const GeodesicSegment seg = geodesic(p, r);

  const SimplexPoint mid = seg.sample(0.5);
  CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mid[1] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(l1_diff(seg.sample(0.0).weights(), p.weights()) <= 1e-10);
  CHECK(l1_diff(seg.sample(1.0).weights(), r.weights()) <= 1e-10);
  CHECK(seg.length() == fr_distance(p, r));

  for (const SimplexPoint& x : seg.sample_uniform(33)) {
    for (std::size_t i = 0; i < x.dim(); ++i) CHECK(x[i] > 0.0);
  }

  CHECK(code_of([&] { geodesic(p, p); }) == errc::identical_endpoints);
}

TEST_CASE("discrete geodesic length converges to the angle") {
  const SimplexPoint p = make_simplex({0.6, 0.3, 0.1});
  const SimplexPoint r = make_simplex({0.2, 0.5, 0.3});
  const GeodesicSegment seg = geodesic(p, r);
  CHECK(std::abs(path_length(seg.sample_uniform(10001)) - seg.angle()) <=
        1e-6);
}

TEST_CASE("geodesic velocity differentiates the sampler at unit speed") {
  const SimplexPoint p = make_simplex({0.5, 0.3, 0.2});
  const SimplexPoint r = make_simplex({0.1, 0.2, 0.7});
  const GeodesicSegment seg = geodesic(p, r);
  const double h = 1e-5;
  for (double t : {0.1, 0.5, 0.9}) {
    const TangentVec v = seg.velocity(t);
    const SimplexPoint plus = seg.sample(t + h);
    const SimplexPoint minus = seg.sample(t - h);
    for (std::size_t i = 0; i < v.dim(); ++i) {
      CHECK(std::abs((plus[i] - minus[i]) / (2.0 * h) - v[i]) <= 1e-6);
    }
    // Constant-speed parameterization: |p'(t)| equals the total length.
    CHECK(std::abs(fisher_rao_norm(seg.sample(t), v) - seg.angle()) <= 1e-12);
  }
}

TEST_CASE("boundary geodesics pass through the closed simplex") {
  const ClosedSimplexPoint e0 =
      ClosedSimplexPoint::from_normalized({1.0, 0.0, 0.0});
  const ClosedSimplexPoint e1 =
      ClosedSimplexPoint::from_normalized({0.0, 1.0, 0.0});
  const ClosedSimplexPoint mid = closed_geodesic_point(e0, e1, 0.5);
  CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mid[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mid[2] == 0.0);
  CHECK(code_of([&] { closed_geodesic_point(e0, e1, 1.5); }) ==
        errc::invalid_spec);
}

TEST_CASE("path_energy is minimized by the geodesic") {
  const SimplexPoint p = make_simplex({0.6, 0.3, 0.1});
  const SimplexPoint r = make_simplex({0.2, 0.5, 0.3});
  const GeodesicSegment seg = geodesic(p, r);
  const double theta = seg.angle();

  const std::size_t nodes = 1001;
  const double dt = 1.0 / static_cast<double>(nodes - 1);
  const std::vector<SimplexPoint> path = seg.sample_uniform(nodes);
  const double base_energy = path_energy(path, dt);
  CHECK(base_energy == doctest::Approx(theta * theta).epsilon(1e-4));

  // Fixed-endpoint perturbations strictly increase the energy.
  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> pattern(3);
    pattern[0] = rng.normal();
    pattern[1] = rng.normal();
    pattern[2] = -(pattern[0] + pattern[1]);
    std::vector<SimplexPoint> bent;
    bent.reserve(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      const double t = static_cast<double>(i) * dt;
      const double bump = 0.02 * std::sin(3.14159265358979323846 * t);
      std::vector<double> w = path[i].weights();
      for (std::size_t k = 0; k < w.size(); ++k) w[k] += bump * pattern[k];
      bent.push_back(make_simplex(w));
    }
    CHECK(path_energy(bent, dt) > base_energy);
  }

  // A constant path stores no energy.
  CHECK(path_energy({p, p, p}, 0.5) == 0.0);
  CHECK(code_of([&] { path_energy({p}, 0.1); }) == errc::too_few_points);
  CHECK(code_of([&] { path_energy({p, r}, 0.0); }) == errc::invalid_spec);
}

TEST_CASE("path energy dominates the squared distance over time") {
  // Cauchy-Schwarz: E >= d^2 / T for any discrete path.
  const SimplexPoint p = make_simplex({0.4, 0.6});
  const SimplexPoint r = make_simplex({0.7, 0.3});
  std::vector<SimplexPoint> path;
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    path.push_back(make_simplex({0.4 + 0.3 * t, 0.6 - 0.3 * t}));
  }
  const double d = fr_distance(p, r);
  CHECK(path_energy(path, 0.01) >= d * d - 1e-9);
}
