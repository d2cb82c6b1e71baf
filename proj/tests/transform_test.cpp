#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "doctest.h"

#include "fisherflow/core.hpp"
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

}  // namespace

TEST_CASE("q_root takes componentwise q-th roots") {
  const SimplexPoint p = make_simplex({0.25, 0.75});

  const SphereQPoint sqrt2 = q_root(p, 2.0);
  CHECK(sqrt2[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sqrt2[1] == doctest::Approx(0.8660254037844386).epsilon(1e-14));

  const SphereQPoint cube = q_root(p, 3.0);
  CHECK(cube[0] == doctest::Approx(0.6299605249474366).epsilon(1e-14));
  CHECK(cube[1] == doctest::Approx(0.9085602964160698).epsilon(1e-14));
  CHECK(cube[0] * cube[0] * cube[0] + cube[1] * cube[1] * cube[1] ==
        doctest::Approx(1.0).epsilon(1e-12));

  const SphereQPoint flat = q_root(uniform_simplex(5), 3.0);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(flat[i] == doctest::Approx(std::pow(5.0, -1.0 / 3.0)).epsilon(1e-14));
  }
}

TEST_CASE("q_root validates the exponent and the input scale") {
  const SimplexPoint p = make_simplex({1.0, 1.0});
  CHECK(code_of([&] { q_root(p, 1.0); }) == errc::invalid_q);
  CHECK(code_of([&] { q_root(p, 0.5); }) == errc::invalid_q);
  CHECK(code_of([&] {
          q_root(p, std::numeric_limits<double>::infinity());
        }) == errc::invalid_q);

  // Weights below 1e-300 would underflow out of the positive orthant.
  const SimplexPoint tiny =
      SimplexPoint::from_normalized({1.0 - 1e-305, 1e-305});
  CHECK(code_of([&] { q_root(tiny, 2.0); }) == errc::invalid_spec);
}

TEST_CASE("q_root_inverse undoes q_root") {
  const SphereQPoint x =
      SphereQPoint::from_normalized({0.5, 0.8660254037844386}, 2.0);
  const SimplexPoint back = q_root_inverse(x);
  CHECK(back[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(back[1] == doctest::Approx(0.75).epsilon(1e-14));

  for (double q : {1.5, 2.0, 3.0, 4.0}) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      const SimplexPoint p = random_simplex(8, seed);
      CHECK(l1_diff(q_root_inverse(q_root(p, q)).weights(), p.weights()) <=
            1e-12);
    }
  }
}

TEST_CASE("pushforward applies the chain-rule differential") {
  const SimplexPoint p = make_simplex({1.0, 1.0});
  const TangentVec v = make_tangent(p, {1.0, -1.0});

  const SphereTangent w = pushforward(p, v, 2.0);
  CHECK(w[0] == doctest::Approx(0.7071067811865475).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(-0.7071067811865475).epsilon(1e-14));

  const SphereTangent zero = pushforward(p, make_tangent(p, {0.0, 0.0}), 3.0);
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);
}

TEST_CASE("pushforward lands tangent to the sphere") {
  Rng rng(17);
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const SimplexPoint p = random_simplex(6, 100 + seed);
    const TangentVec v = random_tangent(p, rng);
    for (double q : {1.5, 2.0, 3.0}) {
      const SphereQPoint x = q_root(p, q);
      const SphereTangent w = pushforward(p, v, q);
      double pairing = 0.0;
      for (std::size_t i = 0; i < p.dim(); ++i) {
        pairing += std::pow(x[i], q - 1.0) * w[i];
      }
      CHECK(std::abs(pairing) <= 1e-12);
    }
  }
}

TEST_CASE("pushforward matches a finite difference of the transform") {
  const SimplexPoint p = make_simplex({0.4, 0.3, 0.2, 0.1});
  const TangentVec v = make_tangent(p, {0.05, -0.02, -0.02, -0.01});
  const double h = 1e-5;
  for (double q : {1.5, 2.0, 3.0, 4.0}) {
    const SphereTangent w = pushforward(p, v, q);
    std::vector<double> plus(p.dim()), minus(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
      plus[i] = p[i] + h * v[i];
      minus[i] = p[i] - h * v[i];
    }
    const SphereQPoint xp = q_root(make_simplex(plus), q);
    const SphereQPoint xm = q_root(make_simplex(minus), q);
    for (std::size_t i = 0; i < p.dim(); ++i) {
      CHECK(std::abs((xp[i] - xm[i]) / (2.0 * h) - w[i]) <= 1e-6);
    }
  }
}

TEST_CASE("pullback inverts pushforward and lands sum-zero") {
  const SphereQPoint x = SphereQPoint::from_normalized(
      {0.7071067811865476, 0.7071067811865476}, 2.0);
  const SphereTangent w =
      make_sphere_tangent(x, {0.7071067811865475, -0.7071067811865475});
  const TangentVec v = pullback(x, w);
  CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(-1.0).epsilon(1e-12));

  const SphereTangent zero = make_sphere_tangent(x, {0.0, 0.0});
  const TangentVec vz = pullback(x, zero);
  CHECK(vz[0] == 0.0);
  CHECK(vz[1] == 0.0);

  Rng rng(23);
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const SimplexPoint p = random_simplex(8, 200 + seed);
    const TangentVec t = random_tangent(p, rng);
    for (double q : {1.5, 2.0, 3.0, 4.0}) {
      const TangentVec back = pullback(q_root(p, q), pushforward(p, t, q));
      double sum = 0.0;
      for (std::size_t i = 0; i < back.dim(); ++i) sum += back[i];
      CHECK(std::abs(sum) <= 1e-12);
      CHECK(l1_diff(back.components(), t.components()) <= 1e-10);
    }
  }
}

TEST_CASE("sphere types enforce their invariants") {
  CHECK(code_of([] {
          SphereQPoint::from_normalized({0.9, 0.9}, 2.0);
        }) == errc::invalid_spec);
  CHECK(code_of([] {
          SphereQPoint::from_normalized({1.0, 0.0}, 2.0);
        }) == errc::non_positive_entry);

  const SphereQPoint x =
      SphereQPoint::from_normalized({0.6, 0.8}, 2.0);
  // (0.1, 0.1) pairs to 0.14 against x, far off the tangent space.
  CHECK(code_of([&] { make_sphere_tangent(x, {0.1, 0.1}); }) ==
        errc::invalid_spec);
  CHECK(code_of([&] { make_sphere_tangent(x, {0.1}); }) ==
        errc::dimension_mismatch);
}
