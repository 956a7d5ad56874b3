#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uc/fixpoint.hpp"
#include "uc/genfunc.hpp"
#include "uc/measure.hpp"
#include "uc/recomb.hpp"
#include "uc/testgen.hpp"

using namespace uc;

TEST_CASE("coefficients of point masses") {
  const CoeffVector a0 = coeffs_from_distribution(Distribution::point_mass(0), 8);
  CHECK(a0.at(0) == 1.0);
  for (std::size_t k = 1; k <= 8; ++k) CHECK(a0.at(k) == 0.0);

  const CoeffVector a1 = coeffs_from_distribution(Distribution::point_mass(1), 8);
  CHECK(a1.at(0) == 1.0);
  CHECK(a1.at(1) == doctest::Approx(0.5).epsilon(1e-15));
  for (std::size_t k = 2; k <= 8; ++k) CHECK(a1.at(k) == 0.0);
  CHECK(a1.alpha() == doctest::Approx(mean(Distribution::point_mass(1)) / 2.0));
}

TEST_CASE("coefficients of the mean-2 random-crossover fixed point are all one") {
  const Distribution fp = analytic_random(2.0, 256).distribution;
  const CoeffVector a = coeffs_from_distribution(fp, 20);
  for (std::size_t k = 0; k <= 20; ++k)
    CHECK(a.at(k) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("alpha equals half the mean") {
  testgen::Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 32);
    const CoeffVector a = coeffs_from_distribution(p, 16);
    CHECK(a.alpha() == doctest::Approx(mean(p) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("inversion of point-mass coefficients") {
  CoeffVector a;
  a.values = {1.0, 0.0, 0.0, 0.0};
  const Distribution d0 = distribution_from_coeffs(a, 3);
  CHECK(d0.at(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tv_distance(d0, Distribution::point_mass(0)) <= 1e-12);

  a.values = {1.0, 0.5, 0.0, 0.0};
  const Distribution d1 = distribution_from_coeffs(a, 3);
  CHECK(tv_distance(d1, Distribution::point_mass(1)) <= 1e-12);
}

TEST_CASE("inversion of geometric coefficients recovers the analytic point") {
  // alpha = 1/2 corresponds to the mean-1 fixed point of random crossover.
  const CoeffVector a = geometric_coeffs(0.5, 100);
  const Distribution inverted = distribution_from_coeffs(a, 12);
  const Distribution expected = analytic_random(1.0, 12).distribution;
  CHECK(tv_distance(inverted, expected) <= 1e-8);
}

TEST_CASE("roundtrip through coefficients is the identity on small supports") {
  testgen::Rng rng(9);
  for (int rep = 0; rep < 100; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 20, 0.45);
    const Distribution back =
        distribution_from_coeffs(coeffs_from_distribution(p, 24), 24);
    CHECK(tv_distance(back, p) <= 1e-8);
  }
}

TEST_CASE("divergent inversions are rejected") {
  // Coefficients without decay make the alternating terms blow up.
  CoeffVector a = geometric_coeffs(1.0, 40);
  a.values.assign(41, 1.0);
  CHECK_THROWS_AS(distribution_from_coeffs(a, 10), DivergentInversion);
}

TEST_CASE("induced recombinator frozen examples") {
  CoeffVector geo = geometric_coeffs(0.7, 24);
  const CoeffVector out = induced_recombinator(geo);
  for (std::size_t k = 0; k <= 24; ++k)
    CHECK(out.at(k) == doctest::Approx(geo.at(k)).epsilon(1e-13));

  CoeffVector zero;
  zero.values = {1.0, 0.0, 0.0, 0.0};
  const CoeffVector zout = induced_recombinator(zero);
  CHECK(zout.at(0) == 1.0);
  for (std::size_t k = 1; k <= 3; ++k) CHECK(zout.at(k) == 0.0);

  CoeffVector ones;
  ones.values = {1.0, 1.0, 0.0, 0.0};
  const CoeffVector oout = induced_recombinator(ones);
  CHECK(oout.at(0) == 1.0);
  CHECK(oout.at(1) == 1.0);
  CHECK(oout.at(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(oout.at(3) == 0.0);
}

TEST_CASE("weighted metric") {
  testgen::Rng rng(21);
  const CoeffVector a = testgen::random_coeffs(rng, 0.5, 1.2, 16);
  CHECK(weighted_metric(a, a) == 0.0);

  CoeffVector b = a;
  b.values[2] += b.delta * b.delta;
  CHECK(weighted_metric(a, b) ==
        doctest::Approx(a.gamma * a.gamma).epsilon(1e-13));
  CHECK(weighted_metric(a, b) == weighted_metric(b, a));

  CoeffVector mismatched = a;
  mismatched.delta *= 2.0;
  CHECK_THROWS_AS(weighted_metric(a, mismatched), ParamMismatch);
}

TEST_CASE("membership in the coefficient space") {
  CoeffVector a;
  a.delta = 0.8;
  a.values = {1.0, 0.4, 0.0, 0.0};
  CHECK(membership(a));

  CoeffVector b = a;
  b.values[2] = b.delta * b.delta * 1.01;
  CHECK_FALSE(membership(b));

  CoeffVector c = a;
  c.values[0] = 0.999;
  CHECK_FALSE(membership(c));

  CoeffVector fp = coeffs_from_distribution(
      analytic_random(2.0, 256).distribution, 20, kDefaultGamma, 1.05);
  CHECK(membership(fp));
}

TEST_CASE("fixed-point coefficient recursion") {
  const CoeffVector ones = fixed_coeffs_recursion(1.0, 5);
  for (std::size_t k = 0; k <= 5; ++k) CHECK(ones.at(k) == 1.0);

  const CoeffVector zero = fixed_coeffs_recursion(0.0, 5);
  CHECK(zero.at(0) == 1.0);
  for (std::size_t k = 1; k <= 5; ++k) CHECK(zero.at(k) == 0.0);

  const CoeffVector half = fixed_coeffs_recursion(0.5, 4);
  const double expected[] = {1.0, 0.5, 0.25, 0.125, 0.0625};
  for (std::size_t k = 0; k <= 4; ++k)
    CHECK(half.at(k) == doctest::Approx(expected[k]).epsilon(1e-15));

  // The recursion reproduces the geometric sequence for any alpha.
  for (double alpha : {0.25, 0.8, 1.7}) {
    const CoeffVector rec = fixed_coeffs_recursion(alpha, 12);
    double x = 1.0;
    for (std::size_t k = 0; k <= 12; ++k) {
      CHECK(std::abs(rec.at(k) - x) <= 1e-12 * std::max(1.0, x));
      x *= alpha;
    }
  }
}

TEST_CASE("coefficient map commutes with random crossover") {
  testgen::Rng rng(33);
  for (int rep = 0; rep < 100; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 64);
    const std::size_t K = 128;
    CoeffVector lhs = coeffs_from_distribution(apply_random(p, K, 1.0), K);
    CoeffVector rhs = induced_recombinator(coeffs_from_distribution(p, K));
    const double delta = std::max(lhs.delta, rhs.delta);
    lhs.delta = rhs.delta = delta;
    CHECK(weighted_metric(lhs, rhs) <= 1e-9);
  }
}

TEST_CASE("induced recombinator contracts with factor 8/9 at gamma = 1/4") {
  testgen::Rng rng(37);
  for (int rep = 0; rep < 200; ++rep) {
    const double delta = rng.uniform(0.6, 2.0);
    const double alpha = rng.uniform(0.05, 1.0) * delta;
    const CoeffVector a = testgen::random_coeffs(rng, alpha, delta, 48);
    const CoeffVector b = testgen::random_coeffs(rng, alpha, delta, 48);
    const double d0 = weighted_metric(a, b);
    if (d0 == 0.0) continue;
    const double d1 =
        weighted_metric(induced_recombinator(a), induced_recombinator(b));
    CHECK(d1 <= (8.0 / 9.0) * d0 + 1e-12);
  }
}

TEST_CASE("coefficient map is linear") {
  testgen::Rng rng(41);
  for (int rep = 0; rep < 50; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 32);
    const Distribution q = testgen::random_distribution(rng, 32);
    const double lambda = rng.uniform();
    std::vector<double> v(std::max(p.size(), q.size()), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k)
      v[k] = lambda * p.at(k) + (1.0 - lambda) * q.at(k);
    const CoeffVector am =
        coeffs_from_distribution(Distribution::unchecked(std::move(v), 0.0), 32);
    const CoeffVector ap = coeffs_from_distribution(p, 32);
    const CoeffVector aq = coeffs_from_distribution(q, 32);
    for (std::size_t k = 0; k <= 32; ++k)
      CHECK(std::abs(am.at(k) - lambda * ap.at(k) - (1.0 - lambda) * aq.at(k)) <=
            1e-12);
  }
}

TEST_CASE("coefficients grow monotonically in q") {
  testgen::Rng rng(43);
  const double qpairs[][2] = {{0.0, 0.3}, {0.3, 0.7}, {0.7, 1.0}, {0.0, 1.0}};
  for (int rep = 0; rep < 100; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 32);
    for (const auto& qq : qpairs)
      CHECK(monotonicity_check(p, qq[0], qq[1], 32));
  }
}

TEST_CASE("gamma is validated") {
  CHECK_THROWS_AS(
      coeffs_from_distribution(Distribution::point_mass(1), 4, 0.34),
      InvalidParameter);
  CHECK_THROWS_AS(
      coeffs_from_distribution(Distribution::point_mass(1), 4, 0.0),
      InvalidParameter);
}
