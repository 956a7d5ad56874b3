#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uc/measure.hpp"
#include "uc/testgen.hpp"

using namespace uc;

TEST_CASE("construction validates mass and sign") {
  CHECK(Distribution::from_values({1.0}).at(0) == 1.0);
  const Distribution two = Distribution::from_values({0.5, 0.5});
  CHECK(two.at(1) == 0.5);
  CHECK(two.tail_mass() == 0.0);

  CHECK_THROWS_AS(Distribution::from_values({0.5, 0.6}), NotNormalized);
  CHECK_THROWS_AS(Distribution::from_values({1.5, -0.5}), NegativeMass);
  CHECK_THROWS_AS(Distribution::from_values({}), NotNormalized);

  // Roundoff-level negatives are clipped, not rejected.
  const Distribution clipped = Distribution::from_values({1.0, -1e-16});
  CHECK(clipped.at(1) == 0.0);

  const Distribution tailed = Distribution::with_tail({0.9}, 0.1);
  CHECK(tailed.tail_mass() == 0.1);
  CHECK_THROWS_AS(Distribution::with_tail({0.9}, 0.2), NotNormalized);
}

TEST_CASE("tv_distance") {
  const Distribution d0 = Distribution::point_mass(0);
  const Distribution d1 = Distribution::point_mass(1);
  CHECK(tv_distance(d0, d0) == 0.0);
  CHECK(tv_distance(d0, d1) == 2.0);
  CHECK(tv_distance(Distribution::from_values({0.5, 0.5}), d0) == 1.0);
}

TEST_CASE("tv_distance is a metric") {
  testgen::Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 24);
    const Distribution q = testgen::random_distribution(rng, 24);
    const Distribution r = testgen::random_distribution(rng, 24);
    CHECK(tv_distance(p, q) == tv_distance(q, p));
    CHECK(tv_distance(p, p) <= 1e-15);
    CHECK(tv_distance(p, r) <= tv_distance(p, q) + tv_distance(q, r) + 1e-15);
    CHECK(tv_distance(p, q) >= 0.0);
  }
}

TEST_CASE("mean") {
  CHECK(mean(Distribution::point_mass(0)) == 0.0);
  std::vector<double> v(4, 0.0);
  v[2] = 0.5;
  v[3] = 0.5;
  CHECK(mean(Distribution::from_values(v)) == doctest::Approx(2.5));
}

TEST_CASE("centered moments") {
  const Distribution d3 = Distribution::point_mass(3);
  CHECK(centered_moment(d3, 1.0, 3.0) == 0.0);
  CHECK(centered_moment(d3, 2.0) == 0.0);

  std::vector<double> v(4, 0.0);
  v[2] = 0.5;
  v[3] = 0.5;
  const Distribution two = Distribution::from_values(v);
  CHECK(centered_moment(two, 1.0, 2.5) == doctest::Approx(0.5));
  CHECK(centered_moment(two, 2.0, 2.5) == doctest::Approx(0.25));

  const MomentReport rep = moment_report(two);
  CHECK(rep.mean == doctest::Approx(2.5));
  CHECK(rep.M1 == doctest::Approx(0.5));
  CHECK(rep.Mr == doctest::Approx(0.25));
  CHECK(rep.r == 2.0);
}

TEST_CASE("moments vanish exactly at integer point masses and only there") {
  for (std::size_t k : {0u, 5u, 40u}) {
    const Distribution d = Distribution::point_mass(k);
    const MomentReport rep = moment_report(d);
    CHECK(rep.M1 == 0.0);
    CHECK(rep.Mr == 0.0);
  }
  testgen::Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 16);
    const MomentReport r = moment_report(p);
    CHECK(r.M1 > 0.0);
    CHECK(r.Mr > 0.0);
  }
}

TEST_CASE("mean and centered moments are linear in the distribution") {
  testgen::Rng rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 24);
    const Distribution q = testgen::random_distribution(rng, 24);
    const double lambda = rng.uniform();
    std::vector<double> v(std::max(p.size(), q.size()), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k)
      v[k] = lambda * p.at(k) + (1.0 - lambda) * q.at(k);
    const Distribution m = Distribution::unchecked(std::move(v), 0.0);

    CHECK(std::abs(mean(m) - lambda * mean(p) - (1.0 - lambda) * mean(q)) <=
          1e-12);
    CHECK(std::abs(centered_moment(m, 2.0, 3.0) -
                   lambda * centered_moment(p, 2.0, 3.0) -
                   (1.0 - lambda) * centered_moment(q, 2.0, 3.0)) <= 1e-12);
  }
}

TEST_CASE("support bounds") {
  std::vector<double> v(8, 0.0);
  v[2] = 0.25;
  v[6] = 0.75;
  const Distribution p = Distribution::from_values(v);
  CHECK(p.support_min() == 2);
  CHECK(p.support_max() == 6);
}
