#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uc/dynamics.hpp"
#include "uc/fixpoint.hpp"
#include "uc/testgen.hpp"

using namespace uc;

namespace {

EvolveConfig discrete_cfg(double q, std::size_t steps,
                          double stop_tol = 1e-10) {
  EvolveConfig cfg;
  cfg.mode = EvolveMode::discrete;
  cfg.recomb = RecombinatorSpec::general_q(q);
  cfg.steps = steps;
  cfg.stop_tol = stop_tol;
  return cfg;
}

EvolveConfig continuous_cfg(double q, double t_end, double dt = 0.1) {
  EvolveConfig cfg;
  cfg.mode = EvolveMode::continuous;
  cfg.recomb = RecombinatorSpec::general_q(q);
  cfg.t_end = t_end;
  cfg.dt = dt;
  return cfg;
}

}  // namespace

TEST_CASE("discrete evolution is stationary at fixed points") {
  const Distribution fp = analytic_random(2.0, 256).distribution;
  EvolveConfig cfg = discrete_cfg(1.0, 10, 0.0);
  const Trajectory traj = evolve_discrete(fp, cfg);
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(tv_distance(traj.samples[i].state, traj.samples[i - 1].state) <=
          1e-9);
}

TEST_CASE("discrete evolution converges to the random-crossover fixed point") {
  EvolveConfig cfg = discrete_cfg(1.0, 200, 0.0);
  cfg.target = analytic_random(2.0, 256).distribution;
  const Trajectory traj = evolve_discrete(Distribution::point_mass(2), cfg);
  REQUIRE(traj.back().tv_to_target.has_value());
  CHECK(*traj.back().tv_to_target < 1e-6);
}

TEST_CASE("the trivial state is constant under any variant") {
  for (double q : {0.0, 0.5, 1.0}) {
    const Trajectory traj =
        evolve_discrete(Distribution::point_mass(0), discrete_cfg(q, 5, 0.0));
    for (const auto& s : traj.samples)
      CHECK(tv_distance(s.state, Distribution::point_mass(0)) == 0.0);
  }
}

TEST_CASE("trajectory bookkeeping") {
  const Trajectory traj =
      evolve_discrete(Distribution::point_mass(2), discrete_cfg(1.0, 25, 0.0));
  REQUIRE(traj.samples.size() == 26);
  CHECK(traj.samples.front().t == 0.0);
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  const double mean0 = traj.front().mean;
  for (const auto& s : traj.samples)
    CHECK(std::abs(s.mean - mean0) <= 1e-8 + 256.0 * s.tail_mass);
}

TEST_CASE("early stop on successive TV distance") {
  EvolveConfig cfg = discrete_cfg(1.0, 10000, 1e-9);
  const Trajectory traj = evolve_discrete(Distribution::point_mass(2), cfg);
  CHECK(traj.converged);
  CHECK(traj.iterations < 10000);
  CHECK(traj.final_residual < 1e-9);
}

TEST_CASE("rhs vanishes at equilibria and sums to zero") {
  const Recombinator r1(RecombinatorSpec::random_uc());
  const Distribution fp = analytic_random(2.0, 256).distribution;
  const std::vector<double> at_fp = rhs(r1, fp);
  double l1 = 0.0;
  for (double v : at_fp) l1 += std::abs(v);
  CHECK(l1 <= 1e-10);

  const std::vector<double> f = rhs(r1, Distribution::point_mass(2));
  const double expected[] = {1.0 / 9, 2.0 / 9, 3.0 / 9 - 1.0, 2.0 / 9,
                             1.0 / 9};
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(f[i] == doctest::Approx(expected[i]).epsilon(1e-14));

  testgen::Rng rng(51);
  for (int rep = 0; rep < 20; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 32);
    for (double q : {0.0, 0.5, 1.0}) {
      const Recombinator r(RecombinatorSpec::general_q(q, 128));
      double sum = 0.0;
      for (double v : rhs(r, p)) sum += v;
      CHECK(std::abs(sum) <= 1e-12);
    }
  }
}

TEST_CASE("continuous evolution is stationary at fixed points") {
  for (double q : {0.0, 1.0}) {
    const Distribution fp = (q == 0.0)
                                ? analytic_internal(2.0).distribution
                                : analytic_random(2.0, 256).distribution;
    EvolveConfig cfg = continuous_cfg(q, 10.0);
    cfg.target = fp;
    const Trajectory traj = evolve_continuous(fp, cfg);
    CHECK(*traj.back().tv_to_target <= 1e-9);
  }
}

TEST_CASE("continuous evolution converges for internal crossover") {
  testgen::Rng rng(53);
  const Distribution p0 = testgen::random_with_mean(rng, 10, 2.5);
  EvolveConfig cfg = continuous_cfg(0.0, 120.0);
  cfg.target = analytic_internal(2.5).distribution;
  const Trajectory traj = evolve_continuous(p0, cfg);
  CHECK(*traj.back().tv_to_target < 1e-6);
}

TEST_CASE("continuous evolution converges for random crossover") {
  EvolveConfig cfg = continuous_cfg(1.0, 50.0);
  cfg.target = analytic_random(2.0, 256).distribution;
  const Trajectory traj = evolve_continuous(Distribution::point_mass(2), cfg);
  CHECK(*traj.back().tv_to_target < 1e-5);
}

TEST_CASE("mass stays normalized along the flow") {
  EvolveConfig cfg = continuous_cfg(1.0, 100.0);
  const Trajectory traj = evolve_continuous(Distribution::point_mass(2), cfg);
  for (const auto& s : traj.samples)
    CHECK(std::abs(s.state.mass() + s.tail_mass - 1.0) <= 1e-8);
}

TEST_CASE("first moment decays monotonically for internal crossover") {
  testgen::Rng rng(57);
  const Distribution p0 = testgen::random_with_mean(rng, 12, 2.5);

  EvolveConfig dcfg = discrete_cfg(0.0, 500, 0.0);
  const Trajectory dtraj = evolve_discrete(p0, dcfg);
  for (std::size_t i = 1; i < dtraj.samples.size(); ++i) {
    CHECK(dtraj.samples[i].M1 <= dtraj.samples[i - 1].M1 + 1e-10);
    CHECK(dtraj.samples[i].Mr <= dtraj.samples[i - 1].Mr + 1e-10);
  }

  const Trajectory ctraj = evolve_continuous(p0, continuous_cfg(0.0, 50.0));
  for (std::size_t i = 1; i < ctraj.samples.size(); ++i)
    CHECK(ctraj.samples[i].M1 <= ctraj.samples[i - 1].M1 + 1e-10);
}

TEST_CASE("coefficient distance decays monotonically for random crossover") {
  testgen::Rng rng(59);
  const Distribution p0 = testgen::random_with_mean(rng, 10, 2.0);
  EvolveConfig cfg = discrete_cfg(1.0, 200, 0.0);
  cfg.track_coeff_distance = true;
  const Trajectory traj = evolve_discrete(p0, cfg);
  REQUIRE(traj.samples.front().coeff_distance.has_value());
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(*traj.samples[i].coeff_distance <=
          *traj.samples[i - 1].coeff_distance + 1e-10);
}

TEST_CASE("coefficient flow reaches the geometric point") {
  CoeffVector a0 = geometric_coeffs(1.0, 24);
  const auto stationary = coeff_evolve_continuous(a0, 5.0, 0.1);
  CHECK(stationary.back().dist_to_geometric <= 1e-10);

  a0.values.assign(25, 0.0);
  a0.values[0] = 1.0;
  a0.values[1] = 1.0;
  const auto samples = coeff_evolve_continuous(a0, 40.0, 0.1);
  CHECK(samples.back().dist_to_geometric < 1e-6);
  for (std::size_t i = 1; i < samples.size(); ++i)
    CHECK(samples[i].dist_to_geometric <=
          samples[i - 1].dist_to_geometric + 1e-10);
}

TEST_CASE("continuous mode validates dt") {
  EvolveConfig cfg = continuous_cfg(1.0, 1.0, 1.5);
  CHECK_THROWS_AS(evolve_continuous(Distribution::point_mass(1), cfg),
                  InvalidParameter);
}

TEST_CASE("discrete and continuous dynamics share their limits") {
  // Non-integer mean: at integer means the two-point limit degenerates to a
  // point mass and the q = 0 flow slows to an algebraic rate.
  testgen::Rng rng(61);
  for (int rep = 0; rep < 3; ++rep) {
    const Distribution p0 = testgen::random_with_mean(rng, 8, 2.5);
    for (double q : {0.0, 1.0}) {
      EvolveConfig dcfg = discrete_cfg(q, 10000, 1e-13);
      dcfg.recomb.truncation = 128;
      EvolveConfig ccfg = continuous_cfg(q, q == 0.0 ? 150.0 : 80.0);
      ccfg.recomb.truncation = 128;
      const Trajectory d = evolve_discrete(p0, dcfg);
      const Trajectory c = evolve_continuous(p0, ccfg);
      CHECK(tv_distance(d.back().state, c.back().state) < 1e-6);
    }
  }
}
