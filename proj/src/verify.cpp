#include "uc/verify.hpp"

#include <algorithm>
#include <cmath>

#include "uc/dynamics.hpp"
#include "uc/fixpoint.hpp"
#include "uc/genfunc.hpp"
#include "uc/io.hpp"
#include "uc/kernel.hpp"
#include "uc/measure.hpp"
#include "uc/recomb.hpp"
#include "uc/testgen.hpp"

namespace uc {

double c_closed_form(double q, std::size_t k, std::size_t l) {
  const double u = static_cast<double>(std::min(k, l));
  const double d = static_cast<double>(k > l ? k - l : l - k);
  const double omq = 1.0 - q;
  const double denom = (u + 1.0) * (d + 1.0) * omq * omq +
                       2.0 * q * (u - (u + 1.0) * q + std::pow(q, u + 1.0));
  return omq * omq / denom;
}

namespace {

using testgen::Rng;

constexpr double kQGrid[] = {0.0, 0.25, 0.5, 0.75, 1.0};

struct Suite {
  std::vector<CheckResult> results;

  void max_check(const std::string& name, double measured, double tol) {
    results.push_back({name, measured <= tol, measured, tol});
  }
  void min_check(const std::string& name, double measured, double threshold) {
    results.push_back({name, measured > threshold, measured, threshold});
  }
};

Distribution mix(const Distribution& p, const Distribution& q, double lambda) {
  std::vector<double> v(std::max(p.size(), q.size()), 0.0);
  for (std::size_t k = 0; k < v.size(); ++k)
    v[k] = lambda * p.at(k) + (1.0 - lambda) * q.at(k);
  return Distribution::unchecked(std::move(v),
                                 lambda * p.tail_mass() +
                                     (1.0 - lambda) * q.tail_mass());
}

void kernel_checks(Suite& suite, const VerifyOptions& opt) {
  double sum_dev = 0.0, mean_dev = 0.0;
  for (double q : kQGrid) {
    const KernelQ kernel(q);
    for (std::size_t k = 0; k <= 40; ++k) {
      for (std::size_t l = k; l <= 40; ++l) {
        if (opt.fault_skip_kernel_normalization) {
          // Negative control: raw weights instead of transitions.
          double s = 0.0, mn = 0.0;
          for (std::size_t i = 0; i <= k + l; ++i) {
            const double w = weight(q, i, k + l - i, k, l);
            s += w;
            mn += static_cast<double>(i) * w;
          }
          sum_dev = std::max(sum_dev, std::abs(s - 1.0));
          mean_dev = std::max(
              mean_dev, std::abs(mn - static_cast<double>(k + l) / 2.0));
        } else {
          const auto rep = kernel.validate_row(k, l);
          sum_dev = std::max(sum_dev, rep.sum_deviation);
          mean_dev = std::max(mean_dev, rep.mean_deviation);
        }
      }
    }
  }
  suite.max_check("kernel.row_normalization", sum_dev, 1e-12);
  suite.max_check("kernel.row_mean_conservation", mean_dev, 1e-12);

  double sym = 0.0;
  for (double q : {0.0, 0.37, 1.0}) {
    const KernelQ kernel(q);
    for (std::size_t k = 0; k <= 12; ++k)
      for (std::size_t l = 0; l <= 12; ++l)
        for (std::size_t i = 0; i <= k + l; ++i) {
          const std::size_t j = k + l - i;
          const double t = kernel.transition(i, j, k, l);
          sym = std::max(sym, std::abs(t - kernel.transition(j, i, k, l)));
          sym = std::max(sym, std::abs(t - kernel.transition(i, j, l, k)));
        }
  }
  suite.max_check("kernel.symmetry_bitwise", sym, 0.0);

  const KernelQ k0(0.0);
  double dev0 = 0.0;
  for (std::size_t k = 0; k <= 40; ++k)
    for (std::size_t l = 0; l <= 40; ++l) {
      const std::size_t lo = std::min(k, l), hi = std::max(k, l);
      for (std::size_t i = 0; i <= k + l; ++i) {
        const double t = k0.transition(i, k + l - i, k, l);
        const double expected =
            (i >= lo && i <= hi) ? 1.0 / static_cast<double>(1 + hi - lo) : 0.0;
        dev0 = std::max(dev0, std::abs(t - expected));
      }
    }
  suite.max_check("kernel.q0_specialization", dev0, 1e-15);

  const KernelQ k1(1.0);
  double dev1 = 0.0;
  for (std::size_t k = 0; k <= 40; ++k)
    for (std::size_t l = 0; l <= 40; ++l)
      for (std::size_t i = 0; i <= k + l; ++i) {
        const std::size_t j = k + l - i;
        const double expected =
            (1.0 + static_cast<double>(std::min({k, l, i, j}))) /
            (static_cast<double>(k + 1) * static_cast<double>(l + 1));
        dev1 = std::max(dev1,
                        std::abs(k1.transition(i, j, k, l) - expected));
      }
  suite.max_check("kernel.q1_specialization", dev1, 1e-15);

  double ident = 0.0;
  for (std::size_t n = 0; n <= 50; ++n)
    for (std::size_t i = 0; i <= n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j <= n; ++j)
        s += 1.0 + static_cast<double>(std::min({i, j, n - i, n - j}));
      ident = std::max(
          ident, std::abs(s - static_cast<double>((i + 1) * (n - i + 1))));
    }
  suite.max_check("kernel.combinatorial_identity", ident, 0.0);

  double cdev = 0.0;
  for (double q : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999, 1.0 - 1e-6}) {
    const KernelQ kernel(q);
    for (std::size_t k = 0; k <= 30; ++k)
      for (std::size_t l = k; l <= 30; ++l)
        cdev = std::max(cdev, std::abs(kernel.c_coefficient(k, l) -
                                       c_closed_form(q, k, l)));
  }
  suite.max_check("kernel.normalization_closed_form", cdev, 1e-10);
}

void measure_checks(Suite& suite, Rng& rng) {
  double metric_dev = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 32);
    const Distribution q = testgen::random_distribution(rng, 32);
    const Distribution r = testgen::random_distribution(rng, 32);
    metric_dev = std::max(metric_dev, std::abs(tv_distance(p, q) - tv_distance(q, p)));
    metric_dev = std::max(metric_dev, tv_distance(p, p));
    metric_dev = std::max(
        metric_dev, tv_distance(p, r) - tv_distance(p, q) - tv_distance(q, r));
  }
  suite.max_check("measure.tv_metric", metric_dev, 1e-15);

  double lin_dev = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 32);
    const Distribution q = testgen::random_distribution(rng, 32);
    const double lambda = rng.uniform();
    const Distribution m = mix(p, q, lambda);
    lin_dev = std::max(lin_dev, std::abs(mean(m) - lambda * mean(p) -
                                         (1.0 - lambda) * mean(q)));
    const double s = rng.uniform(1.0, 3.0);
    lin_dev = std::max(
        lin_dev, std::abs(centered_moment(m, s, 2.0) -
                          lambda * centered_moment(p, s, 2.0) -
                          (1.0 - lambda) * centered_moment(q, s, 2.0)));
  }
  suite.max_check("measure.linearity", lin_dev, 1e-12);

  double pm_dev = 0.0;
  for (std::size_t k : {0u, 3u, 17u}) {
    const Distribution d = Distribution::point_mass(k);
    for (double s : {1.0, 2.0, 3.5})
      pm_dev = std::max(pm_dev,
                        centered_moment(d, s, static_cast<double>(k)));
  }
  suite.max_check("measure.point_mass_moments", pm_dev, 0.0);
}

void recomb_checks(Suite& suite, Rng& rng) {
  const KernelQ kq0(0.0), kq1(1.0);

  double mass_dev = 0.0, mean_dev = 0.0, tv0 = 0.0, tv1 = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 64);
    const std::size_t cap = 2 * p.support_max() + 1;

    const Distribution general0 = apply_general(kq0, p, cap, 1.0);
    const Distribution general1 = apply_general(kq1, p, cap, 1.0);
    const Distribution internal = apply_internal(p);
    const Distribution random = apply_random(p, cap, 1.0);
    const Distribution takahata = apply_takahata(p, cap, 1.0);

    tv0 = std::max(tv0, tv_distance(general0, internal));
    tv1 = std::max(tv1, tv_distance(general1, random));
    for (const Distribution* out :
         {&general0, &general1, &internal, &random, &takahata}) {
      mass_dev = std::max(mass_dev, std::abs(out->mass() - p.mass()));
      mean_dev = std::max(mean_dev, std::abs(mean(*out) - mean(p)));
    }
  }
  suite.max_check("recomb.mass_conservation", mass_dev, 1e-12);
  suite.max_check("recomb.mean_conservation", mean_dev, 1e-10);
  suite.max_check("recomb.specialization_q0", tv0, 1e-12);
  suite.max_check("recomb.specialization_q1", tv1, 1e-12);

  double lipschitz_excess = -1.0;
  const double qs[] = {0.0, 0.37, 0.73, 1.0};
  for (int rep = 0; rep < 200; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 64);
    const Distribution r = testgen::random_distribution(rng, 64);
    const Recombinator recomb(
        RecombinatorSpec::general_q(qs[rep % 4], 130, 1.0));
    const Distribution rp = recomb(p);
    const Distribution rr = recomb(r);
    lipschitz_excess = std::max(
        lipschitz_excess, tv_distance(rp, rr) - 2.0 * tv_distance(p, r));
  }
  suite.max_check("recomb.lipschitz_bound", lipschitz_excess, 1e-12);

  double descent_excess = -1.0;
  double min_drop = 1e300;
  for (int rep = 0; rep < 50; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 48);
    const Distribution out = apply_internal(p);
    const double m = mean(p);
    for (double s : {1.0, 2.0}) {
      const double drop = centered_moment(p, s, m) - centered_moment(out, s, m);
      descent_excess = std::max(descent_excess, -drop);
      min_drop = std::min(min_drop, drop);
    }
  }
  suite.max_check("recomb.moment_descent", descent_excess, 1e-12);
  suite.min_check("recomb.moment_strict_descent", min_drop, 1e-12);

  std::size_t confinement_violations = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const Distribution base = testgen::random_distribution(rng, 24);
    const std::size_t shift = rng.index(8);
    std::vector<double> v(shift, 0.0);
    v.insert(v.end(), base.values().begin(), base.values().end());
    const Distribution p = Distribution::unchecked(std::move(v), 0.0);
    const Distribution out = apply_internal(p);
    if (out.support_min() < p.support_min() ||
        out.support_max() > p.support_max())
      ++confinement_violations;
  }
  suite.max_check("recomb.support_confinement",
                  static_cast<double>(confinement_violations), 0.0);
}

void genfunc_checks(Suite& suite, Rng& rng) {
  double diagram_dev = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 64);
    const std::size_t K = 128;
    const Distribution rp = apply_random(p, K, 1.0);
    CoeffVector lhs = coeffs_from_distribution(rp, K);
    CoeffVector rhs_c = induced_recombinator(coeffs_from_distribution(p, K));
    const double delta = std::max(lhs.delta, rhs_c.delta);
    lhs.delta = rhs_c.delta = delta;
    diagram_dev = std::max(diagram_dev, weighted_metric(lhs, rhs_c));
  }
  suite.max_check("genfunc.commuting_diagram", diagram_dev, 1e-9);

  double worst_ratio = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const double delta = rng.uniform(0.6, 2.0);
    const double alpha = rng.uniform(0.05, 1.0) * delta;
    CoeffVector a = testgen::random_coeffs(rng, alpha, delta, 48);
    CoeffVector b = testgen::random_coeffs(rng, alpha, delta, 48);
    const double d0 = weighted_metric(a, b);
    if (d0 == 0.0) continue;
    const double d1 =
        weighted_metric(induced_recombinator(a), induced_recombinator(b));
    worst_ratio = std::max(worst_ratio, d1 / d0);
  }
  suite.max_check("genfunc.contraction_ratio", worst_ratio,
                  8.0 / 9.0 + 1e-12);

  double lin_dev = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 32);
    const Distribution q = testgen::random_distribution(rng, 32);
    const double lambda = rng.uniform();
    const CoeffVector am = coeffs_from_distribution(mix(p, q, lambda), 32);
    const CoeffVector ap = coeffs_from_distribution(p, 32);
    const CoeffVector aq = coeffs_from_distribution(q, 32);
    for (std::size_t k = 0; k <= 32; ++k)
      lin_dev = std::max(lin_dev,
                         std::abs(am.at(k) - lambda * ap.at(k) -
                                  (1.0 - lambda) * aq.at(k)));
  }
  suite.max_check("genfunc.coefficient_linearity", lin_dev, 1e-12);

  std::size_t mono_failures = 0;
  const double qpairs[][2] = {{0.0, 0.3}, {0.3, 0.7}, {0.7, 1.0}, {0.0, 1.0}};
  for (int rep = 0; rep < 100; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 32);
    for (const auto& qq : qpairs)
      if (!monotonicity_check(p, qq[0], qq[1], 32)) ++mono_failures;
  }
  suite.max_check("genfunc.q_monotonicity",
                  static_cast<double>(mono_failures), 0.0);

  double roundtrip_dev = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const Distribution p = testgen::random_distribution(rng, 20, 0.45);
    const Distribution back =
        distribution_from_coeffs(coeffs_from_distribution(p, 24), 24);
    roundtrip_dev = std::max(roundtrip_dev, tv_distance(back, p));
  }
  suite.max_check("genfunc.roundtrip", roundtrip_dev, 1e-8);
}

void dynamics_checks(Suite& suite, Rng& rng) {
  double fp_residual = 0.0;
  for (double m : {0.0, 1.5, 2.5, 7.25})
    fp_residual = std::max(fp_residual, analytic_internal(m).residual);
  for (double m : {0.0, 1.0, 2.0, 5.0})
    fp_residual = std::max(fp_residual, analytic_random(m).residual);
  fp_residual = std::max(fp_residual, analytic_takahata(1.0).residual);
  suite.max_check("dynamics.fixed_point_coincidence", fp_residual, 1e-9);

  double mass_dev = 0.0, mean_dev = 0.0;
  double lyap_m1 = -1.0, lyap_mr = -1.0, lyap_coeff = -1.0;
  for (double q : {0.0, 1.0}) {
    const Distribution p0 = testgen::random_with_mean(rng, 12, 2.0);
    EvolveConfig cfg;
    cfg.mode = EvolveMode::continuous;
    cfg.recomb = RecombinatorSpec::general_q(q, kDefaultTruncation);
    cfg.t_end = 100.0;
    cfg.dt = 0.1;
    cfg.track_coeff_distance = (q == 1.0);
    const Trajectory traj = evolve_continuous(p0, cfg);
    const double mean0 = traj.front().mean;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
      const auto& s = traj.samples[i];
      mass_dev = std::max(
          mass_dev, std::abs(s.state.mass() + s.tail_mass - 1.0));
      mean_dev = std::max(mean_dev,
                          std::abs(s.mean - mean0) -
                              static_cast<double>(cfg.recomb.truncation) *
                                  s.tail_mass);
      if (i > 0) {
        const auto& prev = traj.samples[i - 1];
        if (q == 0.0) {
          lyap_m1 = std::max(lyap_m1, s.M1 - prev.M1);
          lyap_mr = std::max(lyap_mr, s.Mr - prev.Mr);
        } else if (s.coeff_distance && prev.coeff_distance) {
          lyap_coeff =
              std::max(lyap_coeff, *s.coeff_distance - *prev.coeff_distance);
        }
      }
    }

    EvolveConfig dcfg = cfg;
    dcfg.mode = EvolveMode::discrete;
    dcfg.steps = 1000;
    dcfg.stop_tol = 0.0;
    const Trajectory dtraj =
        evolve_discrete(testgen::random_with_mean(rng, 12, 2.0), dcfg);
    const double dmean0 = dtraj.front().mean;
    for (std::size_t i = 0; i < dtraj.samples.size(); ++i) {
      const auto& s = dtraj.samples[i];
      mass_dev = std::max(
          mass_dev, std::abs(s.state.mass() + s.tail_mass - 1.0));
      mean_dev = std::max(mean_dev,
                          std::abs(s.mean - dmean0) -
                              static_cast<double>(cfg.recomb.truncation) *
                                  s.tail_mass);
      if (i > 0) {
        const auto& prev = dtraj.samples[i - 1];
        if (q == 0.0) {
          lyap_m1 = std::max(lyap_m1, s.M1 - prev.M1);
          lyap_mr = std::max(lyap_mr, s.Mr - prev.Mr);
        } else if (s.coeff_distance && prev.coeff_distance) {
          lyap_coeff =
              std::max(lyap_coeff, *s.coeff_distance - *prev.coeff_distance);
        }
      }
    }
  }
  suite.max_check("dynamics.mass_conservation_flow", mass_dev, 1e-8);
  suite.max_check("dynamics.mean_conservation_flow", mean_dev, 1e-8);
  suite.max_check("dynamics.lyapunov_internal_m1", lyap_m1, 1e-10);
  suite.max_check("dynamics.lyapunov_internal_mr", lyap_mr, 1e-10);
  suite.max_check("dynamics.lyapunov_random_coeff", lyap_coeff, 1e-10);

  double limit_dev = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const Distribution p0 = testgen::random_with_mean(rng, 8, 2.0);
    for (double q : {0.0, 1.0}) {
      EvolveConfig dcfg;
      dcfg.recomb = RecombinatorSpec::general_q(q, 128);
      dcfg.steps = 2000;
      dcfg.stop_tol = 1e-13;
      EvolveConfig ccfg = dcfg;
      ccfg.mode = EvolveMode::continuous;
      ccfg.t_end = 80.0;
      ccfg.dt = 0.1;
      const Trajectory d = evolve_discrete(p0, dcfg);
      const Trajectory c = evolve_continuous(p0, ccfg);
      limit_dev =
          std::max(limit_dev, tv_distance(d.back().state, c.back().state));
    }
  }
  suite.max_check("dynamics.limit_consistency", limit_dev, 1e-6);
}

void fixpoint_checks(Suite& suite, Rng& rng) {
  const Distribution target0 = analytic_internal(2.5).distribution;
  const Distribution target1 = analytic_random(2.5).distribution;
  double tv_internal = 0.0, tv_random = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const Distribution p0 = testgen::random_with_mean(rng, 12, 2.5);
    EvolveConfig cfg;
    cfg.recomb = RecombinatorSpec::internal_uc();
    cfg.steps = 10000;
    cfg.stop_tol = 1e-14;
    tv_internal = std::max(
        tv_internal, tv_distance(evolve_discrete(p0, cfg).back().state, target0));
    cfg.recomb = RecombinatorSpec::random_uc();
    tv_random = std::max(
        tv_random, tv_distance(evolve_discrete(p0, cfg).back().state, target1));
  }
  suite.max_check("fixpoint.uniqueness_internal", tv_internal, 1e-6);
  suite.max_check("fixpoint.uniqueness_random", tv_random, 1e-6);

  double recursion_dev = 0.0;
  for (double alpha : {0.25, 0.5, 1.0, 2.0}) {
    const CoeffVector rec = fixed_coeffs_recursion(alpha, 16);
    const CoeffVector from_fp =
        coeffs_from_distribution(analytic_random(2.0 * alpha).distribution, 16);
    for (std::size_t k = 0; k <= 16; ++k)
      recursion_dev =
          std::max(recursion_dev, std::abs(rec.at(k) - from_fp.at(k)));
  }
  suite.max_check("fixpoint.coeff_recursion_consistency", recursion_dev, 1e-8);

  double max_residual = 0.0, mean_pin = 0.0;
  double min_reversibility = 1e300;
  std::size_t positivity_violations = 0;
  for (double q : {0.25, 0.5, 0.75}) {
    const FixedPointResult fp = solve_numeric(q, 2.0);
    max_residual = std::max(max_residual, fp.residual);
    mean_pin = std::max(mean_pin, std::abs(mean(fp.distribution) - 2.0));
    min_reversibility = std::min(
        min_reversibility,
        reversibility_residual(fp.distribution, KernelQ(q), 12));
    const auto& v = fp.distribution.values();
    std::size_t kstar = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] >= 1e-14) kstar = k;
    for (std::size_t k = 0; k <= kstar; ++k)
      if (!(v[k] > 0.0)) ++positivity_violations;
  }
  suite.max_check("fixpoint.numeric_residual", max_residual, 1e-10);
  suite.max_check("fixpoint.mean_pinning", mean_pin, 1e-8);
  suite.max_check("fixpoint.intermediate_positivity",
                  static_cast<double>(positivity_violations), 0.0);
  suite.min_check("fixpoint.reversibility_intermediate", min_reversibility,
                  1e-4);

  const double rev0 = reversibility_residual(analytic_internal(2.5).distribution,
                                             KernelQ(0.0), 12);
  const double rev1 = reversibility_residual(analytic_random(2.0).distribution,
                                             KernelQ(1.0), 12);
  suite.max_check("fixpoint.reversibility_internal", rev0, 1e-12);
  suite.max_check("fixpoint.reversibility_random", rev1, 1e-10);
}

}  // namespace

std::vector<CheckResult> verify_suite(const VerifyOptions& options) {
  Suite suite;
  Rng rng(options.seed);

  kernel_checks(suite, options);
  measure_checks(suite, rng);
  recomb_checks(suite, rng);
  genfunc_checks(suite, rng);
  dynamics_checks(suite, rng);
  fixpoint_checks(suite, rng);

  std::sort(suite.results.begin(), suite.results.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.name < b.name;
            });
  return suite.results;
}

}  // namespace uc
