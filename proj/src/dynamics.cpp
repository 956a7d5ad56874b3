#include "uc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uc/errors.hpp"

namespace uc {

namespace {

struct MonitorContext {
  const EvolveConfig* cfg;
  double alpha0 = 0.0;   // mean(p0)/2, target of the coefficient monitor
  double delta0 = 1.0;   // bound parameter pinned at t = 0
  CoeffVector geometric;
};

MonitorContext make_context(const Distribution& p0, const EvolveConfig& cfg) {
  MonitorContext ctx;
  ctx.cfg = &cfg;
  if (cfg.track_coeff_distance) {
    ctx.alpha0 = mean(p0) / 2.0;
    CoeffVector a0 = coeffs_from_distribution(p0, cfg.coeff_K, kDefaultGamma);
    ctx.delta0 = std::max({1.0, ctx.alpha0, a0.delta});
    ctx.geometric =
        geometric_coeffs(ctx.alpha0, cfg.coeff_K, kDefaultGamma, ctx.delta0);
  }
  return ctx;
}

TrajectorySample make_sample(double t, Distribution state,
                             const MonitorContext& ctx) {
  const EvolveConfig& cfg = *ctx.cfg;
  TrajectorySample s{t,   std::move(state), 0.0, 0.0, 0.0,
                     {},  0.0,              {}};
  const MomentReport rep = moment_report(s.state, cfg.moment_r);
  s.mean = rep.mean;
  s.M1 = rep.M1;
  s.Mr = rep.Mr;
  s.tail_mass = s.state.tail_mass();
  if (cfg.target) s.tv_to_target = tv_distance(s.state, *cfg.target);
  if (cfg.track_coeff_distance) {
    CoeffVector a = coeffs_from_distribution(s.state, cfg.coeff_K,
                                             kDefaultGamma, ctx.delta0);
    s.coeff_distance = weighted_metric(a, ctx.geometric);
  }
  return s;
}

}  // namespace

Trajectory evolve_discrete(const Distribution& p0, const EvolveConfig& cfg) {
  const Recombinator recomb(cfg.recomb);
  const MonitorContext ctx = make_context(p0, cfg);

  Trajectory traj;
  traj.samples.push_back(make_sample(0.0, p0, ctx));
  Distribution p = p0;
  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    Distribution next = recomb(p);
    const double tv = tv_distance(next, p);
    p = std::move(next);
    traj.samples.push_back(make_sample(static_cast<double>(step), p, ctx));
    traj.iterations = step;
    traj.final_residual = tv;
    if (tv < cfg.stop_tol) {
      traj.converged = true;
      break;
    }
  }
  return traj;
}

std::vector<double> rhs(const Recombinator& recomb, const Distribution& p) {
  const std::size_t cap = 2 * p.support_max() + 2;
  RawApply raw = recomb.step_raw(p.values(), cap);
  std::vector<double> f = std::move(raw.values);
  if (f.size() < p.size()) f.resize(p.size(), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) f[k] -= p.values()[k];
  return f;
}

Trajectory evolve_continuous(const Distribution& p0, const EvolveConfig& cfg) {
  if (!(cfg.dt > 0.0 && cfg.dt <= 1.0))
    throw InvalidParameter("continuous mode requires 0 < dt <= 1");
  const Recombinator recomb(cfg.recomb);
  const MonitorContext ctx = make_context(p0, cfg);
  const std::size_t cap = cfg.recomb.truncation + 1;

  std::vector<double> x(cap, 0.0);
  for (std::size_t k = 0; k < std::min(cap, p0.size()); ++k)
    x[k] = p0.values()[k];
  double tail = p0.tail_mass();

  // Vector field of the flow; truncation loss is reported so the caller can
  // integrate it alongside the state.
  auto field = [&](const std::vector<double>& y, double& leak) {
    RawApply raw = recomb.step_raw(y, cap);
    leak = raw.leak;
    std::vector<double> f = std::move(raw.values);
    f.resize(cap, 0.0);
    for (std::size_t k = 0; k < cap; ++k) f[k] -= y[k];
    return f;
  };
  auto shifted = [&](const std::vector<double>& base,
                     const std::vector<double>& dir, double h) {
    std::vector<double> y(cap);
    for (std::size_t k = 0; k < cap; ++k) y[k] = base[k] + h * dir[k];
    return y;
  };

  Trajectory traj;
  traj.samples.push_back(make_sample(0.0, p0, ctx));

  double t = 0.0;
  std::size_t step = 0;
  while (t < cfg.t_end - 1e-12) {
    const double h = std::min(cfg.dt, cfg.t_end - t);
    double l1, l2, l3, l4;
    const std::vector<double> k1 = field(x, l1);
    const std::vector<double> k2 = field(shifted(x, k1, h / 2.0), l2);
    const std::vector<double> k3 = field(shifted(x, k2, h / 2.0), l3);
    const std::vector<double> k4 = field(shifted(x, k3, h), l4);
    for (std::size_t k = 0; k < cap; ++k)
      x[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    tail += h / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);

    for (double& v : x) {
      if (v < 0.0) {
        if (v < -1e-9) {
          std::ostringstream msg;
          msg << "state entry " << v << " below -1e-9 at t = " << t + h
              << "; reduce dt";
          throw PositivityLost(msg.str());
        }
        traj.clipped_total += -v;
        v = 0.0;
      }
    }
    if (tail > cfg.recomb.leak_threshold) {
      std::ostringstream msg;
      msg << "accumulated truncation leak " << tail << " exceeds threshold";
      throw LeakExceeded(msg.str());
    }

    t += h;
    ++step;
    traj.samples.push_back(
        make_sample(t, Distribution::unchecked(x, tail), ctx));
    traj.iterations = step;
  }

  if (traj.samples.size() >= 2) {
    traj.final_residual = tv_distance(traj.samples.back().state,
                                      traj.samples[traj.samples.size() - 2].state);
  }
  return traj;
}

std::vector<CoeffSample> coeff_evolve_continuous(const CoeffVector& a0,
                                                 double t_end, double dt) {
  if (!(dt > 0.0 && dt <= 1.0))
    throw InvalidParameter("coefficient flow requires 0 < dt <= 1");
  const std::size_t n = a0.size();
  const CoeffVector target =
      geometric_coeffs(a0.alpha(), n == 0 ? 0 : n - 1, a0.gamma, a0.delta);

  auto field = [&](const std::vector<double>& y) {
    std::vector<double> f(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t m = 0; m <= k; ++m) acc += y[m] * y[k - m];
      f[k] = acc / static_cast<double>(k + 1) - y[k];
      if (!std::isfinite(f[k]))
        throw OverflowError("coefficient flow overflow");
    }
    return f;
  };
  auto shifted = [&](const std::vector<double>& base,
                     const std::vector<double>& dir, double h) {
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = base[k] + h * dir[k];
    return y;
  };

  std::vector<CoeffSample> samples;
  CoeffVector a = a0;
  samples.push_back(CoeffSample{0.0, a, weighted_metric(a, target)});

  std::vector<double> x = a0.values;
  double t = 0.0;
  while (t < t_end - 1e-12) {
    const double h = std::min(dt, t_end - t);
    const auto k1 = field(x);
    const auto k2 = field(shifted(x, k1, h / 2.0));
    const auto k3 = field(shifted(x, k2, h / 2.0));
    const auto k4 = field(shifted(x, k3, h));
    for (std::size_t k = 0; k < n; ++k)
      x[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    t += h;
    a.values = x;
    samples.push_back(CoeffSample{t, a, weighted_metric(a, target)});
  }
  return samples;
}

}  // namespace uc
