#include "uc/fixpoint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uc/genfunc.hpp"
#include "uc/recomb.hpp"

namespace uc {

namespace {

/// ||R(p) - p||_1 with the image computed on its full support.
double residual_l1(const Recombinator& recomb, const Distribution& p) {
  RawApply raw = recomb.step_raw(p.values(), 2 * p.support_max() + 2);
  std::vector<double> f = std::move(raw.values);
  if (f.size() < p.size()) f.resize(p.size(), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) f[k] -= p.values()[k];
  double r = 0.0;
  for (double v : f) r += std::abs(v);
  return r;
}

void check_mean(double m, std::size_t N) {
  if (!(m >= 0.0)) throw MeanOutOfRange("mean must be nonnegative");
  if (m > static_cast<double>(N)) {
    std::ostringstream msg;
    msg << "mean " << m << " exceeds truncation bound " << N;
    throw MeanOutOfRange(msg.str());
  }
}

Distribution geometric_family(double m, std::size_t N, double x, double scale,
                              bool size_biased) {
  // Tail of the started series beyond N, evaluated in closed form.
  double tail;
  if (x == 0.0) {
    tail = 0.0;
  } else if (size_biased) {
    tail = std::pow(x, static_cast<double>(N + 1)) *
           (static_cast<double>(N + 2) - static_cast<double>(N + 1) * x);
  } else {
    tail = std::pow(x, static_cast<double>(N + 1));
  }
  if (tail > 1e-12) {
    std::ostringstream msg;
    msg << "tail mass " << tail << " beyond N = " << N << " for mean " << m;
    throw TruncationTooSmall(msg.str());
  }

  std::vector<double> v(N + 1, 0.0);
  double xk = 1.0;
  double sum = 0.0;
  for (std::size_t k = 0; k <= N; ++k) {
    v[k] = scale * (size_biased ? static_cast<double>(k + 1) : 1.0) * xk;
    sum += v[k];
    xk *= x;
  }
  return Distribution::unchecked(std::move(v), std::max(0.0, 1.0 - sum));
}

}  // namespace

FixedPointResult analytic_internal(double m, std::size_t N) {
  check_mean(m, N);
  const double fl = std::floor(m);
  const double ce = std::ceil(m);
  std::vector<double> v(static_cast<std::size_t>(ce) + 1, 0.0);
  v[static_cast<std::size_t>(fl)] = fl + 1.0 - m;
  if (ce != fl) v[static_cast<std::size_t>(ce)] = m + 1.0 - ce;

  FixedPointResult result;
  result.distribution = Distribution::unchecked(std::move(v), 0.0);
  result.q = 0.0;
  result.mean_target = m;
  result.residual = residual_l1(Recombinator(RecombinatorSpec::internal_uc(N)),
                                result.distribution);
  return result;
}

FixedPointResult analytic_random(double m, std::size_t N) {
  check_mean(m, N);
  const double x = m / (m + 2.0);
  const double scale = (2.0 / (m + 2.0)) * (2.0 / (m + 2.0));

  FixedPointResult result;
  result.distribution = geometric_family(m, N, x, scale, true);
  result.q = 1.0;
  result.mean_target = m;
  result.residual = residual_l1(Recombinator(RecombinatorSpec::random_uc(N)),
                                result.distribution);
  return result;
}

FixedPointResult analytic_takahata(double m, std::size_t N) {
  check_mean(m, N);
  const double x = m / (m + 1.0);

  FixedPointResult result;
  result.distribution = geometric_family(m, N, x, 1.0 / (m + 1.0), false);
  result.q = {};
  result.mean_target = m;
  result.residual = residual_l1(Recombinator(RecombinatorSpec::takahata(N)),
                                result.distribution);
  return result;
}

FixedPointResult solve_numeric(double q, double m, std::size_t N, double tol,
                               std::size_t max_iter) {
  if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
  const Recombinator recomb(RecombinatorSpec::general_q(q, N));

  Distribution p = analytic_random(m, N).distribution;
  double tv = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    Distribution next = recomb(p);
    tv = tv_distance(next, p);
    p = std::move(next);
    if (tv < tol) {
      FixedPointResult result;
      result.distribution = std::move(p);
      result.q = q;
      result.mean_target = m;
      result.residual = residual_l1(recomb, result.distribution);
      result.provenance = FixedPointResult::Provenance::iterative;
      result.iterations = it;
      return result;
    }
  }

  FixedPointResult best;
  best.distribution = p;
  best.q = q;
  best.mean_target = m;
  best.residual = residual_l1(recomb, best.distribution);
  best.provenance = FixedPointResult::Provenance::iterative;
  best.iterations = max_iter;
  std::ostringstream msg;
  msg << "no fixed point within " << max_iter << " iterations (last step "
      << tv << ", tol " << tol << ")";
  throw NotConverged(msg.str(), std::move(best));
}

double reversibility_residual(const Distribution& p, const KernelQ& kernel,
                              std::size_t window) {
  double worst = 0.0;
  for (std::size_t n = 0; n <= window; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      const std::size_t l = n - k;
      const double pkl = p.at(k) * p.at(l);
      for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t j = n - i;
        const double forward = kernel.transition(i, j, k, l) * pkl;
        const double backward = kernel.transition(k, l, i, j) * p.at(i) * p.at(j);
        worst = std::max(worst, std::abs(forward - backward));
      }
    }
  }
  return worst;
}

bool monotonicity_check(const Distribution& p, double q, double qprime,
                        std::size_t K) {
  if (q > qprime) throw InvalidParameter("monotonicity check requires q <= q'");
  const std::size_t cap = 2 * p.support_max() + 1;
  const KernelQ lo(q), hi(qprime);
  const Distribution plo = apply_general(lo, p, cap, 1.0);
  const Distribution phi = apply_general(hi, p, cap, 1.0);
  const CoeffVector alo = coeffs_from_distribution(plo, K);
  const CoeffVector ahi = coeffs_from_distribution(phi, K);
  for (std::size_t j = 0; j <= K; ++j) {
    if (alo.at(j) > ahi.at(j) + 1e-10) return false;
  }
  return true;
}

}  // namespace uc
