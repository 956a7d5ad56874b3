#include "uc/genfunc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uc/errors.hpp"

namespace uc {

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0 / 3.0))
    throw InvalidParameter("gamma must lie strictly inside (0, 1/3)");
}

double resolve_delta(double delta, std::span<const double> values) {
  if (delta == 0.0) return estimate_delta(values);
  if (!(delta > 0.0)) throw InvalidParameter("delta must be positive");
  return delta;
}

}  // namespace

double estimate_delta(std::span<const double> values) {
  double d = 1.0;
  for (std::size_t k = 2; k < values.size(); ++k) {
    if (values[k] > 0.0)
      d = std::max(d, std::pow(values[k], 1.0 / static_cast<double>(k)));
  }
  return d;
}

CoeffVector coeffs_from_distribution(const Distribution& p, std::size_t K,
                                     double gamma, double delta) {
  check_gamma(gamma);
  const auto& v = p.values();
  const std::size_t s = p.support_max();

  std::vector<double> a(K + 1, 0.0);
  for (std::size_t k = 0; k <= K; ++k) {
    double binom = 1.0;  // binom(k, k)
    double acc = 0.0;
    for (std::size_t l = k; l <= s; ++l) {
      acc += binom * v[l];
      binom *= static_cast<double>(l + 1) / static_cast<double>(l + 1 - k);
      if (!std::isfinite(binom))
        throw OverflowError("binomial accumulation overflow; reduce K or support");
    }
    if (!std::isfinite(acc))
      throw OverflowError("coefficient accumulation overflow");
    a[k] = acc / static_cast<double>(k + 1);
  }

  // a_0 is the stored mass; normalize so that a_0 = 1 exactly (coefficients
  // of the distribution conditioned on the truncation window).
  const double mass = a[0];
  if (!(mass > 0.0) || std::abs(mass - 1.0) > 1e-6)
    throw NotNormalized("distribution mass too far from 1 for coefficients");
  for (double& x : a) x /= mass;
  a[0] = 1.0;

  CoeffVector out;
  out.gamma = gamma;
  out.delta = resolve_delta(delta, a);
  out.values = std::move(a);
  return out;
}

Distribution distribution_from_coeffs(const CoeffVector& a, std::size_t N) {
  const std::size_t K = a.size() == 0 ? 0 : a.size() - 1;
  std::vector<double> p(N + 1, 0.0);
  for (std::size_t k = 0; k <= N; ++k) {
    double binom = 1.0;  // binom(k, k)
    double acc = 0.0;
    double prev_tail = 0.0, last_tail = 0.0;
    std::size_t terms = 0;
    for (std::size_t l = k; l <= K; ++l) {
      const double t =
          binom * static_cast<double>(l + 1) * a.values[l];
      acc += ((l - k) % 2 == 0) ? t : -t;
      binom *= static_cast<double>(l + 1) / static_cast<double>(l + 1 - k);
      if (!std::isfinite(binom) || !std::isfinite(acc))
        throw OverflowError("inversion accumulation overflow");
      // Track the envelope of the trailing terms in two half-windows.
      ++terms;
      if (K - l < 6) {
        if (K - l < 3)
          last_tail = std::max(last_tail, std::abs(t));
        else
          prev_tail = std::max(prev_tail, std::abs(t));
      }
    }
    if (terms >= 6 && last_tail > prev_tail && last_tail > 1e-12) {
      std::ostringstream msg;
      msg << "inversion tail not decreasing at k = " << k << " (last "
          << last_tail << " vs " << prev_tail << ")";
      throw DivergentInversion(msg.str());
    }
    if (acc < 0.0 && acc >= -1e-9) acc = 0.0;  // alternating-series roundoff
    p[k] = acc;
  }

  double sum = 0.0;
  for (double x : p) sum += x;
  const double tail = std::max(0.0, 1.0 - sum);
  return Distribution::with_tail(std::move(p), tail);
}

CoeffVector induced_recombinator(const CoeffVector& a) {
  const std::size_t K = a.size() == 0 ? 0 : a.size() - 1;
  CoeffVector out;
  out.gamma = a.gamma;
  out.delta = a.delta;
  out.values.assign(K + 1, 0.0);
  for (std::size_t k = 0; k <= K; ++k) {
    double acc = 0.0;
    for (std::size_t n = 0; n <= k; ++n) acc += a.values[n] * a.values[k - n];
    out.values[k] = acc / static_cast<double>(k + 1);
  }
  if (!a.values.empty() && a.values[0] == 1.0) {
    out.values[0] = 1.0;
    if (K >= 1) out.values[1] = a.values[1];
  }
  return out;
}

double weighted_metric(const CoeffVector& a, const CoeffVector& b) {
  if (a.gamma != b.gamma || a.delta != b.delta)
    throw ParamMismatch("coefficient vectors carry different gamma or delta");
  const double ratio = a.gamma / a.delta;
  const std::size_t n = std::max(a.size(), b.size());
  double d = 0.0;
  double w = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    d += w * std::abs(a.at(k) - b.at(k));
    w *= ratio;
  }
  return d;
}

bool membership(const CoeffVector& a) {
  if (a.size() == 0 || a.values[0] != 1.0) return false;
  double bound = a.delta;
  for (std::size_t k = 2; k < a.size(); ++k) {
    bound *= a.delta;
    if (a.values[k] < 0.0 || a.values[k] > bound) return false;
  }
  return true;
}

CoeffVector fixed_coeffs_recursion(double alpha, std::size_t K, double gamma,
                                   double delta) {
  check_gamma(gamma);
  CoeffVector out;
  out.gamma = gamma;
  out.values.assign(K + 1, 0.0);
  out.values[0] = 1.0;
  if (K >= 1) out.values[1] = alpha;
  for (std::size_t k = 2; k <= K; ++k) {
    double acc = 0.0;
    for (std::size_t n = 1; n < k; ++n)
      acc += out.values[n] * out.values[k - n];
    out.values[k] = acc / static_cast<double>(k - 1);
  }
  out.delta = (delta == 0.0) ? std::max(1.0, std::abs(alpha))
                             : resolve_delta(delta, out.values);
  return out;
}

CoeffVector geometric_coeffs(double alpha, std::size_t K, double gamma,
                             double delta) {
  check_gamma(gamma);
  CoeffVector out;
  out.gamma = gamma;
  out.values.assign(K + 1, 0.0);
  double x = 1.0;
  for (std::size_t k = 0; k <= K; ++k) {
    out.values[k] = x;
    x *= alpha;
  }
  out.delta = (delta == 0.0) ? std::max(1.0, std::abs(alpha)) : delta;
  return out;
}

}  // namespace uc
