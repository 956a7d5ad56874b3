#include "uc/testgen.hpp"

#include <cmath>

#include "uc/errors.hpp"

namespace uc::testgen {

Distribution random_distribution(Rng& rng, std::size_t max_support,
                                 double decay) {
  std::vector<double> v(max_support + 1, 0.0);
  double envelope = 1.0;
  double sum = 0.0;
  for (std::size_t k = 0; k <= max_support; ++k) {
    v[k] = rng.uniform(0.05, 1.0) * envelope;
    sum += v[k];
    envelope *= decay;
  }
  for (double& x : v) x /= sum;
  return Distribution::unchecked(std::move(v), 0.0);
}

Distribution random_with_mean(Rng& rng, std::size_t max_support,
                              double target_mean) {
  if (!(target_mean >= 0.0 &&
        target_mean <= static_cast<double>(max_support)))
    throw InvalidParameter("target mean outside [0, max_support]");

  const Distribution base = random_distribution(rng, max_support);
  const double mu = mean(base);

  // Mix with a point mass at 0 (to lower the mean) or at the top of the
  // window (to raise it); the mixture weight pins the mean exactly.
  std::size_t anchor;
  double lambda;
  if (mu >= target_mean) {
    anchor = 0;
    lambda = (mu == 0.0) ? 1.0 : target_mean / mu;
  } else {
    anchor = max_support;
    const double top = static_cast<double>(max_support);
    lambda = (top - target_mean) / (top - mu);
  }

  std::vector<double> v(max_support + 1, 0.0);
  for (std::size_t k = 0; k <= max_support; ++k) v[k] = lambda * base.at(k);
  v[anchor] += 1.0 - lambda;
  return Distribution::unchecked(std::move(v), 0.0);
}

CoeffVector random_coeffs(Rng& rng, double alpha, double delta, std::size_t K,
                          double gamma) {
  CoeffVector a;
  a.gamma = gamma;
  a.delta = delta;
  a.values.assign(K + 1, 0.0);
  a.values[0] = 1.0;
  if (K >= 1) a.values[1] = alpha;
  double bound = delta;
  for (std::size_t k = 2; k <= K; ++k) {
    bound *= delta;
    a.values[k] = rng.uniform() * bound;
  }
  return a;
}

}  // namespace uc::testgen
