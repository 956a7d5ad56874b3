#include "uc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uc {

double weight(double q, std::size_t i, std::size_t j, std::size_t k,
              std::size_t l) {
  if (i + j != k + l) return 0.0;
  const std::size_t uin = std::min(i, j);
  const std::size_t ukl = std::min(k, l);
  const double base = 1.0 + static_cast<double>(std::min(uin, ukl));
  if (ukl <= uin) return base;  // exponent 0, covers 0^0 = 1
  return base * std::pow(q, static_cast<double>(ukl - uin));
}

double takahata_transition(std::size_t i, std::size_t j, std::size_t k,
                           std::size_t l) {
  if (i + j != k + l) return 0.0;
  return 1.0 / static_cast<double>(k + l + 1);
}

KernelQ::KernelQ(double q) : q_(q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    std::ostringstream msg;
    msg << "penalty parameter q = " << q << " outside [0,1]";
    throw InvalidParameter(msg.str());
  }
}

const std::vector<double>& KernelQ::norm_constants(std::size_t total) const {
  std::scoped_lock lock(mutex_);
  auto it = c_rows_.find(total);
  if (it != c_rows_.end()) return it->second;

  // Sum of row weights, grouped by the outcome minimum v = min(i, total-i):
  //   1/C(u) = E(u) + (1+u)(total - 2u + 1),
  //   E(u)   = sum_{v<u} 2 (1+v) q^(u-v),  E(u) = q (E(u-1) + 2u).
  const std::size_t umax = total / 2;
  std::vector<double> row(umax + 1);
  double e = 0.0;
  for (std::size_t u = 0; u <= umax; ++u) {
    if (u > 0) e = q_ * (e + 2.0 * static_cast<double>(u));
    const double inv =
        e + (1.0 + static_cast<double>(u)) *
                static_cast<double>(total - 2 * u + 1);
    row[u] = 1.0 / inv;
  }
  return c_rows_.emplace(total, std::move(row)).first->second;
}

double KernelQ::c_coefficient(std::size_t k, std::size_t l) const {
  return norm_constants(k + l)[std::min(k, l)];
}

double KernelQ::transition(std::size_t i, std::size_t j, std::size_t k,
                           std::size_t l) const {
  if (i + j != k + l) return 0.0;
  return c_coefficient(k, l) * weight(q_, i, j, k, l);
}

KernelQ::RowReport KernelQ::validate_row(std::size_t k, std::size_t l) const {
  const std::size_t n = k + l;
  // Kahan-compensated sums; the mean accumulates terms of size up to n.
  double sum = 0.0, sum_c = 0.0;
  double mn = 0.0, mn_c = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = transition(i, n - i, k, l);
    double y = t - sum_c;
    double s = sum + y;
    sum_c = (s - sum) - y;
    sum = s;
    y = static_cast<double>(i) * t - mn_c;
    s = mn + y;
    mn_c = (s - mn) - y;
    mn = s;
  }
  return RowReport{std::abs(sum - 1.0),
                   std::abs(mn - static_cast<double>(n) / 2.0)};
}

}  // namespace uc
