#include "uc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uc {

namespace {

void check_entries(std::vector<double>& values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] < -kNegativeTol) {
      std::ostringstream msg;
      msg << "negative mass " << values[k] << " at index " << k;
      throw NegativeMass(msg.str());
    }
    if (values[k] < 0.0) values[k] = 0.0;  // roundoff-level negatives
  }
}

double sum_of(const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

}  // namespace

Distribution Distribution::from_values(std::vector<double> values) {
  if (values.empty()) throw NotNormalized("empty distribution");
  check_entries(values);
  const double s = sum_of(values);
  if (std::abs(s - 1.0) > kNormTolInput) {
    std::ostringstream msg;
    msg << "mass sums to " << s << ", expected 1";
    throw NotNormalized(msg.str());
  }
  return Distribution(std::move(values), 0.0);
}

Distribution Distribution::with_tail(std::vector<double> values, double tail_mass) {
  if (values.empty()) throw NotNormalized("empty distribution");
  check_entries(values);
  if (tail_mass < -kNegativeTol) throw NegativeMass("negative tail mass");
  if (tail_mass < 0.0) tail_mass = 0.0;
  const double s = sum_of(values) + tail_mass;
  if (std::abs(s - 1.0) > kNormTolInput) {
    std::ostringstream msg;
    msg << "mass plus tail sums to " << s << ", expected 1";
    throw NotNormalized(msg.str());
  }
  return Distribution(std::move(values), tail_mass);
}

Distribution Distribution::unchecked(std::vector<double> values, double tail_mass) {
  if (values.empty()) values.push_back(0.0);
  return Distribution(std::move(values), tail_mass);
}

Distribution Distribution::point_mass(std::size_t k) {
  std::vector<double> v(k + 1, 0.0);
  v[k] = 1.0;
  return Distribution(std::move(v), 0.0);
}

double Distribution::mass() const noexcept { return sum_of(values_); }

std::size_t Distribution::support_min() const noexcept {
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (values_[k] != 0.0) return k;
  return 0;
}

std::size_t Distribution::support_max() const noexcept {
  for (std::size_t k = values_.size(); k-- > 0;)
    if (values_[k] != 0.0) return k;
  return 0;
}

double tv_distance(const Distribution& p, const Distribution& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double d = 0.0;
  for (std::size_t k = 0; k < n; ++k) d += std::abs(p.at(k) - q.at(k));
  return d;
}

double mean(const Distribution& p) {
  double m = 0.0;
  const auto& v = p.values();
  for (std::size_t k = 0; k < v.size(); ++k) m += static_cast<double>(k) * v[k];
  return m;
}

double centered_moment(const Distribution& p, double s, double m) {
  double acc = 0.0;
  const auto& v = p.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0.0) continue;
    acc += std::pow(std::abs(static_cast<double>(k) - m), s) * v[k];
  }
  return acc;
}

double centered_moment(const Distribution& p, double s) {
  return centered_moment(p, s, mean(p));
}

MomentReport moment_report(const Distribution& p, double r) {
  const double m = mean(p);
  return MomentReport{m, centered_moment(p, 1.0, m), centered_moment(p, r, m), r};
}

}  // namespace uc
