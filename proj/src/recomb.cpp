#include "uc/recomb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uc {

namespace {

double abs_norm(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) s += std::abs(v);
  return s;
}

std::size_t last_nonzero(std::span<const double> p) {
  for (std::size_t k = p.size(); k-- > 0;)
    if (p[k] != 0.0) return k;
  return 0;
}

std::size_t first_nonzero(std::span<const double> p) {
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != 0.0) return k;
  return 0;
}

RawApply truncate_to(std::vector<double> out, std::size_t out_cap) {
  double leak = 0.0;
  if (out.size() > out_cap) {
    for (std::size_t i = out_cap; i < out.size(); ++i) leak += out[i];
    out.resize(out_cap);
  }
  return RawApply{std::move(out), leak};
}

void trim_trailing_zeros(std::vector<double>& v) {
  while (v.size() > 1 && v.back() == 0.0) v.pop_back();
}

Distribution finish_step(const Distribution& p, RawApply raw,
                         double leak_threshold) {
  const double tail = p.tail_mass() + raw.leak;
  if (tail > leak_threshold) {
    std::ostringstream msg;
    msg << "truncation leak " << tail << " exceeds threshold " << leak_threshold;
    throw LeakExceeded(msg.str());
  }
  trim_trailing_zeros(raw.values);
  return Distribution::unchecked(std::move(raw.values), tail);
}

}  // namespace

RawApply apply_general_raw(const KernelQ& kernel, std::span<const double> p,
                           std::size_t out_cap) {
  const double norm = abs_norm(p);
  if (norm == 0.0) return RawApply{std::vector<double>(1, 0.0), 0.0};
  const double q = kernel.q();
  const std::size_t s = last_nonzero(p);

  // Group pairs (k,l) by total n = k+l and pair minimum u = min(k,l); the
  // kernel value depends only on u and the outcome minimum v = min(i, n-i):
  //   T = C(u,n) (1 + min(u,v)) q^max(0, u-v).
  // For each n the outcome weights split as
  //   h(v) = sum_{u<=v} g(u)(1+u) + (1+v) sum_{u>v} g(u) q^(u-v),
  // a prefix sum plus a suffix recurrence, giving O(n) work per total.
  std::vector<double> out(2 * s + 1, 0.0);
  std::vector<double> g, suffix, h;
  for (std::size_t n = 0; n <= 2 * s; ++n) {
    const std::size_t umax = n / 2;
    g.assign(umax + 1, 0.0);
    const auto& c_row = kernel.norm_constants(n);
    bool any = false;
    for (std::size_t u = (n > s ? n - s : 0); u <= umax; ++u) {
      const double pu = p[u];
      const double pv = p[n - u];
      if (pu == 0.0 || pv == 0.0) continue;
      const double mult = (2 * u < n) ? 2.0 : 1.0;
      g[u] = mult * pu * pv * c_row[u] / norm;
      any = true;
    }
    if (!any) continue;

    suffix.assign(umax + 1, 0.0);
    for (std::size_t v = umax; v-- > 0;)
      suffix[v] = q * (g[v + 1] + suffix[v + 1]);

    h.assign(umax + 1, 0.0);
    double prefix = 0.0;
    for (std::size_t v = 0; v <= umax; ++v) {
      prefix += g[v] * (1.0 + static_cast<double>(v));
      h[v] = prefix + (1.0 + static_cast<double>(v)) * suffix[v];
    }

    for (std::size_t i = 0; i <= n; ++i) out[i] += h[std::min(i, n - i)];
  }
  return truncate_to(std::move(out), out_cap);
}

RawApply apply_internal_raw(std::span<const double> p, std::size_t out_cap) {
  const double norm = abs_norm(p);
  if (norm == 0.0) return RawApply{std::vector<double>(1, 0.0), 0.0};
  const std::size_t lo = first_nonzero(p);
  const std::size_t hi = last_nonzero(p);

  // Outcomes are uniform on the band [min(k,l), max(k,l)], so the support
  // stays inside [lo, hi]. Same per-total grouping as the general kernel,
  // with the band structure reducing h(v) to a pure prefix sum.
  std::vector<double> out(hi + 1, 0.0);
  std::vector<double> prefix;
  for (std::size_t n = 2 * lo; n <= 2 * hi; ++n) {
    const std::size_t ustart = std::max(lo, n > hi ? n - hi : 0);
    const std::size_t uend = n / 2;
    if (ustart > uend) continue;
    prefix.assign(uend - ustart + 1, 0.0);
    double acc = 0.0;
    bool any = false;
    for (std::size_t u = ustart; u <= uend; ++u) {
      const double pu = p[u];
      const double pv = p[n - u];
      if (pu != 0.0 && pv != 0.0) {
        const double mult = (2 * u < n) ? 2.0 : 1.0;
        acc += mult * pu * pv /
               (static_cast<double>(n - 2 * u + 1) * norm);
        any = true;
      }
      prefix[u - ustart] = acc;
    }
    if (!any) continue;
    for (std::size_t i = ustart; i <= n - ustart; ++i) {
      const std::size_t v = std::min(i, n - i);
      out[i] += prefix[std::min(v, uend) - ustart];
    }
  }
  return truncate_to(std::move(out), out_cap);
}

std::vector<double> fragment_raw(std::span<const double> p) {
  const std::size_t s = p.empty() ? 0 : last_nonzero(p);
  std::vector<double> pi(s + 1, 0.0);
  double acc = 0.0;
  for (std::size_t k = s + 1; k-- > 0;) {
    acc += (k < p.size() ? p[k] : 0.0) / static_cast<double>(k + 1);
    pi[k] = acc;
  }
  return pi;
}

RawApply apply_random_raw(std::span<const double> p, std::size_t out_cap) {
  const double norm = abs_norm(p);
  if (norm == 0.0) return RawApply{std::vector<double>(1, 0.0), 0.0};
  const std::vector<double> pi = fragment_raw(p);
  const std::size_t s = pi.size() - 1;

  std::vector<double> out(2 * s + 1, 0.0);
  for (std::size_t a = 0; a <= s; ++a) {
    if (pi[a] == 0.0) continue;
    for (std::size_t b = 0; b <= s; ++b) out[a + b] += pi[a] * pi[b];
  }
  for (double& v : out) v /= norm;
  return truncate_to(std::move(out), out_cap);
}

RawApply apply_takahata_raw(std::span<const double> p, std::size_t out_cap) {
  const double norm = abs_norm(p);
  if (norm == 0.0) return RawApply{std::vector<double>(1, 0.0), 0.0};
  const std::size_t s = last_nonzero(p);

  // Pair-total masses, then uniform redistribution over 0..n per total.
  std::vector<double> totals(2 * s + 1, 0.0);
  for (std::size_t k = 0; k <= s; ++k) {
    if (p[k] == 0.0) continue;
    for (std::size_t l = 0; l <= s; ++l) totals[k + l] += p[k] * p[l];
  }
  std::vector<double> out(2 * s + 1, 0.0);
  double acc = 0.0;
  for (std::size_t i = 2 * s + 1; i-- > 0;) {
    acc += totals[i] / static_cast<double>(i + 1);
    out[i] = acc / norm;
  }
  return truncate_to(std::move(out), out_cap);
}

Distribution apply_general(const KernelQ& kernel, const Distribution& p,
                           std::size_t truncation, double leak_threshold) {
  return finish_step(p, apply_general_raw(kernel, p.values(), truncation + 1),
                     leak_threshold);
}

Distribution apply_internal(const Distribution& p) {
  return finish_step(p, apply_internal_raw(p.values(), p.size()), 1.0);
}

Distribution fragment_measure(const Distribution& p) {
  auto pi = fragment_raw(p.values());
  trim_trailing_zeros(pi);
  return Distribution::unchecked(std::move(pi), p.tail_mass());
}

Distribution apply_random(const Distribution& p, std::size_t truncation,
                          double leak_threshold) {
  return finish_step(p, apply_random_raw(p.values(), truncation + 1),
                     leak_threshold);
}

Distribution apply_takahata(const Distribution& p, std::size_t truncation,
                            double leak_threshold) {
  return finish_step(p, apply_takahata_raw(p.values(), truncation + 1),
                     leak_threshold);
}

Recombinator::Recombinator(RecombinatorSpec spec) : spec_(spec) {
  if (spec_.variant == RecombinatorSpec::Variant::general) {
    if (!(spec_.q >= 0.0 && spec_.q <= 1.0))
      throw InvalidParameter("q outside [0,1]");
    if (spec_.q != 0.0 && spec_.q != 1.0) kernel_.emplace(spec_.q);
  }
}

RawApply Recombinator::step_raw(std::span<const double> p,
                                std::size_t out_cap) const {
  using V = RecombinatorSpec::Variant;
  switch (spec_.variant) {
    case V::internal:
      return apply_internal_raw(p, out_cap);
    case V::random:
      return apply_random_raw(p, out_cap);
    case V::takahata:
      return apply_takahata_raw(p, out_cap);
    case V::general:
      break;
  }
  // Closed forms are cheaper and agree with the general kernel at the
  // parameter extremes.
  if (spec_.q == 0.0) return apply_internal_raw(p, out_cap);
  if (spec_.q == 1.0) return apply_random_raw(p, out_cap);
  return apply_general_raw(*kernel_, p, out_cap);
}

Distribution Recombinator::operator()(const Distribution& p) const {
  return finish_step(p, step_raw(p.values(), spec_.truncation + 1),
                     spec_.leak_threshold);
}

}  // namespace uc
