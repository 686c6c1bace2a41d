#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace dwsim {

// One input symbol stream as a receiver sees it: Y = sum coeff * S + N with S
// uniform over `points`. Message slots carry information; the rest is dither.
struct MixtureSlot {
  double coeff = 0.0;
  std::vector<double> points;
  bool is_message = false;
};

struct QuadratureOptions {
  double tol_bits = 1e-3;     // absolute target per entropy integral
  double pad_sigmas = 8.0;    // integration beyond the extreme means
  int max_refinements = 8;    // grid halvings before giving up
  double merge_rel_eps = 1e-9;
  std::size_t max_components = std::size_t(8e6);
};

namespace detail {

// sorted-in-place merge of means closer than eps; weights accumulate and the
// representative is the weighted average, so the mixture barely moves
inline void merge_close_means(std::vector<double>& means, std::vector<double>& weights,
                              double eps) {
  std::vector<std::size_t> order(means.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return means[a] < means[b]; });

  std::vector<double> out_m, out_w;
  out_m.reserve(means.size());
  out_w.reserve(means.size());
  for (std::size_t idx : order) {
    if (!out_m.empty() && means[idx] - out_m.back() <= eps) {
      const double w = out_w.back() + weights[idx];
      out_m.back() = (out_m.back() * out_w.back() + means[idx] * weights[idx]) / w;
      out_w.back() = w;
    } else {
      out_m.push_back(means[idx]);
      out_w.push_back(weights[idx]);
    }
  }
  means = std::move(out_m);
  weights = std::move(out_w);
}

// output mean list of sum coeff*S over the chosen slots, built by iterated
// convolution with duplicate merging (alignments collapse the product space)
inline void accumulate_means(std::span<const MixtureSlot> slots, bool messages_too,
                             const QuadratureOptions& opt, std::vector<double>& means,
                             std::vector<double>& weights) {
  means = {0.0};
  weights = {1.0};
  for (const auto& slot : slots) {
    if (slot.points.empty())
      throw std::invalid_argument("mi_mixture: slot with empty point set");
    if (!messages_too && slot.is_message) continue;  // conditioned on; shifts cancel
    if (slot.coeff == 0.0) continue;
    if (slot.points.size() == 1) {
      const double shift = slot.coeff * slot.points.front();
      for (double& m : means) m += shift;
      continue;
    }
    if (means.size() > opt.max_components / slot.points.size())
      throw std::invalid_argument("mi_mixture: mixture too large to enumerate");
    std::vector<double> nm;
    std::vector<double> nw;
    nm.reserve(means.size() * slot.points.size());
    nw.reserve(means.size() * slot.points.size());
    const double pw = 1.0 / double(slot.points.size());
    for (std::size_t i = 0; i < means.size(); ++i)
      for (double pt : slot.points) {
        nm.push_back(means[i] + slot.coeff * pt);
        nw.push_back(weights[i] * pw);
      }
    double scale = 1.0;
    for (double m : nm) scale = std::max(scale, std::abs(m));
    merge_close_means(nm, nw, opt.merge_rel_eps * scale);
    means = std::move(nm);
    weights = std::move(nw);
  }
}

}  // namespace detail

// Differential entropy (bits) of sum w_i Normal(m_i, noise_var), by composite
// Simpson quadrature refined until two resolutions agree within tol/2.
// Means must be sorted ascending. Components farther than the window from the
// evaluation point are dropped; at 8+ sigma their mass is below double
// precision relative to the rest.
inline double mixture_entropy_bits(std::span<const double> means, std::span<const double> weights,
                                   double noise_var, const QuadratureOptions& opt = {}) {
  if (!(noise_var > 0.0))
    throw std::invalid_argument("mixture_entropy_bits: noise variance must be positive");
  if (means.empty() || means.size() != weights.size())
    throw std::invalid_argument("mixture_entropy_bits: bad mean/weight lists");
  if (!std::is_sorted(means.begin(), means.end()))
    throw std::invalid_argument("mixture_entropy_bits: means must be sorted");

  const double sigma = std::sqrt(noise_var);
  const double window = (opt.pad_sigmas + 0.5) * sigma;
  const double lo = means.front() - opt.pad_sigmas * sigma;
  const double hi = means.back() + opt.pad_sigmas * sigma;
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * 3.14159265358979323846));
  const double inv2var = 0.5 / noise_var;
  const double log2e = 1.4426950408889634074;

  // -f log2 f at the grid nodes; nodes ascend so the active component window
  // slides monotonically
  auto simpson = [&](std::size_t intervals) {
    const double h = (hi - lo) / double(intervals);
    std::size_t first = 0, last = 0;  // window [first, last)
    double acc = 0.0;
    for (std::size_t i = 0; i <= intervals; ++i) {
      const double y = lo + h * double(i);
      while (first < means.size() && means[first] < y - window) ++first;
      if (last < first) last = first;
      while (last < means.size() && means[last] <= y + window) ++last;
      double f = 0.0;
      for (std::size_t k = first; k < last; ++k) {
        const double d = y - means[k];
        f += weights[k] * std::exp(-d * d * inv2var);
      }
      f *= norm;
      const double g = f > 0.0 ? -f * std::log(f) * log2e : 0.0;
      const double coeff = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += coeff * g;
    }
    return acc * h / 3.0;
  };

  // start near sigma/2 node spacing
  std::size_t n = std::size_t(std::ceil((hi - lo) / (sigma / 2.0)));
  n = std::max<std::size_t>(n + (n % 2), 8);
  double prev = simpson(n);
  for (int r = 0; r < opt.max_refinements; ++r) {
    n *= 2;
    const double cur = simpson(n);
    if (std::abs(cur - prev) <= opt.tol_bits / 2.0) return cur;
    prev = cur;
  }
  return prev;
}

// I(messages; Y) for Y = sum_slots coeff * S_slot + N. Exploits that the
// conditional output entropy given the messages does not depend on their
// value (a Gaussian mixture only shifts), so two entropy integrals suffice:
//   I = h(Y) - h(Y | messages fixed).
inline double mi_mixture(std::span<const MixtureSlot> slots, double noise_var,
                         const QuadratureOptions& opt = {}) {
  if (!(noise_var > 0.0)) throw std::invalid_argument("mi_mixture: noise variance must be positive");

  bool informative = false;
  for (const auto& s : slots) {
    if (s.points.empty()) throw std::invalid_argument("mi_mixture: slot with empty point set");
    if (!s.is_message || s.coeff == 0.0) continue;
    auto distinct = s.points;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() > 1) informative = true;
  }
  if (!informative) return 0.0;

  std::vector<double> means, weights;
  detail::accumulate_means(slots, true, opt, means, weights);
  const double h_full = mixture_entropy_bits(means, weights, noise_var, opt);
  detail::accumulate_means(slots, false, opt, means, weights);
  const double h_cond = mixture_entropy_bits(means, weights, noise_var, opt);
  return std::max(0.0, h_full - h_cond);
}

}  // namespace dwsim
