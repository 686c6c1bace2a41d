#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "fading.hpp"
#include "rng.hpp"

namespace dwsim {

// Finite distribution over integer tuples. Support entries must be distinct.
struct Pmf {
  std::vector<std::vector<int>> support;
  std::vector<double> probs;

  void validate() const {
    if (support.size() != probs.size() || support.empty())
      throw std::invalid_argument("Pmf: support/probability size mismatch");
    double total = 0.0;
    const std::size_t dim = support.front().size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (!(probs[i] >= 0.0)) throw std::invalid_argument("Pmf: negative probability");
      if (support[i].size() != dim) throw std::invalid_argument("Pmf: ragged support tuples");
      total += probs[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("Pmf: probabilities do not sum to 1");
    auto sorted = support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("Pmf: duplicate support tuple");
  }
};

namespace detail {
inline double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }
}  // namespace detail

// Shannon entropy in bits, 0*log 0 = 0.
inline double exact_entropy(const Pmf& p) {
  p.validate();
  double h = 0.0;
  for (double q : p.probs) h += detail::entropy_term(q);
  return h;
}

// Random joint pmf with full product support and symmetric Dirichlet(1)
// weights (normalized unit exponentials), so correlated inputs get covered.
inline Pmf random_joint_pmf(std::span<const int> alphabet_sizes, Rng& rng) {
  std::size_t total = 1;
  for (int n : alphabet_sizes) {
    if (n < 1) throw std::invalid_argument("random_joint_pmf: alphabet size must be >= 1");
    total *= std::size_t(n);
  }
  Pmf p;
  p.support.reserve(total);
  p.probs.reserve(total);
  std::vector<int> tup(alphabet_sizes.size(), 0);
  double sum = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    p.support.push_back(tup);
    double e = -std::log1p(-rng.uniform());  // Exp(1)
    p.probs.push_back(e);
    sum += e;
    for (std::size_t d = tup.size(); d-- > 0;) {
      if (++tup[d] < alphabet_sizes[d]) break;
      tup[d] = 0;
    }
  }
  for (double& q : p.probs) q /= sum;
  return p;
}

// How badly the integer floor map y = floor(g*x) can fail to be injective on
// {0, ..., floor(sqrt(p_max))}: the largest preimage size bounds the
// conditional entropy H(X | floor(gX)) by its log for any input distribution.
struct FloorPreimage {
  int max_multiplicity = 1;
  double entropy_bound_bits = 0.0;
  double uniform_conditional_bits = 0.0;  // H(X | floor(gX)) for uniform X
};

inline FloorPreimage floor_preimage_bound(double g, double p_max, double support_bound = 2.0) {
  if (!(support_bound > 1.0))
    throw std::invalid_argument("floor_preimage_bound: support bound must exceed 1");
  const double mag = std::abs(g);
  if (!(mag >= 1.0 / support_bound && mag <= support_bound))
    throw std::invalid_argument("floor_preimage_bound: gain outside fading support");
  const long long x_max = det_input_max(p_max);

  std::map<long long, int> counts;
  for (long long x = 0; x <= x_max; ++x)
    counts[static_cast<long long>(std::floor(g * double(x)))]++;

  FloorPreimage r;
  const double n = double(x_max + 1);
  double h_cond = 0.0;
  for (const auto& [y, c] : counts) {
    r.max_multiplicity = std::max(r.max_multiplicity, c);
    h_cond += (double(c) / n) * std::log2(double(c));  // uniform within the preimage
  }
  r.entropy_bound_bits = std::log2(double(r.max_multiplicity));
  r.uniform_conditional_bits = h_cond;
  return r;
}

// Single-letter skeleton of the converse argument on the integer model: the
// eavesdropper's output entropy must carry at least the message-conditional
// input entropy minus the floor-map ambiguity,
//   H(Y2) >= H(X1 | X2) - H(X1 | floor(g1 X1)).
struct DetEntropyReport {
  double h_y2 = 0.0;
  double h_x1_given_x2 = 0.0;
  double h_x1_given_gx1 = 0.0;
  double slack = 0.0;
  bool violated = false;
};

inline DetEntropyReport det_entropy_check(const FadingState& f, double p_max, const Pmf& joint) {
  if (f.relays() != 2) throw std::invalid_argument("det_entropy_check: needs exactly 2 relays");
  const long long x_max = det_input_max(p_max);
  if (x_max > 31)
    throw std::invalid_argument("det_entropy_check: alphabet too large for exact enumeration");
  joint.validate();
  if (joint.support.front().size() != 2)
    throw std::invalid_argument("det_entropy_check: joint pmf must be over (x1, x2) pairs");

  std::map<long long, double> y2_dist;
  std::map<int, double> x1_dist, x2_dist;
  std::map<long long, double> gx1_dist;
  double h_joint = 0.0;
  for (std::size_t i = 0; i < joint.support.size(); ++i) {
    const int x1 = joint.support[i][0], x2 = joint.support[i][1];
    if (x1 < 0 || x1 > x_max || x2 < 0 || x2 > x_max)
      throw std::invalid_argument("det_entropy_check: support outside {0..floor(sqrt(p_max))}");
    const double pr = joint.probs[i];
    const long long t1 = static_cast<long long>(std::floor(f.g[0] * double(x1)));
    const long long t2 = static_cast<long long>(std::floor(f.g[1] * double(x2)));
    y2_dist[t1 + t2] += pr;
    x1_dist[x1] += pr;
    x2_dist[x2] += pr;
    gx1_dist[t1] += pr;
    h_joint += detail::entropy_term(pr);
  }

  auto entropy_of = [](const auto& dist) {
    double h = 0.0;
    for (const auto& [k, pr] : dist) h += detail::entropy_term(pr);
    return h;
  };

  DetEntropyReport rep;
  rep.h_y2 = entropy_of(y2_dist);
  rep.h_x1_given_x2 = h_joint - entropy_of(x2_dist);
  // floor(g1 X1) is a function of X1, so H(X1 | floor) = H(X1) - H(floor)
  rep.h_x1_given_gx1 = entropy_of(x1_dist) - entropy_of(gx1_dist);
  rep.slack = rep.h_y2 - (rep.h_x1_given_x2 - rep.h_x1_given_gx1);
  rep.violated = rep.slack < -1e-9;
  return rep;
}

}  // namespace dwsim
