#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "fading.hpp"
#include "mutual_info.hpp"
#include "rng.hpp"
#include "schemes.hpp"

namespace dwsim {

namespace detail {

inline constexpr std::uint64_t kFadeStream = 1;
inline constexpr std::uint64_t kTrialStream = 2;

// Index-parallel loop; every index writes only its own slot, so results are
// identical for any thread count. The first worker exception is rethrown.
template <class F>
void parallel_for(std::size_t n, int threads, F&& fn) {
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (std::size_t(threads) > n) threads = int(n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(threads - 1));
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

struct SimOptions {
  double support_bound = 2.0;
  QuadratureOptions quad;
  int threads = 0;            // 0 = hardware concurrency
  bool fixed_fading = false;  // pin every evaluation to fade stream 0
  int trials_per_fade = 128;  // error-rate trials sharing one fade draw
};

struct SimRecord {
  Scheme scheme = Scheme::Coj;
  double power = 0.0;
  double delta = 0.0;
  double support_bound = 2.0;
  int n_fades = 0;
  long long n_trials = 0;
  double i_dest = 0.0;   // bits/use at the destination, fade-averaged
  double i_eve = 0.0;    // leakage bits/use at the eavesdropper
  double rate_lb = 0.0;  // mean of max(0, i_dest - i_eve) per fade
  double ser = 0.0;
};

// The mixture slots a given receiver sees for one fade of a scheme.
inline std::vector<MixtureSlot> receiver_slots(const SchemeStructure& st, bool eavesdropper) {
  std::vector<MixtureSlot> slots;
  slots.reserve(st.slots.size());
  const std::vector<double> pts = st.constellation.points();
  for (const auto& s : st.slots)
    slots.push_back({eavesdropper ? s.eve_coeff : s.dest_coeff, pts, s.is_message});
  return slots;
}

// Exact (quadrature) per-fade mutual informations, averaged over fades drawn
// from per-index streams: the same seed reproduces the same record regardless
// of thread count or evaluation order.
inline SimRecord estimate_rate(Scheme scheme, double power, double delta, int n_fades,
                               std::uint64_t seed, const SimOptions& opt = {}) {
  if (n_fades < 1) throw std::invalid_argument("estimate_rate: need at least one fade");
  const SchemeParams params = scheme_params(scheme, power, delta, opt.support_bound);

  std::vector<double> i_dest(std::size_t(n_fades), 0.0);
  std::vector<double> i_eve(std::size_t(n_fades), 0.0);
  detail::parallel_for(std::size_t(n_fades), opt.threads, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, detail::kFadeStream, opt.fixed_fading ? 0 : i);
    const FadingState f = sample_fading(rng, opt.support_bound, 2);
    const SchemeStructure st = scheme_structure(f, params);
    i_dest[i] = mi_mixture(receiver_slots(st, false), 1.0, opt.quad);
    i_eve[i] = mi_mixture(receiver_slots(st, true), 1.0, opt.quad);
  });

  SimRecord rec;
  rec.scheme = scheme;
  rec.power = power;
  rec.delta = delta;
  rec.support_bound = opt.support_bound;
  rec.n_fades = n_fades;
  for (int i = 0; i < n_fades; ++i) {
    rec.i_dest += i_dest[std::size_t(i)];
    rec.i_eve += i_eve[std::size_t(i)];
    rec.rate_lb += std::max(0.0, i_dest[std::size_t(i)] - i_eve[std::size_t(i)]);
  }
  rec.i_dest /= n_fades;
  rec.i_eve /= n_fades;
  rec.rate_lb /= n_fades;
  return rec;
}

// Monte Carlo symbol error rate of minimum-distance decoding. Trials are
// grouped into blocks that share a fade draw (and hence one decoding
// constellation); symbols and noise are drawn per trial from its own stream.
inline double error_prob_mc(Scheme scheme, double power, double delta, long long trials,
                            std::uint64_t seed, const SimOptions& opt = {}) {
  if (trials < 1) throw std::invalid_argument("error_prob_mc: need at least one trial");
  const SchemeParams params = scheme_params(scheme, power, delta, opt.support_bound);
  const long long block = std::max(1, opt.trials_per_fade);
  const std::size_t n_blocks = std::size_t((trials + block - 1) / block);

  std::vector<long long> errors(n_blocks, 0);
  detail::parallel_for(n_blocks, opt.threads, [&](std::size_t b) {
    Rng fade_rng = Rng::stream(seed, detail::kFadeStream, opt.fixed_fading ? 0 : b);
    const FadingState f = sample_fading(fade_rng, opt.support_bound, 2);
    const SchemeStructure st = scheme_structure(f, params);
    const EffectiveConstellation ec = effective_constellation(st);

    const long long t_begin = static_cast<long long>(b) * block;
    const long long t_end = std::min(trials, t_begin + block);
    std::vector<int> levels(st.slots.size());
    std::vector<double> symbols(st.slots.size());
    long long bad = 0;
    for (long long t = t_begin; t < t_end; ++t) {
      Rng rng = Rng::stream(seed, detail::kTrialStream, std::uint64_t(t));
      for (std::size_t k = 0; k < st.slots.size(); ++k) {
        levels[k] = st.constellation.draw_level(rng);
        symbols[k] = st.constellation.level(levels[k]);
      }
      const RelayInputs in = encode_symbols(f, st, symbols);
      const MacOutput y = mac_output(f, in.x, rng.normal(), rng.normal());
      const auto& decoded = min_distance_decode(y.dest, ec);
      for (std::size_t k = 0; k < st.slots.size(); ++k)
        if (st.slots[k].is_message && decoded.levels[k] != levels[k]) {
          ++bad;
          break;
        }
    }
    errors[b] = bad;
  });

  long long total = 0;
  for (long long e : errors) total += e;
  return double(total) / double(trials);
}

inline SimRecord simulate_point(Scheme scheme, double power, double delta, int n_fades,
                                long long trials, std::uint64_t seed, const SimOptions& opt = {}) {
  SimRecord rec = estimate_rate(scheme, power, delta, n_fades, seed, opt);
  if (trials > 0) {
    rec.ser = error_prob_mc(scheme, power, delta, trials, seed, opt);
    rec.n_trials = trials;
  }
  return rec;
}

// Least-squares fit of rate against the d.o.f. abscissa (1/2) log2 P.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

inline LinearFit fit_dof_line(std::span<const std::pair<double, double>> power_rate) {
  if (power_rate.size() < 3)
    throw std::invalid_argument("fit_dof_line: need at least 3 (P, rate) points");
  double p_min = power_rate.front().first, p_max = p_min;
  for (const auto& [p, r] : power_rate) {
    if (!(p > 0.0)) throw std::invalid_argument("fit_dof_line: powers must be positive");
    p_min = std::min(p_min, p);
    p_max = std::max(p_max, p);
  }
  if (p_max / p_min < 100.0 * (1.0 - 1e-12))
    throw std::invalid_argument("fit_dof_line: powers must span at least two decades");

  double sx = 0.0, sy = 0.0;
  const double n = double(power_rate.size());
  for (const auto& [p, r] : power_rate) {
    sx += 0.5 * std::log2(p);
    sy += r;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [p, r] : power_rate) {
    const double dx = 0.5 * std::log2(p) - mx;
    sxx += dx * dx;
    sxy += dx * (r - my);
  }
  return {sxy / sxx, my - (sxy / sxx) * mx};
}

inline double fit_dof_slope(std::span<const std::pair<double, double>> power_rate) {
  return fit_dof_line(power_rate).slope;
}

}  // namespace dwsim
