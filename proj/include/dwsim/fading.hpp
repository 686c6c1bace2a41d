#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace dwsim {

// One realization of the relay-to-receivers fading. h are the gains toward
// the legitimate destination, g toward the eavesdropper. Magnitudes live in
// [1/L, L] with L > 1, so every gain is bounded away from zero.
struct FadingState {
  std::vector<double> h;
  std::vector<double> g;
  double support_bound = 2.0;  // L

  int relays() const { return int(h.size()); }
};

// Draws each gain independently: magnitude log-uniform on [1/L, L], sign
// uniform. Log-uniform keeps the magnitude distribution symmetric around 1
// on the ratio scale, which is the natural scale for gain products.
inline FadingState sample_fading(Rng& rng, double support_bound = 2.0, int relays = 2) {
  if (!(support_bound > 1.0))
    throw std::invalid_argument("sample_fading: support bound must exceed 1");
  if (relays < 2) throw std::invalid_argument("sample_fading: need at least two relays");

  const double log_l = std::log(support_bound);
  auto draw = [&] { return rng.sign() * std::exp(rng.uniform(-log_l, log_l)); };

  FadingState f;
  f.support_bound = support_bound;
  f.h.resize(relays);
  f.g.resize(relays);
  for (int k = 0; k < relays; ++k) f.h[k] = draw();
  for (int k = 0; k < relays; ++k) f.g[k] = draw();
  return f;
}

struct MacOutput {
  double dest;  // received by the legitimate destination
  double eve;   // received by the eavesdropper
};

// Linear multiple-access front end: each receiver sees the gain-weighted sum
// of the relay inputs plus its own unit-variance noise sample.
inline MacOutput mac_output(const FadingState& f, std::span<const double> x,
                            double noise_dest = 0.0, double noise_eve = 0.0) {
  if (x.size() != f.h.size())
    throw std::invalid_argument("mac_output: input count does not match relay count");
  double y1 = noise_dest, y2 = noise_eve;
  for (std::size_t k = 0; k < x.size(); ++k) {
    y1 += f.h[k] * x[k];
    y2 += f.g[k] * x[k];
  }
  return {y1, y2};
}

struct DetOutput {
  long long dest;
  long long eve;
};

// Deterministic integer front end used by the single-letter entropy probes:
// noise is dropped and each gain-weighted term is floored before summing.
// Inputs must be integers in {0, ..., floor(sqrt(p_max))}.
inline long long det_input_max(double p_max) {
  if (!(p_max >= 1.0)) throw std::invalid_argument("det_input_max: p_max must be >= 1");
  return static_cast<long long>(std::floor(std::sqrt(p_max)));
}

inline DetOutput det_output(const FadingState& f, std::span<const long long> x, double p_max) {
  if (x.size() != f.h.size())
    throw std::invalid_argument("det_output: input count does not match relay count");
  const long long x_max = det_input_max(p_max);
  long long y1 = 0, y2 = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] < 0 || x[k] > x_max)
      throw std::invalid_argument("det_output: input outside {0..floor(sqrt(p_max))}");
    y1 += static_cast<long long>(std::floor(f.h[k] * double(x[k])));
    y2 += static_cast<long long>(std::floor(f.g[k] * double(x[k])));
  }
  return {y1, y2};
}

}  // namespace dwsim
