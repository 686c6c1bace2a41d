#pragma once

#include <cstdint>
#include <cmath>

namespace dwsim {

namespace detail {

// SplitMix64 finalizer; full-avalanche bijection on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace detail

// Counter-keyed pseudorandom stream. A stream is derived by hashing a master
// seed together with up to three indices (trial, channel use, ...), so
// substreams can be consumed in any order or in parallel and still produce
// the same draws. Within a stream the generator is SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t key) noexcept : state_(key) {}

  static Rng stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0,
                    std::uint64_t c = 0) noexcept {
    std::uint64_t k = detail::mix64(seed + detail::kGolden);
    k = detail::mix64(k ^ (a + detail::kGolden));
    k = detail::mix64(k ^ (b + detail::kGolden));
    k = detail::mix64(k ^ (c + detail::kGolden));
    return Rng(k);
  }

  std::uint64_t next_u64() noexcept {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() noexcept { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  // Uniform on {0, ..., n-1}.
  int index(int n) noexcept { return int(next_u64() % std::uint64_t(n)); }

  double sign() noexcept { return (next_u64() & 1u) ? 1.0 : -1.0; }

  // Standard normal via Box-Muller; consumes two uniforms per call.
  double normal() noexcept {
    double u1 = uniform();
    double u2 = uniform();
    // guard the log against u1 == 0
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace dwsim
