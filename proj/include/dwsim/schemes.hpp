#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fading.hpp"
#include "pam.hpp"
#include "rng.hpp"

namespace dwsim {

// Two-relay transmission schemes. The first three need the eavesdropper's
// gains at the relays; the last three are blind (they read only h).
//   cj          cooperative jamming: each relay masks the other's message
//   mb          message beamforming into the eavesdropper's null space
//   sab         common noise nulled at the destination, messages riding the
//               same coefficient as that noise at the eavesdropper
//   bcj         blind cooperative jamming, message on relay 1
//   bcj_swapped same with the relay roles exchanged
//   coj         relay 1 sends message-plus-noise, relay 2 cancels the noise
enum class Scheme { Cj, Mb, Sab, Bcj, BcjSwapped, Coj };

inline constexpr Scheme kAllSchemes[] = {Scheme::Cj,  Scheme::Mb,         Scheme::Sab,
                                         Scheme::Bcj, Scheme::BcjSwapped, Scheme::Coj};

inline std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Cj: return "cj";
    case Scheme::Mb: return "mb";
    case Scheme::Sab: return "sab";
    case Scheme::Bcj: return "bcj";
    case Scheme::BcjSwapped: return "bcj_swapped";
    case Scheme::Coj: return "coj";
  }
  throw std::invalid_argument("scheme_name: unknown scheme");
}

inline Scheme scheme_from_name(std::string_view name) {
  for (Scheme s : kAllSchemes)
    if (scheme_name(s) == name) return s;
  throw std::invalid_argument("unknown scheme name: " + std::string(name));
}

// Power/constellation parameters of a scheme instance. The spacing/half-width
// pair is derived from (P, delta) so that the symbol log-cardinality carries
// the intended fraction of log P while the worst-case transmit power over the
// fading support stays below P.
struct SchemeParams {
  Scheme scheme = Scheme::Coj;
  double power = 0.0;          // P
  double delta = 0.0;          // rate/robustness trade-off knob in (0,1)
  double support_bound = 2.0;  // L the normalization is computed for
  double gamma = 0.0;          // power-normalization scalar
  PamConstellation constellation;
};

// Worst-case |coefficient| at a relay is scheme-specific; gamma shrinks the
// constellation so that E[x_k^2] <= P holds for every fade in [1/L, L].
inline double scheme_gamma(Scheme s, double support_bound) {
  const double l = support_bound;
  switch (s) {
    case Scheme::Cj: return 1.0 / (std::sqrt(2.0) * l * l * l);
    case Scheme::Mb: return 1.0 / l;
    case Scheme::Sab: return 1.0 / (std::sqrt(5.0) * l * l * l);
    case Scheme::Bcj:
    case Scheme::BcjSwapped:
    case Scheme::Coj: return 1.0 / (std::sqrt(2.0) * l);
  }
  throw std::invalid_argument("scheme_gamma: unknown scheme");
}

inline SchemeParams scheme_params(Scheme s, double power, double delta,
                                  double support_bound = 2.0) {
  if (!(power > 1.0)) throw std::invalid_argument("scheme_params: power must exceed 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("scheme_params: delta must lie in (0,1)");
  if (!(support_bound > 1.0))
    throw std::invalid_argument("scheme_params: support bound must exceed 1");

  SchemeParams p;
  p.scheme = s;
  p.power = power;
  p.delta = delta;
  p.support_bound = support_bound;
  p.gamma = scheme_gamma(s, support_bound);

  // coj trades a denser constellation (exponent (1-delta)/2) against spacing
  // that still grows like P^{delta/2}; the other schemes keep the spacing at
  // gamma*sqrt(P)/Q so the aligned sums stay decodable.
  const bool dense = (s == Scheme::Coj);
  const double exponent = dense ? (1.0 - delta) / 2.0 : (1.0 - delta) / (2.0 * (2.0 + delta));
  const double q_real = std::pow(power, exponent);
  if (!(q_real >= 1.0))
    throw std::invalid_argument("scheme_params: power too small, constellation collapses");
  const int q = int(std::floor(q_real));
  const double a = dense ? p.gamma * std::pow(power, delta / 2.0)
                         : p.gamma * std::sqrt(power) / double(q);
  p.constellation = PamConstellation{a, q};
  return p;
}

// One channel use: the per-relay transmit values together with the symbols
// that produced them (messages first, then dither/noise symbols).
struct RelayInputs {
  std::vector<double> x;
  std::vector<double> messages;
  std::vector<double> noises;
};

namespace detail {
inline void require_two_relays(const FadingState& f, const char* who) {
  if (f.relays() != 2) throw std::invalid_argument(std::string(who) + ": needs exactly 2 relays");
}
inline void require_relay_index(const FadingState& f, int k, const char* who) {
  if (k < 0 || k >= f.relays())
    throw std::invalid_argument(std::string(who) + ": relay index out of range");
}
}  // namespace detail

// Cooperative jamming. Relay k sends its own message plus a jamming symbol;
// jamming aligns across relays at the destination (h1*b1 == h2*b2) while each
// message lands on the other relay's jamming coefficient at the eavesdropper.
inline RelayInputs encode_cj(const FadingState& f, double v1, double v2, double u1, double u2,
                             double s = 1.0) {
  detail::require_two_relays(f, "encode_cj");
  const double b1 = s / f.h[0], b2 = s / f.h[1];
  const double m1 = f.g[1] * s / (f.g[0] * f.h[1]);
  const double m2 = f.g[0] * s / (f.g[1] * f.h[0]);
  return {{m1 * v1 + b1 * u1, m2 * v2 + b2 * u2}, {v1, v2}, {u1, u2}};
}

// Message beamforming: (g2, -g1) is orthogonal to the eavesdropper's channel,
// so the eavesdropper receives exactly zero signal.
inline RelayInputs encode_mb(const FadingState& f, double v, double s = 1.0) {
  detail::require_two_relays(f, "encode_mb");
  return {{s * f.g[1] * v, -s * f.g[0] * v}, {v}, {}};
}

// Simultaneous alignment and beamforming: the common dither u is cancelled at
// the destination (coefficients h2, -h1) and each message coefficient is
// chosen so that v1, v2, u all reach the eavesdropper with the same factor.
inline RelayInputs encode_sab(const FadingState& f, double v1, double v2, double u) {
  detail::require_two_relays(f, "encode_sab");
  const double h1 = f.h[0], h2 = f.h[1], g1 = f.g[0], g2 = f.g[1];
  const double x1 = (h2 - (g2 / g1) * h1) * v1 + h2 * u;
  const double x2 = ((g1 / g2) * h2 - h1) * v2 - h1 * u;
  return {{x1, x2}, {v1, v2}, {u}};
}

// Blind cooperative jamming: no g anywhere. Noise symbols align at the
// destination; the message rides relay 1 (or relay 2 when swapped).
inline RelayInputs encode_bcj(const FadingState& f, double v, double u1, double u2,
                              bool swapped = false, double s = 1.0) {
  detail::require_two_relays(f, "encode_bcj");
  const double b1 = s / f.h[0], b2 = s / f.h[1];
  double x1 = b1 * u1, x2 = b2 * u2;
  if (swapped)
    x2 += b2 * v;
  else
    x1 += b1 * v;
  return {{x1, x2}, {v}, {u1, u2}};
}

// Computation for jamming: relay 1 is handed the precomputed sum v1 + u and
// inverts its own channel; relay 2 cancels the dither at the destination.
inline RelayInputs encode_coj(const FadingState& f, double v1, double u) {
  detail::require_two_relays(f, "encode_coj");
  return {{(v1 + u) / f.h[0], -u / f.h[1]}, {v1}, {u}};
}

// Pairwise generalizations for M relays.

// Every relay k sends its message v_k with coefficient e/g_k, so all M
// messages arrive at the eavesdropper with the common factor e; the dither u
// is carried only by relays i, j with coefficients (h_j, -h_i) that cancel at
// the destination.
inline RelayInputs encode_sab_pair(const FadingState& f, int i, int j, std::span<const double> v,
                                   double u) {
  detail::require_relay_index(f, i, "encode_sab_pair");
  detail::require_relay_index(f, j, "encode_sab_pair");
  if (i >= j) throw std::invalid_argument("encode_sab_pair: need i < j");
  if (int(v.size()) != f.relays())
    throw std::invalid_argument("encode_sab_pair: need one message per relay");
  const double ci = f.h[j], cj = -f.h[i];
  const double e = f.g[i] * ci + f.g[j] * cj;
  RelayInputs r;
  r.x.resize(v.size());
  for (int k = 0; k < f.relays(); ++k) r.x[k] = (e / f.g[k]) * v[k];
  r.x[i] += ci * u;
  r.x[j] += cj * u;
  r.messages.assign(v.begin(), v.end());
  r.noises = {u};
  return r;
}

// Two-relay coj run on relays (i, j); everyone else is silent.
inline RelayInputs encode_coj_pair(const FadingState& f, int i, int j, double v, double u) {
  detail::require_relay_index(f, i, "encode_coj_pair");
  detail::require_relay_index(f, j, "encode_coj_pair");
  if (i >= j) throw std::invalid_argument("encode_coj_pair: need i < j");
  RelayInputs r;
  r.x.assign(std::size_t(f.relays()), 0.0);
  r.x[i] = (v + u) / f.h[i];
  r.x[j] = -u / f.h[j];
  r.messages = {v};
  r.noises = {u};
  return r;
}

// Blind jamming with relay k as the message carrier: every relay sends its
// own noise symbol with coefficient s/h, so all noises (and the message)
// align at the destination; nothing depends on g.
inline RelayInputs encode_bcj_relay(const FadingState& f, int k, double v,
                                    std::span<const double> u, double s = 1.0) {
  detail::require_relay_index(f, k, "encode_bcj_relay");
  if (int(u.size()) != f.relays())
    throw std::invalid_argument("encode_bcj_relay: need one noise symbol per relay");
  RelayInputs r;
  r.x.resize(u.size());
  for (int m = 0; m < f.relays(); ++m) r.x[m] = (s / f.h[m]) * u[m];
  r.x[k] += (s / f.h[k]) * v;
  r.messages = {v};
  r.noises.assign(u.begin(), u.end());
  return r;
}

// Effective single-letter picture of a scheme: every symbol slot contributes
// coeff * symbol to each receiver. The coefficients are the algebraically
// simplified forms the constructions guarantee (cancellations written as an
// exact 0, alignments as the identical expression), which is what decoding
// and the information computations consume; encoder outputs match these to
// floating-point accuracy.
struct SymbolSlot {
  double dest_coeff = 0.0;
  double eve_coeff = 0.0;
  bool is_message = false;
};

struct SchemeStructure {
  Scheme scheme = Scheme::Coj;
  std::vector<SymbolSlot> slots;  // messages first, then noise slots
  PamConstellation constellation;

  int message_count() const {
    int n = 0;
    for (const auto& s : slots) n += s.is_message ? 1 : 0;
    return n;
  }
};

inline SchemeStructure scheme_structure(const FadingState& f, const SchemeParams& p) {
  detail::require_two_relays(f, "scheme_structure");
  const double h1 = f.h[0], h2 = f.h[1], g1 = f.g[0], g2 = f.g[1];
  SchemeStructure st;
  st.scheme = p.scheme;
  st.constellation = p.constellation;
  switch (p.scheme) {
    case Scheme::Cj: {
      // slots: v1, v2, u1, u2; noises share the destination coefficient and
      // each message reuses the opposite noise coefficient at the eavesdropper
      const double ev1 = g2 / h2, ev2 = g1 / h1;
      st.slots = {{g2 * h1 / (g1 * h2), ev1, true},
                  {g1 * h2 / (g2 * h1), ev2, true},
                  {1.0, ev2, false},
                  {1.0, ev1, false}};
      break;
    }
    case Scheme::Mb:
      st.slots = {{h1 * g2 - h2 * g1, 0.0, true}};
      break;
    case Scheme::Sab: {
      const double e = g1 * h2 - g2 * h1;
      st.slots = {{h1 * h2 - (g2 / g1) * h1 * h1, e, true},
                  {(g1 / g2) * h2 * h2 - h1 * h2, e, true},
                  {0.0, e, false}};
      break;
    }
    case Scheme::Bcj: {
      st.slots = {{1.0, g1 / h1, true}, {1.0, g1 / h1, false}, {1.0, g2 / h2, false}};
      break;
    }
    case Scheme::BcjSwapped: {
      st.slots = {{1.0, g2 / h2, true}, {1.0, g1 / h1, false}, {1.0, g2 / h2, false}};
      break;
    }
    case Scheme::Coj:
      st.slots = {{1.0, g1 / h1, true}, {0.0, g1 / h1 - g2 / h2, false}};
      break;
  }
  return st;
}

// Draws one symbol per slot and dispatches to the matching encoder, with the
// slot order fixed by scheme_structure.
inline RelayInputs encode_symbols(const FadingState& f, const SchemeStructure& st,
                                  std::span<const double> symbols) {
  if (symbols.size() != st.slots.size())
    throw std::invalid_argument("encode_symbols: symbol count does not match slots");
  switch (st.scheme) {
    case Scheme::Cj: return encode_cj(f, symbols[0], symbols[1], symbols[2], symbols[3]);
    case Scheme::Mb: return encode_mb(f, symbols[0]);
    case Scheme::Sab: return encode_sab(f, symbols[0], symbols[1], symbols[2]);
    case Scheme::Bcj: return encode_bcj(f, symbols[0], symbols[1], symbols[2], false);
    case Scheme::BcjSwapped: return encode_bcj(f, symbols[0], symbols[1], symbols[2], true);
    case Scheme::Coj: return encode_coj(f, symbols[0], symbols[1]);
  }
  throw std::invalid_argument("encode_symbols: unknown scheme");
}

// Noiseless destination constellation: one point per tuple of levels over the
// slots that actually reach the destination (nonzero coefficient). Tuples in
// lexicographic level order; coincident points collapse to the first
// (lexicographically smallest) tuple.
struct EffectiveConstellation {
  struct Point {
    double y;
    std::vector<int> levels;  // full tuple, one level per slot (nulled slots pinned to 0)
  };
  std::vector<Point> points;       // sorted ascending by y
  std::vector<bool> slot_reaches;  // per slot: nonzero destination coefficient
};

inline EffectiveConstellation effective_constellation(const SchemeStructure& st,
                                                      std::size_t max_points = 1u << 22) {
  const int n_slots = int(st.slots.size());
  std::vector<int> active;
  for (int i = 0; i < n_slots; ++i)
    if (st.slots[i].dest_coeff != 0.0) active.push_back(i);

  const std::size_t card = std::size_t(st.constellation.size());
  std::size_t total = 1;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (total > max_points / card)
      throw std::invalid_argument("effective_constellation: constellation too large to enumerate");
    total *= card;
  }

  EffectiveConstellation ec;
  ec.slot_reaches.assign(std::size_t(n_slots), false);
  for (int i : active) ec.slot_reaches[std::size_t(i)] = true;
  ec.points.reserve(total);

  std::vector<int> levels(std::size_t(n_slots), 0);
  const int q = st.constellation.half_width;
  // odometer over the active slots, most-significant first => lex order
  std::vector<int> digits(active.size(), -q);
  for (std::size_t count = 0; count < total; ++count) {
    double y = 0.0;
    for (std::size_t d = 0; d < active.size(); ++d) {
      levels[std::size_t(active[d])] = digits[d];
      y += st.slots[std::size_t(active[d])].dest_coeff * st.constellation.level(digits[d]);
    }
    ec.points.push_back({y, levels});
    for (std::size_t d = active.size(); d-- > 0;) {
      if (++digits[d] <= q) break;
      digits[d] = -q;
    }
  }

  std::stable_sort(ec.points.begin(), ec.points.end(),
                   [](const auto& a, const auto& b) { return a.y < b.y; });
  // collapse exact duplicates; stable sort kept lex-smallest first
  std::size_t w = 0;
  for (std::size_t r = 0; r < ec.points.size(); ++r) {
    if (w > 0 && ec.points[r].y == ec.points[w - 1].y) continue;
    if (w != r) ec.points[w] = std::move(ec.points[r]);
    ++w;
  }
  ec.points.resize(w);
  return ec;
}

// Nearest effective point; distance ties resolve to the lexicographically
// smaller level tuple.
inline const EffectiveConstellation::Point& min_distance_decode(
    double y, const EffectiveConstellation& ec) {
  if (ec.points.empty())
    throw std::invalid_argument("min_distance_decode: empty constellation");
  auto it = std::lower_bound(ec.points.begin(), ec.points.end(), y,
                             [](const auto& p, double val) { return p.y < val; });
  if (it == ec.points.begin()) return *it;
  if (it == ec.points.end()) return *(it - 1);
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double d_lo = y - lo.y, d_hi = hi.y - y;
  if (d_lo < d_hi) return lo;
  if (d_hi < d_lo) return hi;
  return lo.levels <= hi.levels ? lo : hi;
}

inline std::vector<int> min_distance_decode(double y, const FadingState& f,
                                            const SchemeParams& p) {
  return min_distance_decode(y, effective_constellation(scheme_structure(f, p))).levels;
}

}  // namespace dwsim
