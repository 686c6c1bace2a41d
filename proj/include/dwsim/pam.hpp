#pragma once

#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace dwsim {

// Symmetric pulse-amplitude constellation a * {-Q, ..., Q}. Both the message
// and the dithering symbols of every scheme draw uniformly from one of these.
struct PamConstellation {
  double spacing = 1.0;  // a
  int half_width = 1;    // Q

  int size() const { return 2 * half_width + 1; }

  // value of level q, q in [-Q, Q]
  double level(int q) const { return spacing * double(q); }

  double max_abs() const { return spacing * double(half_width); }

  // E[X^2] under the uniform distribution: a^2 Q(Q+1)/3
  double second_moment() const {
    double q = double(half_width);
    return spacing * spacing * q * (q + 1.0) / 3.0;
  }

  std::vector<double> points() const {
    std::vector<double> p;
    p.reserve(std::size_t(size()));
    for (int q = -half_width; q <= half_width; ++q) p.push_back(level(q));
    return p;
  }

  int draw_level(Rng& rng) const { return rng.index(size()) - half_width; }
  double draw(Rng& rng) const { return level(draw_level(rng)); }
};

inline std::vector<double> pam_points(double spacing, int half_width) {
  if (!(spacing > 0.0)) throw std::invalid_argument("pam_points: spacing must be positive");
  if (half_width < 1) throw std::invalid_argument("pam_points: half width must be >= 1");
  return PamConstellation{spacing, half_width}.points();
}

}  // namespace dwsim
