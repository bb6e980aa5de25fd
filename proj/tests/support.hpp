#pragma once

#include <cmath>
#include <random>

#include "asqg/contour.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

// Tilted, off-centre ellipse: no reflection symmetry relative to the lattice.
inline asqg::Curve tilted_ellipse(std::size_t M, double a = 0.3, double b = 0.15, double angle = 0.5,
                                  asqg::Point c = {0.05, 0.1}) {
  return asqg::sample_curve(M, 0, [&](double e) {
    const double x = a * std::cos(e), y = b * std::sin(e);
    return asqg::Point{c.x1 + std::cos(angle) * x - std::sin(angle) * y,
                       c.x2 + std::sin(angle) * x + std::cos(angle) * y};
  });
}

inline asqg::Chain flat_layer(std::size_t M, double h) {
  return asqg::Chain({asqg::make_front(M, h, 0.0, 1), asqg::make_front(M, -h, 0.0, 1)});
}

}  // namespace testing
