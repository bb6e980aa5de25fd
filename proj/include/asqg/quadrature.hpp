#pragma once

#include <cstddef>
#include <vector>

namespace asqg {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [0, 1].
Rule gauss_legendre01(int n);

/// Weights for n + 1 equispaced samples with spacing h: trapezoid plus
/// Gregory endpoint corrections through the given difference order (<= 5).
/// The order is reduced automatically when there are too few samples.
std::vector<double> gregory_weights(std::size_t n, double h, int order = 5);

}  // namespace asqg
