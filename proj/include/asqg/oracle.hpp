#pragma once

#include "asqg/contour.hpp"

namespace asqg::oracle {

/// Brute-force references. Nothing here calls the lattice kernel or the
/// boundary quadrature used by the simulator.

struct AreaQuadratureConfig {
  double alpha = 0.5;
  /// Uniform cells per unit length over one period of the patch.
  int cells_per_unit = 128;
  /// Images summed directly, |j| <= image_radius.
  int image_radius = 400;
  /// Vertices of the dense polygon used for the region indicator.
  int polygon_vertices = 8192;
  int threads = 0;
};

/// u(x) = -sum_j int_Omega K(x - n_j - y) dy = int_Omega grad_y^perp G(x - y) dy
/// (periodized) by the midpoint rule, cells cut by the boundary refined 4x4.
/// The chain must bound a region: the windings must sum to zero.
Point velocity_area_integral(Point x, const Chain& chain, const AreaQuadratureConfig& cfg);

/// R(x) as the line integral of grad R = (H_2, -H_1) along the segment 0 -> x,
/// H summed image by image; adaptive Gauss-Kronrod to the given tolerance.
double r_alpha_path_integral(Point x, double alpha, double tolerance = 1e-10);

/// H(x) = sum_{j != 0} K(x - n_j) by paired direct summation plus an integral tail.
Point h_alpha_direct(Point x, double alpha);

}  // namespace asqg::oracle
