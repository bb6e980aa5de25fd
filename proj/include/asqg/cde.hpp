#pragma once

#include <vector>

#include "asqg/contour.hpp"
#include "asqg/kernel.hpp"
#include "asqg/mollifier.hpp"

namespace asqg {

/// How the beta-integral of one curve couples to the other curves.
enum class Interaction {
  chain_wide,  ///< every curve of the chain contributes to every node
  self_only,   ///< each curve only sees itself
};

/// Which piece of G_p = G + R is integrated.
enum class KernelPart { full, free_space, lattice };

struct QuadratureConfig {
  /// Half-width of the near-field window in grid cells (beta_0 = cells * 2 pi / M).
  int near_field_cells = 4;
  /// Gauss-Legendre points on each side of beta = 0.
  int near_field_order = 16;
  /// Grading exponent of beta = beta_0 t^q; 0 selects q = 2 / (2 - alpha).
  double grading = 0.0;
  Interaction interaction = Interaction::chain_wide;
  /// Self-intersection / lattice-collision guard on |beta| / |delta|.
  double f_ceiling = 1e8;
  /// Minimum distance from the chain for off-curve evaluation.
  double boundary_floor = 1e-6;
  /// 0 selects default_threads().
  int threads = 0;
};

/// Per-curve node velocities.
using Velocity = std::vector<std::vector<Point>>;

/// L(gamma)(eta_i) = int G_p(delta_beta(eta_i)) d_eta delta_beta(eta_i) d beta.
Velocity cde_velocity(const Chain& chain, const LatticeKernel& kernel, const QuadratureConfig& quad,
                      KernelPart part = KernelPart::full);

/// phi_eps * L(phi_eps * gamma).
Velocity cde_velocity_mollified(const Chain& chain, const LatticeKernel& kernel,
                                const QuadratureConfig& quad, const Mollifier& moll);

/// u(x) = sum over curves of int G_p(x - gamma(beta)) d_beta gamma(beta) d beta.
Point velocity_at_point(Point x, const Chain& chain, const LatticeKernel& kernel,
                        const QuadratureConfig& quad);

struct Pairing {
  /// (d^m gamma, d^m L(gamma)) in L2, L evaluated self-only.
  double direct = 0.0;
  /// 1/2 int int d^m(G_p(delta) d delta) . d^m delta d beta d eta.
  double symmetric = 0.0;
};

/// Supported for m in {0, 1, 2}.
Pairing pairing(const Chain& chain, int m, const LatticeKernel& kernel, const QuadratureConfig& quad,
                KernelPart part = KernelPart::full);

/// Spectral derivative of periodic samples on the uniform grid.
std::vector<Point> periodic_derivative(const std::vector<Point>& samples, int order);

}  // namespace asqg
