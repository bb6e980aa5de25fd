#pragma once

#include <vector>

#include "asqg/point.hpp"

namespace asqg {

struct KernelConfig {
  double alpha = 0.5;
  /// Absolute error allowed in truncated lattice sums.
  double tail_tolerance = 1e-10;
  /// Hard cap on the image index |j|.
  long max_images = 1000000;
};

/// Gamma(a/2) / (pi 2^{2-a} Gamma(1-a/2)) for a in (0, 1].
double c_alpha(double alpha);
/// The a -> 0 reference constant 1/(2 pi).
double c_zero();

/// Value, gradient and Hessian of a scalar field at one point.
struct ScalarJet {
  double value = 0.0;
  Point grad;
  Sym2 hess;
};

/// Result of a strip evaluation of R with its truncation bookkeeping.
struct LatticeSum {
  ScalarJet r;
  long images = 0;
  double error_estimate = 0.0;
};

/// Free-space kernel G = c/|x|^a, its gradient kernel K = grad^perp G, the
/// lattice correction R = sum_{j != 0} [G(x - n_j) - G(n_j)] and the
/// periodized kernel G_p = G + R.
///
/// The correction is evaluated on the fundamental strip |x1| <= 1/2 as a
/// paired direct sum over |j| <= N followed by an analytic tail: for |j| > N
/// the pair G(x - n_j) + G(x + n_j) - 2 G(n_j) is expanded in powers of 1/j
/// and summed with Hurwitz zeta values. Off the strip, R is reassembled from
/// periodicity of G_p.
class LatticeKernel {
 public:
  explicit LatticeKernel(const KernelConfig& cfg);

  const KernelConfig& config() const { return cfg_; }
  double alpha() const { return cfg_.alpha; }
  double c() const { return c_; }

  double green_free(Point x) const;
  Point k_free(Point x) const;
  Point grad_green_free(Point x) const;
  Sym2 hess_green_free(Point x) const;

  double r_alpha(Point x) const;
  /// order 1: value and gradient; order 2: also the Hessian.
  ScalarJet r_alpha_grad(Point x, int order) const;
  double green_periodic(Point x) const;
  /// Gradient (order 1) and Hessian (order 2) of G_p.
  ScalarJet green_periodic_jet(Point x, int order) const;
  /// H = sum_{j != 0} K(x - n_j) = grad^perp R.
  Point h_alpha(Point x) const;
  /// K_p = K + H.
  Point k_periodic(Point x) const;

  /// Strip evaluation of R at a fixed direct-sum radius (no tolerance loop).
  LatticeSum r_strip_fixed(Point p, long n_direct, int order) const;

 private:
  LatticeSum r_strip(Point p, int order) const;
  double zeta_tail(int n, long N) const;
  double tail_series(Point p, long N, double* err) const;

  KernelConfig cfg_;
  double c_ = 0.0;
  std::vector<double> inv_pow_;                // j^{-a}, j = 0..cache
  std::vector<std::vector<double>> zeta_;      // zeta(a + 2n, N + 1) for cached N
};

}  // namespace asqg
