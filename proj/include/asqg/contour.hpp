#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "asqg/point.hpp"

namespace asqg {

/// A quasi-closed curve sampled at eta_i = -pi + 2 pi i / M.
///
/// gamma(eta + 2 pi) = gamma(eta) + (w, 0). Internally the curve is kept as
/// the periodic part P(theta) = gamma - (w theta / 2 pi, 0), theta = eta + pi,
/// together with its discrete Fourier coefficients. The Nyquist mode is
/// interpolated symmetrically (c_N cos N theta) so the interpolant is real.
class Curve {
 public:
  using cplx = std::complex<double>;

  Curve() = default;
  Curve(std::vector<Point> nodes, int winding = 0);

  std::size_t size() const { return nodes_.size(); }
  int winding() const { return winding_; }
  const std::vector<Point>& nodes() const { return nodes_; }
  const Point& operator[](std::size_t i) const { return nodes_[i]; }

  double eta(std::size_t i) const;
  /// Node at any integer index; indices outside [0, M) pick up the winding jump.
  Point node(long i) const;
  /// Fourier coefficients of x1 + i x2 of the periodic part, FFT order.
  const std::vector<cplx>& coefficients() const { return coeffs_; }

  /// d^order gamma / d eta^order at an arbitrary parameter (direct trigonometric sum).
  Point evaluate(double eta, int order = 0) const;
  /// d^order gamma at eta_i - s for every node i.
  std::vector<Point> shifted(double s, int order = 0) const;
  /// d^order gamma at the nodes. Throws accuracy_guard when order > M/4.
  std::vector<Point> derivative(int order) const;

  Curve resample(std::size_t new_M) const;
  /// (||gamma||_{L2}^2 + sum_{j=1..m} ||d^j gamma||_{L2}^2)^{1/2} over d eta on [-pi, pi].
  double sobolev_norm(int m) const;
  double l2_norm() const { return sobolev_norm(0); }

  /// gamma(-eta): reversed orientation, winding negated.
  Curve reversed() const;
  Curve translated(Point v) const;

 private:
  std::vector<Point> nodes_;
  int winding_ = 0;
  std::vector<cplx> coeffs_;
};

/// Boundary chain: curves sharing one grid size.
class Chain {
 public:
  Chain() = default;
  explicit Chain(std::vector<Curve> curves);

  std::size_t size() const { return curves_.size(); }
  std::size_t grid_size() const { return curves_.empty() ? 0 : curves_[0].size(); }
  const Curve& operator[](std::size_t i) const { return curves_[i]; }
  const std::vector<Curve>& curves() const { return curves_; }
  auto begin() const { return curves_.begin(); }
  auto end() const { return curves_.end(); }

  Chain translated(Point v) const;

 private:
  std::vector<Curve> curves_;
};

/// delta_beta(eta_i) = gamma(eta_i) - gamma(eta_i - beta) on one curve of the chain.
Point delta(const Chain& chain, std::size_t curve, std::size_t i, double beta);

template <class F>
Curve sample_curve(std::size_t M, int winding, F&& f) {
  std::vector<Point> nodes(M);
  for (std::size_t i = 0; i < M; ++i)
    nodes[i] = f(-kPi + kTwoPi * static_cast<double>(i) / static_cast<double>(M));
  return Curve(std::move(nodes), winding);
}

/// Circle traversed counterclockwise (clockwise when orientation < 0).
Curve make_circle(std::size_t M, double radius, Point center, int orientation = 1);
Curve make_ellipse(std::size_t M, double a, double b, Point center, int orientation = 1);
/// x2 = height + amplitude cos(mode eta), x1 = eta / 2 pi, winding 1.
Curve make_front(std::size_t M, double height, double amplitude, int mode);

}  // namespace asqg
