#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "asqg/contour.hpp"

namespace asqg {

/// Friedrichs mollifier phi_eps(x) = eps^{-1} phi_1(x / eps) with
/// phi_1 proportional to exp(-1 / (1 - x^2)) on (-1, 1) and unit mass.
/// Convolution on the circle is applied as a Fourier multiplier, which is
/// the exact convolution of the trigonometric interpolant.
class Mollifier {
 public:
  explicit Mollifier(double epsilon);

  double epsilon() const { return eps_; }
  /// phi_eps(x), unit mass on the line.
  double profile(double x) const;
  /// Fourier multiplier: integral of phi_eps(x) exp(-i k x) dx.
  double multiplier(long k) const;

  /// phi_eps * gamma; the linear winding part is left unchanged.
  Curve apply(const Curve& c) const;
  Chain apply(const Chain& c) const;
  /// Convolution of periodic samples on the uniform grid of [-pi, pi).
  std::vector<Point> apply(const std::vector<Point>& samples) const;
  std::vector<double> apply(const std::vector<double>& samples) const;

 private:
  double eps_;
  double mass_;
  struct Cache {
    std::mutex mutex;
    std::vector<double> values;
  };
  std::shared_ptr<Cache> cache_;
};

}  // namespace asqg
