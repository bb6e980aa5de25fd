#include "asqg/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "asqg/errors.hpp"
#include "asqg/spectral.hpp"

namespace asqg {
namespace {

double bump(double y) {
  if (y <= -1.0 || y >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - y * y));
}

// Trapezoid on [-1, 1] of bump(y) cos(w y); the integrand and all its
// derivatives vanish at the ends, so the rule converges faster than any power.
double bump_cosine(double w) {
  const int n = std::max(4096, static_cast<int>(16.0 * std::abs(w)));
  const double h = 2.0 / n;
  double s = 0.0;
  for (int i = 1; i < n; ++i) {
    const double y = -1.0 + i * h;
    s += bump(y) * std::cos(w * y);
  }
  return s * h;
}

}  // namespace

Mollifier::Mollifier(double epsilon) : eps_(epsilon), cache_(std::make_shared<Cache>()) {
  if (!(epsilon > 0.0 && epsilon < kTwoPi))
    fail(Errc::invalid_argument, "mollifier epsilon must lie in (0, 2 pi)");
  mass_ = bump_cosine(0.0);
}

double Mollifier::profile(double x) const { return bump(x / eps_) / (eps_ * mass_); }

double Mollifier::multiplier(long k) const {
  const std::size_t ak = static_cast<std::size_t>(std::labs(k));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& v = cache_->values;
  while (v.size() <= ak) v.push_back(bump_cosine(static_cast<double>(v.size()) * eps_) / mass_);
  return v[ak];
}

std::vector<Point> Mollifier::apply(const std::vector<Point>& samples) const {
  const std::size_t M = samples.size();
  std::vector<std::complex<double>> z(M);
  for (std::size_t i = 0; i < M; ++i) z[i] = {samples[i].x1, samples[i].x2};
  auto c = spectral::forward(z);
  spectral::apply_multiplier(c, [&](long k) { return multiplier(k); });
  z = spectral::inverse(c);
  std::vector<Point> out(M);
  for (std::size_t i = 0; i < M; ++i) out[i] = {z[i].real(), z[i].imag()};
  return out;
}

std::vector<double> Mollifier::apply(const std::vector<double>& samples) const {
  std::vector<Point> p(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) p[i] = {samples[i], 0.0};
  auto q = apply(p);
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = q[i].x1;
  return out;
}

Curve Mollifier::apply(const Curve& c) const {
  const std::size_t M = c.size();
  const double w = c.winding();
  std::vector<Point> periodic(M);
  for (std::size_t i = 0; i < M; ++i) {
    periodic[i] = c[i];
    periodic[i].x1 -= w * static_cast<double>(i) / static_cast<double>(M);
  }
  auto out = apply(periodic);
  for (std::size_t i = 0; i < M; ++i) out[i].x1 += w * static_cast<double>(i) / static_cast<double>(M);
  return Curve(std::move(out), c.winding());
}

Chain Mollifier::apply(const Chain& c) const {
  std::vector<Curve> out;
  for (const auto& curve : c) out.push_back(apply(curve));
  return Chain(std::move(out));
}

}  // namespace asqg
