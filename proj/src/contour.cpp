#include "asqg/contour.hpp"

#include <cmath>
#include <string>

#include "asqg/errors.hpp"
#include "asqg/spectral.hpp"

namespace asqg {
namespace {

using cplx = std::complex<double>;

double theta_of(std::size_t i, std::size_t M) {
  return kTwoPi * static_cast<double>(i) / static_cast<double>(M);
}

// Multiplier for derivative order d at signed wavenumber k, shift s: (ik)^d e^{-iks}.
cplx mode_factor(long k, int d, double s) {
  cplx f = std::polar(1.0, -static_cast<double>(k) * s);
  const cplx ik(0.0, static_cast<double>(k));
  for (int j = 0; j < d; ++j) f *= ik;
  return f;
}

void check_order(int order, std::size_t M) {
  if (order < 0) fail(Errc::invalid_argument, "negative derivative order");
  if (static_cast<std::size_t>(order) > M / 4)
    fail(Errc::accuracy_guard,
         "derivative order " + std::to_string(order) + " exceeds M/4 for M = " + std::to_string(M));
}

}  // namespace

Curve::Curve(std::vector<Point> nodes, int winding) : nodes_(std::move(nodes)), winding_(winding) {
  const std::size_t M = nodes_.size();
  if (M < 16 || M % 2 != 0)
    fail(Errc::invalid_argument, "curve needs an even number of nodes >= 16, got " + std::to_string(M));
  std::vector<cplx> z(M);
  for (std::size_t i = 0; i < M; ++i) {
    if (!is_finite(nodes_[i])) fail(Errc::invalid_argument, "non-finite curve node");
    const double lin = winding_ * theta_of(i, M) / kTwoPi;
    z[i] = cplx(nodes_[i].x1 - lin, nodes_[i].x2);
  }
  coeffs_ = spectral::forward(z);
}

double Curve::eta(std::size_t i) const { return -kPi + theta_of(i, size()); }

Point Curve::node(long i) const {
  const long M = static_cast<long>(size());
  long q = i / M;
  long r = i % M;
  if (r < 0) {
    r += M;
    --q;
  }
  Point p = nodes_[static_cast<std::size_t>(r)];
  p.x1 += static_cast<double>(q * winding_);
  return p;
}

Point Curve::evaluate(double eta, int order) const {
  const std::size_t M = size();
  check_order(order, M);
  const double theta = eta + kPi;
  const long N = static_cast<long>(M / 2);
  cplx z(0.0, 0.0);
  for (std::size_t k = 0; k < M; ++k) {
    const long n = spectral::wavenumber(k, M);
    if (n == N) {
      const double amp = std::pow(static_cast<double>(N), order);
      z += coeffs_[k] * amp * std::cos(N * theta + order * kPi / 2);
    } else {
      z += coeffs_[k] * mode_factor(n, order, -theta);
    }
  }
  Point p{z.real(), z.imag()};
  if (order == 0) p.x1 += winding_ * theta / kTwoPi;
  if (order == 1) p.x1 += winding_ / kTwoPi;
  return p;
}

std::vector<Point> Curve::shifted(double s, int order) const {
  const std::size_t M = size();
  check_order(order, M);
  const long N = static_cast<long>(M / 2);
  std::vector<cplx> c(coeffs_);
  for (std::size_t k = 0; k < M; ++k) {
    const long n = spectral::wavenumber(k, M);
    if (n == N)
      c[k] *= std::pow(static_cast<double>(N), order) * std::cos(order * kPi / 2 - N * s);
    else
      c[k] *= mode_factor(n, order, s);
  }
  auto z = spectral::inverse(c);
  std::vector<Point> out(M);
  for (std::size_t i = 0; i < M; ++i) {
    out[i] = {z[i].real(), z[i].imag()};
    if (order == 0) out[i].x1 += winding_ * (theta_of(i, M) - s) / kTwoPi;
    if (order == 1) out[i].x1 += winding_ / kTwoPi;
  }
  return out;
}

std::vector<Point> Curve::derivative(int order) const {
  if (order == 0) return nodes_;
  return shifted(0.0, order);
}

Curve Curve::resample(std::size_t new_M) const {
  const std::size_t M = size();
  if (new_M < 16 || new_M % 2 != 0)
    fail(Errc::invalid_argument, "resample target must be even and >= 16");
  if (new_M == M) return *this;
  const long N = static_cast<long>(M / 2);
  const long Nn = static_cast<long>(new_M / 2);
  std::vector<cplx> c(new_M, cplx(0.0, 0.0));
  auto slot = [](long n, std::size_t size) {
    return static_cast<std::size_t>(n >= 0 ? n : n + static_cast<long>(size));
  };
  for (std::size_t k = 0; k < M; ++k) {
    const long n = spectral::wavenumber(k, M);
    if (new_M > M) {
      if (n == N) {
        c[slot(N, new_M)] += 0.5 * coeffs_[k];
        c[slot(-N, new_M)] += 0.5 * coeffs_[k];
      } else {
        c[slot(n, new_M)] += coeffs_[k];
      }
    } else if (std::abs(n) < Nn) {
      c[slot(n, new_M)] += coeffs_[k];
    } else if (std::abs(n) == Nn) {
      // both +-Nn fold onto the new Nyquist slot
      c[slot(Nn, new_M)] += coeffs_[k];
    }
  }
  auto z = spectral::inverse(c);
  std::vector<Point> out(new_M);
  for (std::size_t i = 0; i < new_M; ++i)
    out[i] = {z[i].real() + winding_ * theta_of(i, new_M) / kTwoPi, z[i].imag()};
  if (new_M % M == 0) {
    const std::size_t ratio = new_M / M;
    for (std::size_t i = 0; i < M; ++i) out[i * ratio] = nodes_[i];
  }
  return Curve(std::move(out), winding_);
}

double Curve::sobolev_norm(int m) const {
  const std::size_t M = size();
  if (m < 0) fail(Errc::invalid_argument, "negative Sobolev index");
  if (M < 4 * static_cast<std::size_t>(m))
    fail(Errc::accuracy_guard, "Sobolev index " + std::to_string(m) + " needs M >= 4m");
  const long N = static_cast<long>(M / 2);
  double total = 0.0;
  for (int j = 0; j <= m; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
      const long n = spectral::wavenumber(k, M);
      const double w = std::pow(static_cast<double>(std::abs(n)), 2 * j);
      s += (n == N ? 0.5 : 1.0) * w * std::norm(coeffs_[k]);
    }
    s *= kTwoPi;
    if (j == 1) s += kTwoPi * std::pow(winding_ / kTwoPi, 2);
    total += s;
  }
  return std::sqrt(total);
}

Curve Curve::reversed() const {
  const std::size_t M = size();
  std::vector<Point> out(M);
  out[0] = nodes_[0];
  out[0].x1 += winding_;
  for (std::size_t i = 1; i < M; ++i) out[i] = nodes_[M - i];
  return Curve(std::move(out), -winding_);
}

Curve Curve::translated(Point v) const {
  std::vector<Point> out(nodes_);
  for (auto& p : out) p += v;
  return Curve(std::move(out), winding_);
}

Chain::Chain(std::vector<Curve> curves) : curves_(std::move(curves)) {
  if (curves_.empty()) fail(Errc::invalid_argument, "chain needs at least one curve");
  for (const auto& c : curves_)
    if (c.size() != curves_[0].size())
      fail(Errc::invalid_argument, "all curves of a chain must share one grid size");
}

Chain Chain::translated(Point v) const {
  std::vector<Curve> out;
  out.reserve(size());
  for (const auto& c : curves_) out.push_back(c.translated(v));
  return Chain(std::move(out));
}

Point delta(const Chain& chain, std::size_t curve, std::size_t i, double beta) {
  if (curve >= chain.size() || i >= chain.grid_size())
    fail(Errc::invalid_argument, "delta index out of range");
  const Curve& c = chain[curve];
  if (beta == 0.0) return {0.0, 0.0};
  return c[i] - c.evaluate(c.eta(i) - beta);
}

Curve make_circle(std::size_t M, double radius, Point center, int orientation) {
  const double sgn = orientation < 0 ? -1.0 : 1.0;
  return sample_curve(M, 0, [&](double eta) {
    return Point{center.x1 + radius * std::cos(eta), center.x2 + sgn * radius * std::sin(eta)};
  });
}

Curve make_ellipse(std::size_t M, double a, double b, Point center, int orientation) {
  const double sgn = orientation < 0 ? -1.0 : 1.0;
  return sample_curve(M, 0, [&](double eta) {
    return Point{center.x1 + a * std::cos(eta), center.x2 + sgn * b * std::sin(eta)};
  });
}

Curve make_front(std::size_t M, double height, double amplitude, int mode) {
  return sample_curve(M, 1, [&](double eta) {
    return Point{eta / kTwoPi, height + amplitude * std::cos(mode * eta)};
  });
}

}  // namespace asqg
