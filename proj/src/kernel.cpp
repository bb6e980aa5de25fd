#include "asqg/kernel.hpp"

#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "asqg/errors.hpp"

namespace asqg {
namespace {

constexpr int kTailTerms = 10;
constexpr long kMinDirect = 8;
constexpr long kZetaCacheMax = 128;
constexpr long kPowCache = 1024;
constexpr int kNq = 2 * kTailTerms + 2;

// Value, gradient and Hessian in (x1, x2); only what the tail recurrence needs.
struct Jet {
  double v = 0.0;
  double g1 = 0.0, g2 = 0.0;
  double h11 = 0.0, h12 = 0.0, h22 = 0.0;
};

Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v,
          a.v * b.g1 + b.v * a.g1,
          a.v * b.g2 + b.v * a.g2,
          a.v * b.h11 + b.v * a.h11 + 2.0 * a.g1 * b.g1,
          a.v * b.h12 + b.v * a.h12 + a.g1 * b.g2 + a.g2 * b.g1,
          a.v * b.h22 + b.v * a.h22 + 2.0 * a.g2 * b.g2};
}
Jet operator*(double s, const Jet& a) { return {s * a.v, s * a.g1, s * a.g2, s * a.h11, s * a.h12, s * a.h22}; }
Jet operator+(const Jet& a, const Jet& b) {
  return {a.v + b.v, a.g1 + b.g1, a.g2 + b.g2, a.h11 + b.h11, a.h12 + b.h12, a.h22 + b.h22};
}

bool is_origin(Point p) { return p.x1 == 0.0 && p.x2 == 0.0; }

}  // namespace

double c_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    fail(Errc::invalid_argument, "alpha must lie in (0, 1], got " + std::to_string(alpha));
  return std::tgamma(alpha / 2) / (kPi * std::pow(2.0, 2.0 - alpha) * std::tgamma(1.0 - alpha / 2));
}

double c_zero() { return 1.0 / kTwoPi; }

LatticeKernel::LatticeKernel(const KernelConfig& cfg) : cfg_(cfg) {
  c_ = c_alpha(cfg.alpha);
  if (!(cfg.tail_tolerance > 0.0)) fail(Errc::invalid_argument, "tail_tolerance must be positive");
  if (cfg.max_images < 1) fail(Errc::invalid_argument, "max_images must be >= 1");
  const double a = cfg.alpha;
  inv_pow_.resize(kPowCache + 1);
  inv_pow_[0] = 0.0;
  for (long j = 1; j <= kPowCache; ++j) {
    const double dj = static_cast<double>(j);
    inv_pow_[j] = std::pow(dj * dj, -a / 2);
  }
  zeta_.resize(kZetaCacheMax + 1);
  for (long N = kMinDirect; N <= kZetaCacheMax; ++N) {
    zeta_[N].resize(kTailTerms + 2);
    for (int n = 1; n <= kTailTerms + 1; ++n)
      zeta_[N][n] = gsl_sf_hzeta(a + 2 * n, static_cast<double>(N + 1));
  }
}

double LatticeKernel::zeta_tail(int n, long N) const {
  if (N <= kZetaCacheMax && N >= kMinDirect) return zeta_[N][n];
  return gsl_sf_hzeta(cfg_.alpha + 2 * n, static_cast<double>(N + 1));
}

double LatticeKernel::green_free(Point x) const {
  const double r2 = norm2(x);
  if (r2 == 0.0) fail(Errc::singular_point, "G evaluated at the origin");
  return c_ * std::pow(r2, -cfg_.alpha / 2);
}

Point LatticeKernel::grad_green_free(Point x) const {
  const double r2 = norm2(x);
  if (r2 == 0.0) fail(Errc::singular_point, "grad G evaluated at the origin");
  const double s = -cfg_.alpha * c_ * std::pow(r2, -cfg_.alpha / 2 - 1.0);
  return s * x;
}

Point LatticeKernel::k_free(Point x) const { return perp(grad_green_free(x)); }

Sym2 LatticeKernel::hess_green_free(Point x) const {
  const double r2 = norm2(x);
  if (r2 == 0.0) fail(Errc::singular_point, "Hessian of G evaluated at the origin");
  const double a = cfg_.alpha;
  const double t = std::pow(r2, -a / 2 - 1.0);
  const double u = (a + 2.0) * t / r2;
  const double s = -a * c_;
  return {s * (t - u * x.x1 * x.x1), -s * u * x.x1 * x.x2, s * (t - u * x.x2 * x.x2)};
}

double LatticeKernel::tail_series(Point p, long N, double* err) const {
  const double m = -cfg_.alpha / 2;
  const double p1 = -2.0 * p.x1, p2 = norm2(p);
  double q[kNq + 1];
  q[0] = 1.0;
  q[1] = (m * p1);
  for (int n = 2; n <= kNq; ++n)
    q[n] = ((m + 1.0 - n) * p1 * q[n - 1] + (2.0 * (m + 1.0) - n) * p2 * q[n - 2]) / n;
  double tail = 0.0;
  for (int n = 1; n <= kTailTerms; ++n) tail += 2.0 * zeta_tail(n, N) * q[2 * n];
  *err = std::abs(2.0 * zeta_tail(kTailTerms + 1, N) * q[kNq]);
  return tail;
}

LatticeSum LatticeKernel::r_strip_fixed(Point p, long N, int order) const {
  const double a = cfg_.alpha;
  const double x1 = p.x1, x2 = p.x2;
  const double y2 = x2 * x2;
  double v = 0.0, g1 = 0.0, g2 = 0.0, h11 = 0.0, h12 = 0.0, h22 = 0.0;
  auto add_term = [&](double dx) {
    const double d2 = dx * dx + y2;
    const double t = std::pow(d2, -a / 2);
    v += t;
    if (order >= 1) {
      const double t2 = -a * t / d2;
      g1 += t2 * dx;
      g2 += t2 * x2;
      if (order >= 2) {
        const double t4 = -(a + 2.0) * t2 / d2;
        h11 += t2 + t4 * dx * dx;
        h12 += t4 * dx * x2;
        h22 += t2 + t4 * y2;
      }
    }
  };
  for (long j = 1; j <= N; ++j) {
    const double dj = static_cast<double>(j);
    const double ref = j <= kPowCache ? inv_pow_[j] : std::pow(dj * dj, -a / 2);
    const double before = v;
    v = 0.0;
    add_term(x1 - dj);
    add_term(x1 + dj);
    v = before + (v - 2.0 * ref);
  }

  // Tail: (1 + p1 u + p2 u^2)^m with u = 1/j, m = -a/2. The even coefficients
  // of the expansion, summed over j > N, give Hurwitz zeta series.
  const double m = -a / 2;
  Jet tail;
  double err = 0.0;
  if (order == 0) {
    tail.v = tail_series(p, N, &err);
  } else {
    Jet P1{-2.0 * x1, -2.0, 0.0, 0.0, 0.0, 0.0};
    Jet P2{x1 * x1 + y2, 2.0 * x1, 2.0 * x2, 2.0, 0.0, 2.0};
    std::vector<Jet> q(kNq + 1);
    q[0] = Jet{1.0};
    for (int n = 1; n <= kNq; ++n) {
      Jet next = ((m + 1.0 - n) / n) * (P1 * q[n - 1]);
      if (n >= 2) next = next + ((2.0 * (m + 1.0) - n) / n) * (P2 * q[n - 2]);
      q[n] = next;
    }
    for (int n = 1; n <= kTailTerms; ++n) tail = tail + (2.0 * zeta_tail(n, N)) * q[2 * n];
    err = std::abs(2.0 * zeta_tail(kTailTerms + 1, N) * q[kNq].v);
  }

  LatticeSum out;
  out.images = N;
  out.error_estimate = c_ * err;
  out.r.value = c_ * (v + tail.v);
  if (order >= 1) out.r.grad = {c_ * (g1 + tail.g1), c_ * (g2 + tail.g2)};
  if (order >= 2) out.r.hess = {c_ * (h11 + tail.h11), c_ * (h12 + tail.h12), c_ * (h22 + tail.h22)};
  return out;
}

LatticeSum LatticeKernel::r_strip(Point p, int order) const {
  const double r = norm(p);
  long N = std::max<long>(kMinDirect, static_cast<long>(std::ceil(3.0 * r)) + 4);
  while (true) {
    if (N > cfg_.max_images)
      fail(Errc::truncation_failure, "lattice sum needs more than max_images = " +
                                         std::to_string(cfg_.max_images) + " images");
    LatticeSum s = r_strip_fixed(p, N, order);
    if (s.error_estimate <= cfg_.tail_tolerance) return s;
    N *= 2;
  }
}

double LatticeKernel::r_alpha(Point x) const { return r_alpha_grad(x, 0).value; }

ScalarJet LatticeKernel::r_alpha_grad(Point x, int order) const {
  if (!is_finite(x)) fail(Errc::invalid_argument, "non-finite point");
  if (order < 0 || order > 2) fail(Errc::invalid_argument, "r_alpha_grad order must be 0, 1 or 2");
  const Point p = covering_map(x);
  ScalarJet out = r_strip(p, order).r;
  if (p == x) return out;
  if (is_origin(p)) fail(Errc::lattice_singularity, "R evaluated on a lattice point");
  out.value += green_free(p) - green_free(x);
  if (order >= 1) out.grad += grad_green_free(p) - grad_green_free(x);
  if (order >= 2) {
    const Sym2 hp = hess_green_free(p), hx = hess_green_free(x);
    out.hess.xx += hp.xx - hx.xx;
    out.hess.xy += hp.xy - hx.xy;
    out.hess.yy += hp.yy - hx.yy;
  }
  return out;
}

double LatticeKernel::green_periodic(Point x) const {
  if (!is_finite(x)) fail(Errc::invalid_argument, "non-finite point");
  const Point p = covering_map(x);
  if (is_origin(p)) fail(Errc::lattice_singularity, "G_p evaluated on the lattice");
  return green_free(p) + r_strip(p, 0).r.value;
}

ScalarJet LatticeKernel::green_periodic_jet(Point x, int order) const {
  if (!is_finite(x)) fail(Errc::invalid_argument, "non-finite point");
  const Point p = covering_map(x);
  if (is_origin(p)) fail(Errc::lattice_singularity, "G_p evaluated on the lattice");
  ScalarJet out = r_strip(p, order).r;
  out.value += green_free(p);
  if (order >= 1) out.grad += grad_green_free(p);
  if (order >= 2) {
    const Sym2 h = hess_green_free(p);
    out.hess.xx += h.xx;
    out.hess.xy += h.xy;
    out.hess.yy += h.yy;
  }
  return out;
}

Point LatticeKernel::h_alpha(Point x) const { return perp(r_alpha_grad(x, 1).grad); }

Point LatticeKernel::k_periodic(Point x) const {
  const Point p = covering_map(x);
  if (is_origin(p)) fail(Errc::lattice_singularity, "K_p evaluated on the lattice");
  return perp(green_periodic_jet(p, 1).grad);
}

}  // namespace asqg
