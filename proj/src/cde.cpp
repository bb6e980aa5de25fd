#include "asqg/cde.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "asqg/errors.hpp"
#include "asqg/parallel.hpp"
#include "asqg/quadrature.hpp"
#include "asqg/spectral.hpp"

namespace asqg {
namespace {

constexpr int kMaxOrder = 3;
using Derivs = std::array<Point, kMaxOrder + 1>;

// Split of the beta-integral over [-pi, pi): a graded Gauss-Legendre window
// |beta| < beta_0 around the singular diagonal and an endpoint-corrected
// trapezoid on the grid beta_k = k h, k = K0..M-K0, for the rest.
struct Setup {
  std::size_t M = 0;
  int K0 = 0;
  double h = 0.0;
  std::vector<double> shifts;
  std::vector<double> near_w;
  std::vector<double> far_w;
};

Setup make_setup(std::size_t M, double alpha, const QuadratureConfig& quad) {
  if (quad.near_field_order < 8) fail(Errc::invalid_argument, "near_field_order must be >= 8");
  if (quad.near_field_cells < 1 || 2 * static_cast<std::size_t>(quad.near_field_cells) + 8 > M)
    fail(Errc::invalid_argument, "near_field_cells must be >= 1 and leave a far field of >= 8 cells");
  Setup s;
  s.M = M;
  s.K0 = quad.near_field_cells;
  s.h = kTwoPi / static_cast<double>(M);
  const double beta0 = s.K0 * s.h;
  const double q = quad.grading > 0.0 ? quad.grading : 2.0 / (2.0 - alpha);
  const Rule gl = gauss_legendre01(quad.near_field_order);
  for (int side : {1, -1}) {
    for (std::size_t l = 0; l < gl.nodes.size(); ++l) {
      const double t = gl.nodes[l];
      s.shifts.push_back(side * beta0 * std::pow(t, q));
      s.near_w.push_back(beta0 * q * std::pow(t, q - 1.0) * gl.weights[l]);
    }
  }
  s.far_w = gregory_weights(M - 2 * static_cast<std::size_t>(s.K0), s.h);
  return s;
}

struct CurveData {
  const Curve* curve = nullptr;
  int kmax = 0;
  std::vector<std::vector<Point>> d;                 // d[k][i], k >= 1
  std::vector<std::vector<std::vector<Point>>> near; // near[s][k][i]

  Point at(int k, long j) const {
    if (k == 0) return curve->node(j);
    const long M = static_cast<long>(curve->size());
    long r = j % M;
    if (r < 0) r += M;
    return d[k][static_cast<std::size_t>(r)];
  }
};

CurveData prepare(const Curve& c, int kmax, const Setup* setup) {
  CurveData cd;
  cd.curve = &c;
  cd.kmax = kmax;
  cd.d.resize(kmax + 1);
  for (int k = 1; k <= kmax; ++k) cd.d[k] = c.derivative(k);
  if (setup) {
    cd.near.resize(setup->shifts.size());
    for (std::size_t s = 0; s < setup->shifts.size(); ++s) {
      cd.near[s].resize(kmax + 1);
      for (int k = 0; k <= kmax; ++k) cd.near[s][k] = c.shifted(setup->shifts[s], k);
    }
  }
  return cd;
}

// Raises when delta_beta comes within 1/f_ceiling (relative to |beta|) of
// the diagonal or of a lattice point.
void guard(Point d, double beta_gap, long expected_image, double ceiling) {
  const Point p = covering_map(d);
  const long j = std::lround(d.x1 - p.x1);
  const double r = norm(p);
  if (j == expected_image) {
    if (beta_gap > ceiling * r)
      fail(Errc::self_intersection, "chord-arc ratio exceeds the configured ceiling");
  } else if (1.0 > ceiling * r) {
    fail(Errc::lattice_collision, "chord comes within 1/f_ceiling of a lattice point");
  }
}

struct KernelEval {
  const LatticeKernel& k;
  KernelPart part;

  double value(Point x) const {
    switch (part) {
      case KernelPart::free_space: return k.green_free(x);
      case KernelPart::lattice: return k.r_alpha(x);
      case KernelPart::full: break;
    }
    return k.green_periodic(x);
  }

  ScalarJet jet(Point x, int order) const {
    if (part == KernelPart::full) return k.green_periodic_jet(x, order);
    if (part == KernelPart::lattice) return k.r_alpha_grad(x, order);
    ScalarJet j;
    j.value = k.green_free(x);
    if (order >= 1) j.grad = k.grad_green_free(x);
    if (order >= 2) j.hess = k.hess_green_free(x);
    return j;
  }
};

// result[i] = int_{-pi}^{pi} f(beta, D) d beta at node i of one curve, where
// D[k] = d^k_eta delta_beta(eta_i).
template <class T, class F>
std::vector<T> self_integral(const CurveData& cd, const Setup& st, double ceiling, int threads, F&& f) {
  const std::size_t M = st.M;
  const long w = cd.curve->winding();
  std::vector<T> out(M);
  parallel_for(M, threads, [&](std::size_t i) {
    const long li = static_cast<long>(i);
    Derivs here{};
    for (int k = 0; k <= cd.kmax; ++k) here[k] = cd.at(k, li);
    T acc{};
    Derivs D{};
    for (std::size_t s = 0; s < st.shifts.size(); ++s) {
      for (int k = 0; k <= cd.kmax; ++k) D[k] = here[k] - cd.near[s][k][i];
      guard(D[0], std::abs(st.shifts[s]), 0, ceiling);
      acc += st.near_w[s] * f(st.shifts[s], D);
    }
    const long K0 = st.K0;
    const long last = static_cast<long>(M) - K0;
    for (long kk = K0; kk <= last; ++kk) {
      for (int k = 0; k <= cd.kmax; ++k) D[k] = here[k] - cd.at(k, li - kk);
      const double beta = kk * st.h;
      guard(D[0], std::min(beta, kTwoPi - beta), beta > kPi ? w : 0, ceiling);
      acc += st.far_w[static_cast<std::size_t>(kk - K0)] * f(beta, D);
    }
    out[i] = acc;
  });
  return out;
}

std::vector<Point> self_velocity(const Curve& c, const Setup& st, const KernelEval& ke,
                                 const QuadratureConfig& quad) {
  CurveData cd = prepare(c, 1, &st);
  return self_integral<Point>(cd, st, quad.f_ceiling, quad.threads,
                              [&](double, const Derivs& D) { return ke.value(D[0]) * D[1]; });
}

// Trapezoid coupling of curve b into the nodes of curve a.
void add_cross(std::vector<Point>& out, const Curve& a, const Curve& b, const KernelEval& ke,
               const QuadratureConfig& quad) {
  const std::size_t M = a.size();
  const double h = kTwoPi / static_cast<double>(M);
  const auto da = a.derivative(1);
  const auto db = b.derivative(1);
  parallel_for(M, quad.threads, [&](std::size_t i) {
    Point acc{};
    const long li = static_cast<long>(i);
    for (long k = 0; k < static_cast<long>(M); ++k) {
      const long j = li - k;
      const Point d = a[i] - b.node(j);
      if (1.0 > quad.f_ceiling * norm(covering_map(d)))
        fail(Errc::self_intersection, "two curves of the chain intersect");
      const std::size_t jm = static_cast<std::size_t>(((j % static_cast<long>(M)) + static_cast<long>(M)) %
                                                      static_cast<long>(M));
      acc += ke.value(d) * (da[i] - db[jm]);
    }
    out[i] += h * acc;
  });
}

}  // namespace

std::vector<Point> periodic_derivative(const std::vector<Point>& samples, int order) {
  const std::size_t M = samples.size();
  if (order == 0) return samples;
  if (order < 0) fail(Errc::invalid_argument, "negative derivative order");
  if (static_cast<std::size_t>(order) > M / 4) fail(Errc::accuracy_guard, "derivative order exceeds M/4");
  std::vector<std::complex<double>> z(M);
  for (std::size_t i = 0; i < M; ++i) z[i] = {samples[i].x1, samples[i].x2};
  auto c = spectral::forward(z);
  const long N = static_cast<long>(M / 2);
  for (std::size_t k = 0; k < M; ++k) {
    const long n = spectral::wavenumber(k, M);
    if (n == N) {
      // derivative of c_N cos(N theta) at the nodes vanishes for odd orders
      c[k] *= (order % 2 == 0) ? std::pow(-1.0 * N * N, order / 2) : 0.0;
    } else {
      c[k] *= std::pow(std::complex<double>(0.0, static_cast<double>(n)), order);
    }
  }
  z = spectral::inverse(c);
  std::vector<Point> out(M);
  for (std::size_t i = 0; i < M; ++i) out[i] = {z[i].real(), z[i].imag()};
  return out;
}

Velocity cde_velocity(const Chain& chain, const LatticeKernel& kernel, const QuadratureConfig& quad,
                      KernelPart part) {
  const Setup st = make_setup(chain.grid_size(), kernel.alpha(), quad);
  const KernelEval ke{kernel, part};
  Velocity out;
  out.reserve(chain.size());
  for (const auto& c : chain) out.push_back(self_velocity(c, st, ke, quad));
  if (quad.interaction == Interaction::chain_wide) {
    for (std::size_t a = 0; a < chain.size(); ++a)
      for (std::size_t b = 0; b < chain.size(); ++b)
        if (a != b) add_cross(out[a], chain[a], chain[b], ke, quad);
  }
  return out;
}

Velocity cde_velocity_mollified(const Chain& chain, const LatticeKernel& kernel,
                                const QuadratureConfig& quad, const Mollifier& moll) {
  Velocity v = cde_velocity(moll.apply(chain), kernel, quad);
  for (auto& per_curve : v) per_curve = moll.apply(per_curve);
  return v;
}

Point velocity_at_point(Point x, const Chain& chain, const LatticeKernel& kernel,
                        const QuadratureConfig& quad) {
  if (!is_finite(x)) fail(Errc::invalid_argument, "non-finite evaluation point");
  constexpr std::size_t kMaxNodes = 1 << 16;
  Point u{};
  for (const auto& c0 : chain) {
    Curve c = c0;
    while (true) {
      double dist = INFINITY, spacing = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        dist = std::min(dist, norm(covering_map(x - c[i])));
        spacing = std::max(spacing, norm(c.node(static_cast<long>(i) + 1) - c[i]));
      }
      if (dist < quad.boundary_floor)
        fail(Errc::boundary_evaluation, "evaluation point lies on the chain");
      if (6.0 * spacing <= dist || 2 * c.size() > kMaxNodes) break;
      c = c.resample(2 * c.size());
    }
    const auto d1 = c.derivative(1);
    const double h = kTwoPi / static_cast<double>(c.size());
    Point acc{};
    for (std::size_t i = 0; i < c.size(); ++i) acc += kernel.green_periodic(x - c[i]) * d1[i];
    u += h * acc;
  }
  return u;
}

Pairing pairing(const Chain& chain, int m, const LatticeKernel& kernel, const QuadratureConfig& quad,
                KernelPart part) {
  if (m < 0 || m > 2) fail(Errc::unsupported, "pairing is implemented for m = 0, 1, 2");
  const std::size_t M = chain.grid_size();
  if (static_cast<std::size_t>(m + 1) > M / 4) fail(Errc::accuracy_guard, "pairing order too high for M");
  const Setup st = make_setup(M, kernel.alpha(), quad);
  const KernelEval ke{kernel, part};
  const double h = kTwoPi / static_cast<double>(M);
  Pairing out;
  for (const auto& c : chain) {
    const auto L = self_velocity(c, st, ke, quad);
    const auto dL = periodic_derivative(L, m);
    const auto dg = c.derivative(m);
    for (std::size_t i = 0; i < M; ++i) out.direct += h * dot(dg[i], dL[i]);

    CurveData cd = prepare(c, m + 1, &st);
    auto vals = self_integral<double>(cd, st, quad.f_ceiling, quad.threads, [&](double, const Derivs& D) {
      const ScalarJet J = ke.jet(D[0], m);
      if (m == 0) return 0.5 * J.value * dot(D[1], D[0]);
      const double gd1 = dot(J.grad, D[1]);
      if (m == 1) return 0.5 * dot(gd1 * D[1] + J.value * D[2], D[1]);
      const double hess11 = J.hess.xx * D[1].x1 * D[1].x1 + 2.0 * J.hess.xy * D[1].x1 * D[1].x2 +
                            J.hess.yy * D[1].x2 * D[1].x2;
      const Point a = (hess11 + dot(J.grad, D[2])) * D[1] + 2.0 * gd1 * D[2] + J.value * D[3];
      return 0.5 * dot(a, D[2]);
    });
    for (double v : vals) out.symmetric += h * v;
  }
  return out;
}

}  // namespace asqg
