#include "asqg/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "asqg/errors.hpp"
#include "asqg/parallel.hpp"

namespace asqg::oracle {
namespace {

constexpr int kDirectImages = 400;

double constant(double a) {
  return std::exp(std::lgamma(a / 2) - std::lgamma(1.0 - a / 2)) / (std::acos(-1.0) * std::exp2(2.0 - a));
}

// K(z) = -a c z^perp / |z|^{2+a}
Point kernel(Point z, double a, double c) {
  const double r2 = z.x1 * z.x1 + z.x2 * z.x2;
  const double s = -a * c / std::pow(r2, 1.0 + a / 2);
  return {-s * z.x2, s * z.x1};
}

// Dense polygon of one curve from a naive real trigonometric interpolant.
std::vector<Point> dense_polygon(const Curve& c, int n) {
  const int M = static_cast<int>(c.size());
  const double w = c.winding();
  const double pi = std::acos(-1.0);
  std::vector<double> px(M), py(M);
  for (int i = 0; i < M; ++i) {
    px[i] = c[i].x1 - w * i / static_cast<double>(M);
    py[i] = c[i].x2;
  }
  const int N = M / 2;
  std::vector<double> ax(N + 1), bx(N + 1), ay(N + 1), by(N + 1);
  for (int k = 0; k <= N; ++k) {
    double sax = 0, sbx = 0, say = 0, sby = 0;
    for (int i = 0; i < M; ++i) {
      const double t = 2 * pi * k * i / M;
      sax += px[i] * std::cos(t);
      sbx += px[i] * std::sin(t);
      say += py[i] * std::cos(t);
      sby += py[i] * std::sin(t);
    }
    const double f = (k == 0 || k == N) ? 1.0 / M : 2.0 / M;
    ax[k] = f * sax;
    bx[k] = f * sbx;
    ay[k] = f * say;
    by[k] = f * sby;
  }
  std::vector<Point> out(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = 2 * pi * i / n;
    double x = 0, y = 0;
    for (int k = 0; k <= N; ++k) {
      const double ck = std::cos(k * t), sk = (k == N) ? 0.0 : std::sin(k * t);
      x += ax[k] * ck + bx[k] * sk;
      y += ay[k] * ck + by[k] * sk;
    }
    out[i] = {x + w * i / static_cast<double>(n), y};
  }
  return out;
}

struct Region {
  std::vector<std::vector<Point>> polys;

  // Sum over periodic images of signed crossings of the downward vertical ray.
  int indicator(Point y) const {
    int count = 0;
    for (const auto& poly : polys) {
      for (std::size_t s = 0; s + 1 < poly.size(); ++s) {
        const Point p = poly[s], q = poly[s + 1];
        if (p.x1 == q.x1) continue;
        const double lo = std::min(p.x1, q.x1), hi = std::max(p.x1, q.x1);
        const int sign = q.x1 > p.x1 ? 1 : -1;
        for (double k = std::ceil(lo - y.x1); y.x1 + k < hi; k += 1.0) {
          const double xx = y.x1 + k;
          if (xx < lo) continue;
          const double t = (xx - p.x1) / (q.x1 - p.x1);
          if (p.x2 + t * (q.x2 - p.x2) < y.x2) count += sign;
        }
      }
    }
    return count;
  }

  double distance(Point y) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& poly : polys) {
      for (const auto& p : poly) {
        const double dx = y.x1 - p.x1;
        const double r = std::hypot(dx - std::round(dx), y.x2 - p.x2);
        best = std::min(best, r);
      }
    }
    return best;
  }
};

}  // namespace

Point velocity_area_integral(Point x, const Chain& chain, const AreaQuadratureConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0 + 1e-15)) fail(Errc::invalid_argument, "alpha must lie in (0, 1]");
  if (cfg.cells_per_unit < 4) fail(Errc::invalid_argument, "cells_per_unit too small");
  int wsum = 0;
  for (const auto& c : chain) wsum += c.winding();
  if (wsum != 0) fail(Errc::invalid_argument, "windings must sum to zero for the region to be bounded");

  Region region;
  double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo, x0 = 0.0;
  for (const auto& c : chain) {
    region.polys.push_back(dense_polygon(c, cfg.polygon_vertices));
    for (const auto& p : region.polys.back()) {
      ylo = std::min(ylo, p.x2);
      yhi = std::max(yhi, p.x2);
    }
  }
  x0 = region.polys[0][0].x1 - 0.5;
  const double h = 1.0 / cfg.cells_per_unit;
  if (region.distance(x) < 2.0 * h * std::sqrt(2.0))
    fail(Errc::boundary_evaluation, "oracle point within two cells of the boundary");

  const int nx = cfg.cells_per_unit;
  const int ny = static_cast<int>(std::ceil((yhi - ylo) / h)) + 2;
  const double ybase = ylo - h;

  // Cells touched by the dense boundary, plus their neighbours, are refined.
  std::vector<char> cut(static_cast<std::size_t>(nx) * ny, 0);
  for (const auto& poly : region.polys) {
    for (const auto& p : poly) {
      double u = (p.x1 - x0) / h;
      u -= nx * std::floor(u / nx);
      const int ci = static_cast<int>(u), cj = static_cast<int>((p.x2 - ybase) / h);
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const int ii = ((ci + di) % nx + nx) % nx, jj = cj + dj;
          if (jj >= 0 && jj < ny) cut[static_cast<std::size_t>(jj) * nx + ii] = 1;
        }
    }
  }

  const double a = cfg.alpha, c = constant(a);
  const int J = cfg.image_radius;
  auto image_sum = [&](Point y) {
    Point s{0.0, 0.0};
    const Point d{x.x1 - y.x1, x.x2 - y.x2};
    s += kernel(d, a, c);
    for (int j = J; j >= 1; --j) {
      const Point kp = kernel({d.x1 - j, d.x2}, a, c), km = kernel({d.x1 + j, d.x2}, a, c);
      s.x1 += kp.x1 + km.x1;
      s.x2 += kp.x2 + km.x2;
    }
    return s;
  };

  // Fixed blocks (one per row) reduced in row order.
  std::vector<Point> rows(ny);
  parallel_for(static_cast<std::size_t>(ny), cfg.threads, [&](std::size_t jr) {
    Point acc{0.0, 0.0};
    const int j = static_cast<int>(jr);
    for (int i = 0; i < nx; ++i) {
      const double cx = x0 + (i + 0.5) * h, cy = ybase + (j + 0.5) * h;
      if (cut[static_cast<std::size_t>(j) * nx + i]) {
        const double hs = h / 4;
        for (int si = 0; si < 4; ++si)
          for (int sj = 0; sj < 4; ++sj) {
            const Point y{x0 + i * h + (si + 0.5) * hs, ybase + j * h + (sj + 0.5) * hs};
            const int theta = region.indicator(y);
            if (theta != 0) acc += (theta * hs * hs) * image_sum(y);
          }
      } else {
        const Point y{cx, cy};
        const int theta = region.indicator(y);
        if (theta != 0) acc += (theta * h * h) * image_sum(y);
      }
    }
    rows[jr] = acc;
  });
  Point u{0.0, 0.0};
  for (const auto& r : rows) u += r;
  return -u;
}

Point h_alpha_direct(Point x, double a) {
  const double c = constant(a);
  Point s{0.0, 0.0};
  for (int j = kDirectImages; j >= 1; --j) {
    const Point kp = kernel({x.x1 - j, x.x2}, a, c), km = kernel({x.x1 + j, x.x2}, a, c);
    s.x1 += kp.x1 + km.x1;
    s.x2 += kp.x2 + km.x2;
  }
  // Remaining images: sum_{j > J} f(j) ~ int_{J + 1/2}^inf f(s) ds.
  boost::math::quadrature::tanh_sinh<double> ts;
  auto pair = [&](double t, int comp) {
    const Point kp = kernel({x.x1 - t, x.x2}, a, c), km = kernel({x.x1 + t, x.x2}, a, c);
    return comp == 0 ? kp.x1 + km.x1 : kp.x2 + km.x2;
  };
  const double inf = std::numeric_limits<double>::infinity();
  s.x1 += ts.integrate([&](double t) { return pair(t, 0); }, kDirectImages + 0.5, inf);
  s.x2 += ts.integrate([&](double t) { return pair(t, 1); }, kDirectImages + 0.5, inf);
  return s;
}

double r_alpha_path_integral(Point x, double alpha, double tolerance) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(Errc::invalid_argument, "alpha must lie in (0, 1]");
  if (x.x1 == 0.0 && x.x2 == 0.0) return 0.0;
  if (x.x2 == 0.0 && std::abs(x.x1) >= 1.0)
    fail(Errc::path_singularity, "segment from the origin passes through a lattice point");
  auto integrand = [&](double t) {
    const Point H = h_alpha_direct({t * x.x1, t * x.x2}, alpha);
    return H.x2 * x.x1 - H.x1 * x.x2;
  };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 15, tolerance,
                                                                        &err);
}

}  // namespace asqg::oracle
