#include <doctest.h>

#include <cmath>

#include "asqg/cde.hpp"
#include "asqg/errors.hpp"
#include "asqg/oracle.hpp"
#include "support.hpp"

using namespace asqg;

namespace {

LatticeKernel kernel(double alpha) {
  KernelConfig cfg;
  cfg.alpha = alpha;
  return LatticeKernel(cfg);
}

double max_norm(const Velocity& v) {
  double m = 0;
  for (const auto& c : v)
    for (const Point& p : c) m = std::max(m, norm(p));
  return m;
}

double max_diff(const Velocity& a, const Velocity& b) {
  double m = 0;
  for (std::size_t c = 0; c < a.size(); ++c)
    for (std::size_t i = 0; i < a[c].size(); ++i) m = std::max(m, norm(a[c][i] - b[c][i]));
  return m;
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc{};
}

}  // namespace

TEST_CASE("flat layer is stationary") {
  const auto k = kernel(0.5);
  const auto L = cde_velocity(testing::flat_layer(128, 0.3), k, QuadratureConfig{});
  CHECK(max_norm(L) <= 1e-12);
}

TEST_CASE("circle in free space moves tangentially") {
  const auto k = kernel(0.5);
  const Chain ch({make_circle(64, 0.1, {0, 0})});
  const auto L = cde_velocity(ch, k, QuadratureConfig{}, KernelPart::free_space);
  double normal = 0;
  for (std::size_t i = 0; i < 64; ++i) normal = std::max(normal, std::abs(dot(L[0][i], ch[0][i])) / 0.1);
  CHECK(normal <= 1e-3 * max_norm(L));
  // the full kernel adds a small strain from the periodic images
  const auto Lf = cde_velocity(ch, k, QuadratureConfig{});
  double normal_full = 0;
  for (std::size_t i = 0; i < 64; ++i) normal_full = std::max(normal_full, std::abs(dot(Lf[0][i], ch[0][i])) / 0.1);
  CHECK(normal_full <= 1e-2 * max_norm(Lf));
}

TEST_CASE("parts add up") {
  const auto k = kernel(0.6);
  const Chain ch({testing::tilted_ellipse(64)});
  const QuadratureConfig q;
  const auto full = cde_velocity(ch, k, q, KernelPart::full);
  const auto fs = cde_velocity(ch, k, q, KernelPart::free_space);
  const auto lat = cde_velocity(ch, k, q, KernelPart::lattice);
  double d = 0;
  for (std::size_t i = 0; i < 64; ++i) d = std::max(d, norm(full[0][i] - fs[0][i] - lat[0][i]));
  CHECK(d < 1e-13 * max_norm(full));
}

TEST_CASE("quadrature converges under refinement") {
  const auto k = kernel(0.5);
  const QuadratureConfig q;
  const auto ref = cde_velocity(Chain({testing::tilted_ellipse(256)}), k, q);
  double err[3];
  const std::size_t Ms[3] = {16, 32, 64};
  for (int s = 0; s < 3; ++s) {
    const std::size_t M = Ms[s];
    const auto L = cde_velocity(Chain({testing::tilted_ellipse(M)}), k, q);
    err[s] = 0;
    for (std::size_t i = 0; i < M; ++i) err[s] = std::max(err[s], norm(L[0][i] - ref[0][i * (256 / M)]));
  }
  MESSAGE("errors " << err[0] << " " << err[1] << " " << err[2]);
  CHECK(std::log2(err[0] / err[1]) >= 1.5);
}

TEST_CASE("equivariance under translations and reflection") {
  const auto k = kernel(0.7);
  const QuadratureConfig q;
  const Chain ch({testing::tilted_ellipse(64), make_circle(64, 0.1, {-0.2, 0.6})});
  const auto L = cde_velocity(ch, k, q);
  const double scale = max_norm(L);
  CHECK(max_diff(L, cde_velocity(ch.translated({0.37, 0}), k, q)) <= 1e-12 * scale);
  CHECK(max_diff(L, cde_velocity(ch.translated({0, 0.9}), k, q)) <= 1e-12 * scale);

  std::vector<Curve> mirrored;
  for (const Curve& c : ch) {
    std::vector<Point> n(64);
    for (std::size_t i = 0; i < 64; ++i) {
      const Point p = c[(64 - i) % 64];
      n[i] = {-p.x1, p.x2};
    }
    mirrored.emplace_back(n, 0);
  }
  const auto Lm = cde_velocity(Chain(mirrored), k, q);
  double d = 0;
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < 64; ++i) {
      const Point p = L[c][(64 - i) % 64];
      d = std::max(d, norm(Lm[c][i] - Point{p.x1, -p.x2}));
    }
  CHECK(d <= 1e-12 * scale);
}

TEST_CASE("thread count does not change results") {
  const auto k = kernel(0.5);
  QuadratureConfig q1, q3;
  q1.threads = 1;
  q3.threads = 3;
  const Chain ch({testing::tilted_ellipse(64), make_circle(64, 0.1, {0.2, 0.6})});
  const auto a = cde_velocity(ch, k, q1), b = cde_velocity(ch, k, q3);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < 64; ++i) CHECK(a[c][i] == b[c][i]);
}

TEST_CASE("guards") {
  const auto k = kernel(0.5);
  const QuadratureConfig q;
  const Curve eight = sample_curve(64, 0, [](double e) { return Point{0.2 * std::sin(2 * e), 0.2 * std::sin(e)}; });
  CHECK(code_of([&] { cde_velocity(Chain({eight}), k, q); }) == Errc::self_intersection);
  CHECK(code_of([&] { cde_velocity(Chain({make_circle(64, 0.5, {0, 0})}), k, q); }) == Errc::lattice_collision);
  CHECK(code_of([&] { pairing(Chain({make_circle(64, 0.2, {0, 0})}), 3, k, q); }) == Errc::unsupported);
}

TEST_CASE("velocity at a point") {
  const auto k = kernel(0.5);
  const QuadratureConfig q;
  const Chain circle({make_circle(64, 0.2, {0, 0})});
  const Point u = velocity_at_point({0, 0.5}, circle, k, q);
  CHECK(std::abs(u.x2) < 1e-12 * norm(u) + 1e-15);
  CHECK(std::abs(u.x1) > 0);
  const Point v = velocity_at_point({0.3, 0.1}, testing::flat_layer(64, 0.3), k, q);
  CHECK(std::abs(v.x2) < 1e-12);
  CHECK(code_of([&] { velocity_at_point({0.2, 0.0}, circle, k, q); }) == Errc::boundary_evaluation);

  const Chain e({make_ellipse(128, 0.3, 0.15, {0, 0})});
  oracle::AreaQuadratureConfig oc;
  oc.cells_per_unit = 512;
  const Point x{0.4, 0.2};
  const Point ref = oracle::velocity_area_integral(x, e, oc);
  const Point got = velocity_at_point(x, e, k, q);
  MESSAGE("relative difference to the area oracle " << norm(got - ref) / norm(ref));
  CHECK(norm(got - ref) <= 1e-4 * norm(ref));
}

TEST_CASE("pairing forms") {
  const auto k = kernel(0.5);
  const QuadratureConfig q;
  const Chain e({testing::tilted_ellipse(64)});
  for (int m = 0; m <= 2; ++m) {
    const Pairing p = pairing(e, m, k, q);
    CHECK(std::abs(p.direct - p.symmetric) <= 1e-6 * std::max(std::abs(p.direct), 1e-12) + 1e-14);
  }
  const Pairing fs = pairing(e, 1, k, q, KernelPart::free_space);
  CHECK(std::abs(fs.symmetric) < 1e-6);
  const Pairing flat = pairing(testing::flat_layer(64, 0.3), 1, k, q);
  CHECK(std::abs(flat.direct) < 1e-12);
}
