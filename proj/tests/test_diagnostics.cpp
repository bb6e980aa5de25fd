#include <doctest.h>

#include <cmath>
#include <limits>

#include "asqg/diagnostics.hpp"
#include "asqg/errors.hpp"
#include "support.hpp"

using namespace asqg;

TEST_CASE("chord-arc functional: unit circle") {
  const Chain c({make_circle(64, 1.0, {0, 0})});
  ChordArcOptions opt;
  opt.keep_grid = true;
  const auto r = chord_arc_F(c, opt);
  CHECK(std::abs(r.F0_inf - kPi / 2) < 1e-6);
  // beta = 0 diagonal is 1 / |gamma'| = 1; the image at n_{+-1} is at distance 1 there too
  const std::size_t M = 64;
  for (std::size_t i = 0; i < M; i += 8) CHECK(r.grid[0][i * (M + 1) + M / 2] == doctest::Approx(1.0).epsilon(1e-12));
  // max_{j != 0} F_j <= F
  for (std::size_t j = 0; j < r.Fj_inf.size(); ++j) CHECK(r.Fj_inf[j] <= r.F_inf);
}

TEST_CASE("chord-arc functional: flat front") {
  const Chain f({make_front(64, 0.3, 0.0, 1)});
  const auto r = chord_arc_F(f);
  CHECK(r.F0_inf == doctest::Approx(kTwoPi).epsilon(1e-9));
  CHECK(r.Fj_inf[r.window + 1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.Fj_inf[r.window - 1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.F_inf == doctest::Approx(kTwoPi).epsilon(1e-9));
}

TEST_CASE("chord-arc functional: coincident points give infinity") {
  const Curve eight = sample_curve(64, 0, [](double e) { return Point{0.2 * std::sin(2 * e), 0.2 * std::sin(e)}; });
  CHECK(chord_arc_F(Chain({eight})).F_inf > 1e12);
}

TEST_CASE("weights, blow-up horizon, energy bound") {
  CHECK(weights_S(1.0, 0.0, 0, 0.5) == doctest::Approx(1.0));
  CHECK(weights_S(2.0, 1.0, 2, 0.5) == doctest::Approx(6 * std::sqrt(2.0) + 2).epsilon(1e-14));
  double prev = 0;
  for (int n = 0; n <= 5; ++n) {
    const double s = weights_S(1.7, 0.8, n, 0.3);
    if (n > 0) CHECK(s >= prev);
    prev = s;
  }
  CHECK(blowup_bound_T(1.0, 3) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(blowup_bound_T(2.0, 3) == doctest::Approx(0.125 / 256).epsilon(1e-15));
  CHECK(energy_bound(1.7, 3, 0.0) == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(std::isinf(energy_bound(1.0, 3, 0.2)));
  CHECK(energy_bound(1.0, 3, 0.1) > 1.0);
}

TEST_CASE("epsilon0 plug-in values") {
  CHECK(epsilon0(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(epsilon0(2.0, 2.0) == doctest::Approx(1.0 / 32).epsilon(1e-15));
  CHECK(epsilon0(2.0, 2.0, 3.0) == doctest::Approx(3.0 / 32).epsilon(1e-15));
  CHECK_THROWS_AS(epsilon0(1.0, 0.0), Error);
  const Chain c({make_circle(64, 0.2, {0, 0})});
  CHECK(epsilon0(c) > 0);
}

TEST_CASE("separation") {
  CHECK(separation(testing::flat_layer(64, 0.3)) == doctest::Approx(0.6).epsilon(1e-12));
  const Chain two({make_circle(64, 0.1, {0, 0.5}), make_circle(64, 0.1, {0, -0.5})});
  CHECK(separation(two) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(std::isinf(separation(Chain({make_circle(64, 0.4, {0, 0})}))));
  // the image of the second curve at x1 - 1 is the nearest
  const Chain side({make_circle(64, 0.1, {-0.35, 0}), make_circle(64, 0.1, {0.35, 0})});
  CHECK(separation(side) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("patch area") {
  CHECK(patch_area(Chain({make_circle(64, 1.0, {0, 0})}))[0] == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(patch_area(Chain({make_circle(64, 1.0, {0, 0}, -1)}))[0] == doctest::Approx(-kPi).epsilon(1e-13));
  CHECK(patch_area(Chain({make_front(64, 0.3, 0.0, 1)}))[0] == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(patch_area(Chain({make_front(64, 0.3, 0.05, 2)}))[0] == doctest::Approx(0.3).epsilon(1e-13));
  const Curve e = testing::tilted_ellipse(64);
  const double a = patch_area(Chain({e}))[0];
  CHECK(a == doctest::Approx(kPi * 0.3 * 0.15).epsilon(1e-12));
  CHECK(std::abs(patch_area(Chain({e.resample(96)}))[0] - a) <= 1e-10);
  CHECK(std::abs(patch_area(Chain({e.reversed()}))[0] + a) <= 1e-12);
  // shifting the grid by a fraction of a cell
  const Curve shifted = sample_curve(64, 0, [&](double t) { return e.evaluate(t + 0.37); });
  CHECK(std::abs(patch_area(Chain({shifted}))[0] - a) <= 1e-10);
}

TEST_CASE("modulus of continuity") {
  CHECK(modulus_mu(0.0) == 0.0);
  CHECK(modulus_mu(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(modulus_mu(std::exp(-2.0)) == doctest::Approx(2 * std::exp(-1.0)).epsilon(1e-15));
  for (double a : {1e-6, 1e-3, 0.05, 0.2, 0.36}) CHECK(std::abs(modulus_mu(a) - modulus_lemma_min(a)) < 1e-12);
  CHECK(modulus_lemma_min(1.0) == 1.0);
}

TEST_CASE("bound coefficient A_m") {
  CHECK(bound_coefficient_Am(2.5, 0.0, 2) == doctest::Approx(2.5));
  CHECK(bound_coefficient_Am(2.0, 1.0, 2) == doctest::Approx(8.0));
  CHECK(bound_coefficient_Am(2.0, 0.5, 1) <= bound_coefficient_Am(2.0, 0.6, 1));
  // flat front: de-wound part is the constant (-1/2, h) and gamma' = (1 / 2 pi, 0)
  const Chain f({make_front(64, 0.3, 0.0, 1)});
  const double l2 = std::sqrt(kTwoPi * 0.34);
  const double h = std::sqrt(kTwoPi * 0.34 + 1 / kTwoPi);
  CHECK(chain_l2_norm(f) == doctest::Approx(l2).epsilon(1e-12));
  CHECK(chain_sobolev_norm(f, 3) == doctest::Approx(h).epsilon(1e-12));
  const double S2 = weights_S(kTwoPi, l2, 2, 0.5);
  CHECK(bound_coefficient_Am(f, 2, 0.5, kTwoPi) == doctest::Approx(S2 * (1 + h + h * h + h * h * h)).epsilon(1e-12));
}

TEST_CASE("diagnostics record serialization") {
  const Chain two({make_circle(32, 0.1, {0, 0.5}), make_circle(32, 0.1, {0, -0.5})});
  const auto r = compute_diagnostics(two, 0.25, 2, 0.5);
  CHECK(r.csv_header() == "time,F_inf,S_0,S_1,S_2,sobolev_m,energy_S,area_0,area_1,separation,A_m");
  CHECK(r.S.size() == 3);
  CHECK(r.energy_S == doctest::Approx(r.F_inf + r.sobolev_m * r.sobolev_m));
  CHECK(r.csv_row().rfind("0.25,", 0) == 0);
  const std::string j = r.to_json();
  for (const char* key : {"\"time\"", "\"F_inf\"", "\"S\"", "\"sobolev_m\"", "\"energy_S\"", "\"area\"", "\"separation\"", "\"A_m\""})
    CHECK(j.find(key) != std::string::npos);
  const auto single = compute_diagnostics(Chain({make_circle(32, 0.1, {0, 0})}), 0, 1, 0.5);
  CHECK(single.to_json().find("\"separation\":null") != std::string::npos);
}

TEST_CASE("F bound monitor") {
  FBoundMonitor m;
  CHECK(m.update(0.0, 2.0, 1.0));
  CHECK(m.update(0.1, 2.1, 1.0));
  CHECK_FALSE(m.update(0.2, 50.0, 0.0));
  CHECK(m.violations() == 1);
}
