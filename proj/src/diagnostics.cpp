#include "asqg/diagnostics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "asqg/errors.hpp"
#include "asqg/parallel.hpp"

namespace asqg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Golden-section search for a maximum of f on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

// Coordinate ascent in (x, y) around a grid maximiser.
double refine_max(const std::function<double(double, double)>& f, double x, double y, double hx,
                  double hy, double ylo, double yhi) {
  double best = f(x, y);
  for (int round = 0; round < 4; ++round) {
    auto [xn, fx] = golden_max([&](double s) { return f(s, y); }, x - hx, x + hx);
    if (fx > best) {
      best = fx;
      x = xn;
    }
    auto [yn, fy] = golden_max([&](double s) { return f(x, s); }, std::max(ylo, y - hy),
                               std::min(yhi, y + hy));
    if (fy > best) {
      best = fy;
      y = yn;
    }
    hx *= 0.5;
    hy *= 0.5;
  }
  return best;
}

int effective_window(const Chain& chain, int j_window) {
  double extent = 0.0;
  for (const auto& c : chain) {
    double lo = kInf, hi = -kInf;
    for (const auto& p : c.nodes()) {
      lo = std::min(lo, p.x1);
      hi = std::max(hi, p.x1);
    }
    extent = std::max(extent, hi - lo + std::abs(c.winding()));
  }
  // A blown-up chain would otherwise ask for an unbounded scan.
  extent = std::min(extent, 1024.0);
  return std::max(j_window, static_cast<int>(std::ceil(extent)) + 1);
}

double inv_dist(Point d) {
  const double r = norm(d);
  return r == 0.0 ? kInf : 1.0 / r;
}

}  // namespace

ChordArcResult chord_arc_F(const Chain& chain, const ChordArcOptions& opt) {
  if (opt.j_window < 1) fail(Errc::invalid_argument, "j_window must be >= 1");
  const std::size_t M = chain.grid_size();
  const long N = static_cast<long>(M / 2);
  const int W = effective_window(chain, opt.j_window);
  ChordArcResult res;
  res.window = W;
  res.Fj_inf.assign(2 * W + 1, 0.0);
  const double h = kTwoPi / static_cast<double>(M);

  for (const auto& c : chain) {
    const auto d1 = c.derivative(1);
    // per-node maxima: [0] total F, [1] F_0, [2 + j + W] F_j; plus argmax of F and F_0
    struct Row {
      std::vector<double> fj;
      double F = -1.0, F0 = -1.0;
      long kF = 0, k0 = 0;
    };
    std::vector<Row> rows(M);
    std::vector<double> grid;
    if (opt.keep_grid) grid.assign(M * (M + 1), 0.0);
    parallel_for(M, opt.threads, [&](std::size_t i) {
      Row& row = rows[i];
      row.fj.assign(2 * W + 1, 0.0);
      const long li = static_cast<long>(i);
      for (long k = -N; k <= N; ++k) {
        double F0;
        Point d;
        if (k == 0) {
          F0 = inv_dist(d1[i]);
        } else {
          d = c[i] - c.node(li - k);
          const double r = norm(d);
          F0 = r == 0.0 ? kInf : std::abs(k * h) / r;
        }
        double F = F0;
        row.fj[W] = std::max(row.fj[W], F0);
        for (int j = -W; j <= W; ++j) {
          if (j == 0) continue;
          const double fj = inv_dist(d - lattice_point(j));
          row.fj[j + W] = std::max(row.fj[j + W], fj);
          F = std::max(F, fj);
        }
        if (F > row.F) {
          row.F = F;
          row.kF = k;
        }
        if (F0 > row.F0) {
          row.F0 = F0;
          row.k0 = k;
        }
        if (opt.keep_grid) grid[i * (M + 1) + static_cast<std::size_t>(k + N)] = F;
      }
    });
    std::size_t iF = 0, i0 = 0;
    for (std::size_t i = 0; i < M; ++i) {
      if (rows[i].F > rows[iF].F) iF = i;
      if (rows[i].F0 > rows[i0].F0) i0 = i;
      for (int j = 0; j <= 2 * W; ++j) res.Fj_inf[j] = std::max(res.Fj_inf[j], rows[i].fj[j]);
    }
    double F = rows[iF].F, F0 = rows[i0].F0;
    if (opt.refine && std::isfinite(F) && std::isfinite(F0)) {
      auto f0 = [&](double eta, double beta) {
        if (std::abs(beta) < 1e-14) return inv_dist(c.evaluate(eta, 1));
        const double r = norm(c.evaluate(eta) - c.evaluate(eta - beta));
        return r == 0.0 ? kInf : std::abs(beta) / r;
      };
      auto ftot = [&](double eta, double beta) {
        double v = f0(eta, beta);
        const Point d = c.evaluate(eta) - c.evaluate(eta - beta);
        for (int j = -W; j <= W; ++j)
          if (j != 0) v = std::max(v, inv_dist(d - lattice_point(j)));
        return v;
      };
      F0 = std::max(F0, refine_max(f0, c.eta(i0), rows[i0].k0 * h, h, h, -kPi, kPi));
      F = std::max({F, F0, refine_max(ftot, c.eta(iF), rows[iF].kF * h, h, h, -kPi, kPi)});
    }
    res.F_inf = std::max(res.F_inf, F);
    res.F0_inf = std::max(res.F0_inf, F0);
    if (opt.keep_grid) res.grid.push_back(std::move(grid));
  }
  return res;
}

double chain_l2_norm(const Chain& chain) { return chain_sobolev_norm(chain, 0); }

double chain_sobolev_norm(const Chain& chain, int m) {
  double s = 0.0;
  for (const auto& c : chain) s += std::pow(c.sobolev_norm(m), 2);
  return std::sqrt(s);
}

double weights_S(double F, double g, int n, double alpha) {
  if (n < 0) fail(Errc::invalid_argument, "weights_S needs n >= 0");
  if (n == 0) return std::pow(F, alpha) + g * g;
  double s = 0.0;
  for (int j = 1; j <= n; ++j) s += std::pow(F, j + alpha) + std::pow(g, j);
  return s;
}

double weights_S(const Chain& chain, int n, double F_inf, double alpha) {
  return weights_S(F_inf, chain_l2_norm(chain), n, alpha);
}

double blowup_bound_T(double S0, int m, double C) {
  if (!(S0 > 0.0) || !(C > 0.0) || m < 0) fail(Errc::invalid_argument, "blowup bound needs S0, C > 0");
  const double p = 2.0 * m + 2.0;
  return 1.0 / (p * C * std::pow(S0, p));
}

double energy_bound(double S0, int m, double T, double C) {
  const double p = 2.0 * m + 2.0;
  const double base = std::pow(S0, -p) - p * C * T;
  if (base <= 0.0) return kInf;
  return std::pow(base, -1.0 / p);
}

double epsilon0(double F0, double H3, double C) {
  if (H3 == 0.0) fail(Errc::degenerate_chain, "epsilon0 needs a nonzero H^3 norm");
  if (!(F0 > 0.0) || !std::isfinite(F0)) fail(Errc::invalid_argument, "epsilon0 needs finite positive F0");
  return C / (F0 * H3) * std::min(1.0 / (F0 * H3 * H3), 1.0);
}

double epsilon0(const Chain& chain, double C) {
  ChordArcOptions opt;
  const auto F = chord_arc_F(chain, opt);
  return epsilon0(F.F0_inf, chain_sobolev_norm(chain, 3), C);
}

double separation(const Chain& chain, int threads) {
  if (chain.size() < 2) return kInf;
  const std::size_t M = chain.grid_size();
  const double h = kTwoPi / static_cast<double>(M);
  double best = kInf;
  for (std::size_t a = 0; a < chain.size(); ++a) {
    for (std::size_t b = a + 1; b < chain.size(); ++b) {
      const Curve& A = chain[a];
      const Curve& B = chain[b];
      std::vector<double> dist(M, kInf);
      std::vector<std::size_t> arg(M, 0);
      parallel_for(M, threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < M; ++j) {
          const double r = norm(covering_map(A[i] - B[j]));
          if (r < dist[i]) {
            dist[i] = r;
            arg[i] = j;
          }
        }
      });
      const std::size_t i = static_cast<std::size_t>(std::min_element(dist.begin(), dist.end()) - dist.begin());
      auto f = [&](double s, double t) { return -norm(covering_map(A.evaluate(s) - B.evaluate(t))); };
      const double refined = -refine_max(f, A.eta(i), B.eta(arg[i]), h, h, -kInf, kInf);
      best = std::min({best, dist[i], refined});
    }
  }
  return best;
}

std::vector<double> patch_area(const Chain& chain) {
  std::vector<double> out;
  for (const auto& c : chain) {
    const auto d1 = c.derivative(1);
    const double h = kTwoPi / static_cast<double>(c.size());
    double s = 0.0;
    if (c.winding() == 0) {
      for (std::size_t i = 0; i < c.size(); ++i) s += 0.5 * (c[i].x1 * d1[i].x2 - c[i].x2 * d1[i].x1);
    } else {
      for (std::size_t i = 0; i < c.size(); ++i) s += c[i].x2 * d1[i].x1;
    }
    out.push_back(h * s);
  }
  return out;
}

double modulus_mu(double x) {
  if (x < 0.0) fail(Errc::invalid_argument, "modulus_mu needs x >= 0");
  if (x == 0.0) return 0.0;
  if (x < std::exp(-1.0)) return -std::exp(1.0) * x * std::log(x);
  return x / std::exp(1.0);
}

double modulus_lemma_min(double a) {
  if (a <= 0.0) fail(Errc::invalid_argument, "modulus_lemma_min needs a > 0");
  if (a < std::exp(-1.0)) return -std::exp(1.0) * a * std::log(a);
  return 1.0;
}

double bound_coefficient_Am(double S_m, double h_norm, int m) {
  double sum = 0.0;
  for (int j = 0; j <= m + 1; ++j) sum += std::pow(h_norm, j);
  return S_m * sum;
}

double bound_coefficient_Am(const Chain& chain, int m, double alpha, double F_inf) {
  return bound_coefficient_Am(weights_S(chain, m, F_inf, alpha), chain_sobolev_norm(chain, m + 1), m);
}

namespace {
std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}
nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }
}  // namespace

std::string DiagnosticsRecord::csv_header() const {
  std::string s = "time,F_inf";
  for (std::size_t n = 0; n < S.size(); ++n) s += ",S_" + std::to_string(n);
  s += ",sobolev_m,energy_S";
  for (std::size_t k = 0; k < area.size(); ++k) s += ",area_" + std::to_string(k);
  s += ",separation,A_m";
  return s;
}

std::string DiagnosticsRecord::csv_row() const {
  std::string s = fmt(time) + "," + fmt(F_inf);
  for (double v : S) s += "," + fmt(v);
  s += "," + fmt(sobolev_m) + "," + fmt(energy_S);
  for (double v : area) s += "," + fmt(v);
  s += "," + fmt(separation) + "," + fmt(A_m);
  return s;
}

std::string DiagnosticsRecord::to_json() const {
  nlohmann::json j;
  j["time"] = num(time);
  j["F_inf"] = num(F_inf);
  j["S"] = nlohmann::json::array();
  for (double v : S) j["S"].push_back(num(v));
  j["sobolev_m"] = num(sobolev_m);
  j["energy_S"] = num(energy_S);
  j["area"] = nlohmann::json::array();
  for (double v : area) j["area"].push_back(num(v));
  j["separation"] = num(separation);
  j["A_m"] = num(A_m);
  return j.dump();
}

DiagnosticsRecord compute_diagnostics(const Chain& chain, double time, int m, double alpha,
                                      const ChordArcOptions& opt) {
  DiagnosticsRecord r;
  r.time = time;
  r.F_inf = chord_arc_F(chain, opt).F_inf;
  const double g = chain_l2_norm(chain);
  for (int n = 0; n <= m; ++n) r.S.push_back(weights_S(r.F_inf, g, n, alpha));
  r.sobolev_m = chain_sobolev_norm(chain, m);
  r.energy_S = r.F_inf + r.sobolev_m * r.sobolev_m;
  r.area = patch_area(chain);
  r.separation = separation(chain, opt.threads);
  r.A_m = bound_coefficient_Am(chain, m, alpha, r.F_inf);
  return r;
}

bool FBoundMonitor::update(double t, double F, double A2) {
  const double g = A2 * F * F;
  if (!started_) {
    started_ = true;
    F0_ = F;
    t_prev_ = t;
    g_prev_ = g;
    return true;
  }
  integral_ += 0.5 * (g + g_prev_) * (t - t_prev_);
  t_prev_ = t;
  g_prev_ = g;
  const bool ok = F <= F0_ + C_ * integral_ * (1.0 + 1e-12);
  if (!ok) ++violations_;
  return ok;
}

}  // namespace asqg
