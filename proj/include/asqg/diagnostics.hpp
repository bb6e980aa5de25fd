#pragma once

#include <string>
#include <vector>

#include "asqg/contour.hpp"

namespace asqg {

struct ChordArcResult {
  /// sup of F = max_j F_j over all curves, after refinement.
  double F_inf = 0.0;
  /// sup of F_0 = |beta| / |delta_beta| alone.
  double F0_inf = 0.0;
  /// Maxima of F_j for j = -window..window (index j + window); F_0 at the centre.
  std::vector<double> Fj_inf;
  int window = 0;
  /// Optional grid values F(eta_i, beta_k), beta_k = 2 pi k / M, k = -M/2..M/2,
  /// stored per curve row-major as [i * (M + 1) + (k + M/2)].
  std::vector<std::vector<double>> grid;
};

struct ChordArcOptions {
  int j_window = 3;
  bool refine = true;
  bool keep_grid = false;
  int threads = 0;
};

/// Chord-arc functional. Coincident points give +infinity, not an exception.
ChordArcResult chord_arc_F(const Chain& chain, const ChordArcOptions& opt = {});

/// L2 norm of the de-wound chain.
double chain_l2_norm(const Chain& chain);
/// Sobolev norm of the chain (root of the summed squares over curves).
double chain_sobolev_norm(const Chain& chain, int m);

/// S_0 = F^a + |g|^2; S_n = sum_{j=1..n} (F^{j+a} + |g|^j), |g| the L2 norm.
double weights_S(double F_inf, double l2_norm, int n, double alpha);
double weights_S(const Chain& chain, int n, double F_inf, double alpha);

/// T* = 1 / ((2m+2) C S0^{2m+2}).
double blowup_bound_T(double S0, int m, double C = 1.0);
/// (S0^{-(2m+2)} - (2m+2) C T)^{-1/(2m+2)}; +infinity once T >= T*.
double energy_bound(double S0, int m, double T, double C = 1.0);

/// eps_0 = C / (F0 H3) * min(1 / (F0 H3^2), 1).
double epsilon0(double F0_inf, double h3_norm, double C = 1.0);
double epsilon0(const Chain& chain, double C = 1.0);

/// Minimum distance between distinct curves including horizontal translates;
/// +infinity for a single curve.
double separation(const Chain& chain, int threads = 0);

/// Oriented area per curve: 1/2 int (g1 g2' - g2 g1') for closed curves and
/// int g2 g1' (area between curve and axis per period) for winding curves.
std::vector<double> patch_area(const Chain& chain);

/// mu(0) = 0, -e x log x for x < 1/e, x / e otherwise.
double modulus_mu(double x);
/// Closed-form minimum from the log-Lipschitz lemma: -e a log a below 1/e, 1 above.
double modulus_lemma_min(double a);

/// ||S_m||_inf * sum_{j=0..m+1} ||g||_{H^{m+1}}^j, with the unknown constant set to 1.
double bound_coefficient_Am(double S_m, double h_norm, int m);
double bound_coefficient_Am(const Chain& chain, int m, double alpha, double F_inf);

struct DiagnosticsRecord {
  double time = 0.0;
  double F_inf = 0.0;
  std::vector<double> S;  // S_0..S_m
  double sobolev_m = 0.0;
  double energy_S = 0.0;
  std::vector<double> area;
  double separation = 0.0;
  double A_m = 0.0;

  std::string csv_header() const;
  std::string csv_row() const;
  std::string to_json() const;
};

DiagnosticsRecord compute_diagnostics(const Chain& chain, double time, int m, double alpha,
                                      const ChordArcOptions& opt = {});

/// Running check of ||F(t)|| <= ||F(0)|| + C int A_2(s) ||F(s)||^2 ds.
class FBoundMonitor {
 public:
  explicit FBoundMonitor(double C = 1.0) : C_(C) {}
  /// Returns false when the sample violates the running bound.
  bool update(double t, double F, double A2);
  int violations() const { return violations_; }

 private:
  double C_;
  bool started_ = false;
  double F0_ = 0.0, t_prev_ = 0.0, g_prev_ = 0.0, integral_ = 0.0;
  int violations_ = 0;
};

}  // namespace asqg
