#include "asqg/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <string>

#include "asqg/errors.hpp"

namespace asqg {

Rule gauss_legendre01(int n) {
  if (n < 1) fail(Errc::invalid_argument, "Gauss-Legendre order must be positive");
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<size_t>(n));
  if (!t) fail(Errc::invalid_argument, "cannot build Gauss-Legendre rule of order " + std::to_string(n));
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = 0.0, w = 0.0;
    gsl_integration_glfixed_point(0.0, 1.0, static_cast<size_t>(i), &x, &w, t);
    r.nodes[i] = x;
    r.weights[i] = w;
  }
  gsl_integration_glfixed_table_free(t);
  return r;
}

std::vector<double> gregory_weights(std::size_t n, double h, int order) {
  static const double gamma[] = {0.0, 1.0 / 12, 1.0 / 24, 19.0 / 720, 3.0 / 160, 863.0 / 60480};
  std::vector<double> w(n + 1, h);
  if (n == 0) return {0.0};
  w[0] = w[n] = h / 2;
  order = std::clamp(order, 0, 5);
  while (order > 0 && n + 1 < static_cast<std::size_t>(2 * (order + 1))) --order;
  // -h sum_k gamma_k (nabla^k f_n + (-1)^k Delta^k f_0)
  for (int k = 1; k <= order; ++k) {
    double binom = 1.0;
    for (int i = 0; i <= k; ++i) {
      if (i > 0) binom = binom * (k - i + 1) / i;
      const double sgn = ((k - i) % 2 == 0) ? 1.0 : -1.0;
      const double kk = (k % 2 == 0) ? 1.0 : -1.0;
      // Delta^k f_0 = sum_i (-1)^{k-i} C(k,i) f_i
      w[i] -= h * gamma[k] * kk * sgn * binom;
      // nabla^k f_n = sum_i (-1)^i C(k,i) f_{n-i}
      w[n - i] -= h * gamma[k] * ((i % 2 == 0) ? 1.0 : -1.0) * binom;
    }
  }
  return w;
}

}  // namespace asqg
