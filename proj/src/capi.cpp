#include "asqg/asqg.h"

#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <cstring>
#include <new>
#include <limits>
#include <string>

#include "asqg/cde.hpp"
#include "asqg/diagnostics.hpp"
#include "asqg/errors.hpp"
#include "asqg/io.hpp"
#include "asqg/oracle.hpp"

struct asqg_chain {
  std::vector<asqg::Curve> curves;
};

namespace {

thread_local std::string last_error;

template <class F>
asqg_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return ASQG_OK;
  } catch (const asqg::Error& e) {
    last_error = e.what();
    return static_cast<asqg_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    last_error = e.what();
    return ASQG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return ASQG_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

asqg_options resolve(const asqg_options* opt) {
  asqg_options o;
  asqg_default_options(&o);
  return opt ? *opt : o;
}

asqg::KernelConfig kernel_config(double alpha, const asqg_options& o) {
  return {alpha, o.tail_tolerance, o.max_images};
}

asqg::QuadratureConfig quad_config(const asqg_options& o) {
  asqg::QuadratureConfig q;
  q.near_field_cells = o.near_field_cells;
  q.near_field_order = o.near_field_order;
  q.interaction = o.self_only ? asqg::Interaction::self_only : asqg::Interaction::chain_wide;
  q.threads = o.threads;
  return q;
}

asqg::Chain to_chain(const asqg_chain* c) {
  if (!c) asqg::fail(asqg::Errc::invalid_argument, "null chain");
  return asqg::Chain(c->curves);
}

void need(const void* p, const char* what) {
  if (!p) asqg::fail(asqg::Errc::invalid_argument, std::string("null ") + what);
}

void copy_velocity(const asqg::Velocity& v, double* out) {
  std::size_t k = 0;
  for (const auto& curve : v)
    for (const auto& p : curve) {
      out[k++] = p.x1;
      out[k++] = p.x2;
    }
}

}  // namespace

extern "C" {

const char* asqg_last_error(void) { return last_error.c_str(); }

const char* asqg_status_string(asqg_status s) {
  if (s == ASQG_OK) return "ok";
  if (s == ASQG_ERR_INTERNAL) return "internal error";
  if (s >= ASQG_ERR_INVALID_ARGUMENT && s <= ASQG_ERR_PARSE)
    return asqg::to_string(static_cast<asqg::Errc>(static_cast<int>(s)));
  return "unknown status";
}

void asqg_free_string(char* s) { std::free(s); }

void asqg_default_options(asqg_options* opt) {
  if (!opt) return;
  const asqg::KernelConfig k;
  const asqg::QuadratureConfig q;
  opt->tail_tolerance = k.tail_tolerance;
  opt->max_images = k.max_images;
  opt->near_field_cells = q.near_field_cells;
  opt->near_field_order = q.near_field_order;
  opt->self_only = 0;
  opt->threads = 0;
}

asqg_status asqg_c_alpha(double alpha, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = asqg::c_alpha(alpha);
  });
}

asqg_status asqg_kernel_eval(double alpha, const asqg_options* opt, double x1, double x2, unsigned flags,
                             asqg_kernel_values* out) {
  return guarded([&] {
    need(out, "output");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    *out = {nan, nan, nan, {nan, nan}, {nan, nan}, {nan, nan}};
    const asqg::LatticeKernel k(kernel_config(alpha, resolve(opt)));
    const asqg::Point x{x1, x2};
    const bool r_only = flags & ASQG_KERNEL_R_ONLY, free_only = flags & ASQG_KERNEL_FREE_ONLY;
    if (r_only && free_only) asqg::fail(asqg::Errc::invalid_argument, "r-only and free-only are exclusive");
    if (!r_only) {
      out->green_free = k.green_free(x);
      const auto kf = k.k_free(x);
      out->k_free[0] = kf.x1;
      out->k_free[1] = kf.x2;
    }
    if (!free_only) {
      out->r = k.r_alpha(x);
      const auto h = k.h_alpha(x);
      out->h[0] = h.x1;
      out->h[1] = h.x2;
    }
    if (!r_only && !free_only) {
      out->green_periodic = k.green_periodic(x);
      const auto kp = k.k_periodic(x);
      out->k_periodic[0] = kp.x1;
      out->k_periodic[1] = kp.x2;
    }
  });
}

asqg_status asqg_oracle_r(double alpha, double x1, double x2, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = asqg::oracle::r_alpha_path_integral({x1, x2}, alpha);
  });
}

asqg_chain* asqg_chain_new(void) { return new (std::nothrow) asqg_chain(); }

asqg_status asqg_chain_add_curve(asqg_chain* chain, const double* xy, size_t M, int winding) {
  return guarded([&] {
    need(chain, "chain");
    need(xy, "node array");
    std::vector<asqg::Point> nodes(M);
    for (size_t i = 0; i < M; ++i) nodes[i] = {xy[2 * i], xy[2 * i + 1]};
    asqg::Curve c(std::move(nodes), winding);
    if (!chain->curves.empty() && chain->curves[0].size() != M)
      asqg::fail(asqg::Errc::invalid_argument, "all curves of a chain must share one grid size");
    chain->curves.push_back(std::move(c));
  });
}

asqg_status asqg_chain_load_snapshot(const char* path, asqg_chain** out, double* time) {
  return guarded([&] {
    need(path, "path");
    need(out, "output");
    const auto s = asqg::read_snapshot(path);
    auto* c = new asqg_chain();
    c->curves = s.chain.curves();
    *out = c;
    if (time) *time = s.time;
  });
}

asqg_status asqg_chain_save_snapshot(const asqg_chain* chain, const char* path, double time) {
  return guarded([&] {
    need(path, "path");
    asqg::write_snapshot(path, to_chain(chain), time);
  });
}

void asqg_chain_free(asqg_chain* chain) { delete chain; }

size_t asqg_chain_curve_count(const asqg_chain* chain) { return chain ? chain->curves.size() : 0; }

size_t asqg_chain_grid_size(const asqg_chain* chain) {
  return chain && !chain->curves.empty() ? chain->curves[0].size() : 0;
}

asqg_status asqg_chain_curve(const asqg_chain* chain, size_t curve, double* xy, int* winding) {
  return guarded([&] {
    need(chain, "chain");
    if (curve >= chain->curves.size()) asqg::fail(asqg::Errc::invalid_argument, "curve index out of range");
    const auto& c = chain->curves[curve];
    if (xy)
      for (size_t i = 0; i < c.size(); ++i) {
        xy[2 * i] = c[i].x1;
        xy[2 * i + 1] = c[i].x2;
      }
    if (winding) *winding = c.winding();
  });
}

asqg_status asqg_cde_velocity(const asqg_chain* chain, double alpha, const asqg_options* opt, double* out) {
  return guarded([&] {
    need(out, "output");
    const asqg_options o = resolve(opt);
    const asqg::LatticeKernel k(kernel_config(alpha, o));
    copy_velocity(asqg::cde_velocity(to_chain(chain), k, quad_config(o)), out);
  });
}

asqg_status asqg_cde_velocity_mollified(const asqg_chain* chain, double alpha, const asqg_options* opt,
                                        double epsilon, double* out) {
  return guarded([&] {
    need(out, "output");
    const asqg_options o = resolve(opt);
    const asqg::LatticeKernel k(kernel_config(alpha, o));
    const asqg::Mollifier m(epsilon);
    copy_velocity(asqg::cde_velocity_mollified(to_chain(chain), k, quad_config(o), m), out);
  });
}

asqg_status asqg_velocity_at_point(const asqg_chain* chain, double alpha, const asqg_options* opt, double x1,
                                   double x2, double* u) {
  return guarded([&] {
    need(u, "output");
    const asqg_options o = resolve(opt);
    const asqg::LatticeKernel k(kernel_config(alpha, o));
    const auto v = asqg::velocity_at_point({x1, x2}, to_chain(chain), k, quad_config(o));
    u[0] = v.x1;
    u[1] = v.x2;
  });
}

asqg_status asqg_diagnose(const asqg_chain* chain, double alpha, int m, asqg_diagnostics* out,
                          char** csv_header, char** csv_row, char** json) {
  return guarded([&] {
    need(out, "output");
    if (!(alpha > 0.0 && alpha <= 1.0)) asqg::fail(asqg::Errc::invalid_argument, "alpha must lie in (0, 1]");
    const asqg::Chain c = to_chain(chain);
    const auto rec = asqg::compute_diagnostics(c, 0.0, m, alpha);
    const auto F = asqg::chord_arc_F(c);
    out->F_inf = rec.F_inf;
    out->F0_inf = F.F0_inf;
    out->S0 = rec.S[0];
    out->sobolev_m = rec.sobolev_m;
    out->energy_S = rec.energy_S;
    out->separation = rec.separation;
    out->A_m = rec.A_m;
    out->T_star = std::isfinite(rec.S[0]) ? asqg::blowup_bound_T(rec.S[0], m, 1.0) : 0.0;
    try {
      out->epsilon0 = asqg::epsilon0(F.F0_inf, asqg::chain_sobolev_norm(c, 3), 1.0);
    } catch (const asqg::Error&) {
      out->epsilon0 = std::numeric_limits<double>::quiet_NaN();
    }
    if (csv_header) *csv_header = dup(rec.csv_header());
    if (csv_row) *csv_row = dup(rec.csv_row());
    if (json) *json = dup(rec.to_json());
  });
}

asqg_status asqg_patch_area(const asqg_chain* chain, double* out) {
  return guarded([&] {
    need(out, "output");
    const auto a = asqg::patch_area(to_chain(chain));
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  });
}

asqg_status asqg_simulate(const char* config_path, const char* out_dir, int threads, asqg_summary* summary) {
  return guarded([&] {
    need(config_path, "config path");
    auto cfg = asqg::load_scenario(config_path);
    if (out_dir) cfg.output_dir = out_dir;
    if (threads > 0) cfg.quad.threads = threads;
    if (cfg.alpha >= 1.0) asqg::fail(asqg::Errc::unsupported, "evolution requires alpha < 1");
    const auto s = asqg::simulate(cfg);
    if (summary) {
      summary->exit_code = s.exit_code;
      std::snprintf(summary->reason, sizeof summary->reason, "%s", asqg::to_string(s.reason).c_str());
      summary->t_final = s.t_final;
      summary->steps = s.steps;
    }
  });
}

}  // extern "C"
