#include "asqg/evolution.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "asqg/errors.hpp"

namespace asqg {
namespace {

Chain axpy(const Chain& base, double s, const Velocity& v) {
  std::vector<Curve> out;
  out.reserve(base.size());
  for (std::size_t c = 0; c < base.size(); ++c) {
    std::vector<Point> nodes(base[c].nodes());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] += s * v[c][i];
    out.emplace_back(std::move(nodes), base[c].winding());
  }
  return Chain(std::move(out));
}

}  // namespace

Chain rk4_step(const Chain& chain, double dt, const VelocityFn& velocity) {
  const Velocity k1 = velocity(chain);
  const Velocity k2 = velocity(axpy(chain, dt / 2, k1));
  const Velocity k3 = velocity(axpy(chain, dt / 2, k2));
  const Velocity k4 = velocity(axpy(chain, dt, k3));
  std::vector<Curve> out;
  for (std::size_t c = 0; c < chain.size(); ++c) {
    std::vector<Point> nodes(chain[c].nodes());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      nodes[i] += (dt / 6) * (k1[c][i] + 2.0 * k2[c][i] + 2.0 * k3[c][i] + k4[c][i]);
    out.emplace_back(std::move(nodes), chain[c].winding());
  }
  return Chain(std::move(out));
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::t_end: return "t_end";
    case StopReason::chord_arc_ceiling: return "chord-arc ceiling";
    case StopReason::separation_floor: return "separation floor";
  }
  return "unknown";
}

RunResult run(const Chain& initial, const LatticeKernel& kernel, const QuadratureConfig& quad,
              const StepperConfig& cfg, const FrameSink& sink, bool keep_frames) {
  if (kernel.alpha() >= 1.0)
    fail(Errc::unsupported, "evolution is only available for alpha < 1");
  if (!(cfg.dt > 0.0)) fail(Errc::invalid_argument, "dt must be positive");
  if (cfg.separation_floor < 0.0) fail(Errc::invalid_argument, "separation_floor must be >= 0");
  if (cfg.snapshot_stride < 1) fail(Errc::invalid_argument, "snapshot_stride must be >= 1");

  std::optional<Mollifier> moll;
  if (cfg.use_mollified) moll.emplace(cfg.epsilon);
  VelocityFn velocity = [&](const Chain& c) {
    return moll ? cde_velocity_mollified(c, kernel, quad, *moll) : cde_velocity(c, kernel, quad);
  };

  ChordArcOptions quick;
  quick.j_window = cfg.j_window;
  quick.refine = false;
  quick.threads = quad.threads;
  ChordArcOptions full = quick;
  full.refine = true;

  RunResult res;
  res.F_initial = chord_arc_F(initial, full).F_inf;
  res.F_ceiling = cfg.F_ceiling > 0.0 ? cfg.F_ceiling : 1e3 * res.F_initial;
  FBoundMonitor monitor;

  Chain chain = initial;
  long step = 0;
  const long total = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  auto emit = [&](double t) {
    Frame f;
    f.step = step;
    f.time = t;
    f.chain = chain;
    f.diagnostics = compute_diagnostics(chain, t, cfg.diagnostics_m, kernel.alpha(), full);
    const double A2 = bound_coefficient_Am(chain, 2, kernel.alpha(), f.diagnostics.F_inf);
    if (!monitor.update(t, f.diagnostics.F_inf, A2)) ++res.f_bound_violations;
    if (sink) sink(f);
    if (keep_frames) res.frames.push_back(std::move(f));
  };

  double t = 0.0;
  while (true) {
    const double F = chord_arc_F(chain, full).F_inf;
    const double r = separation(chain, quad.threads);
    std::optional<StopReason> stop;
    if (F >= res.F_ceiling) stop = StopReason::chord_arc_ceiling;
    else if (r < cfg.separation_floor) stop = StopReason::separation_floor;
    else if (step >= total) stop = StopReason::t_end;
    if (stop || step % cfg.snapshot_stride == 0) emit(t);
    if (stop) {
      res.reason = *stop;
      break;
    }
    try {
      chain = rk4_step(chain, cfg.dt, velocity);
    } catch (const Error& e) {
      std::ostringstream os;
      os << e.detail() << " (step starting at t = " << t << ")";
      throw Error(e.code(), os.str());
    }
    ++step;
    t = step * cfg.dt;
  }
  res.t_final = t;
  res.steps = step;
  return res;
}

}  // namespace asqg
