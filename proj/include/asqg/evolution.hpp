#pragma once

#include <functional>
#include <string>
#include <vector>

#include "asqg/cde.hpp"
#include "asqg/diagnostics.hpp"

namespace asqg {

struct StepperConfig {
  double dt = 1e-3;
  double t_end = 0.1;
  bool use_mollified = false;
  double epsilon = 0.1;
  /// Stop once F reaches this value; 0 selects 1e3 * F(0).
  double F_ceiling = 0.0;
  /// Stop once the component separation drops below this value.
  double separation_floor = 1e-3;
  /// Frames are emitted every this many steps (and at the first and last step).
  int snapshot_stride = 10;
  /// Sobolev index used by the diagnostics records.
  int diagnostics_m = 3;
  int j_window = 3;
};

using VelocityFn = std::function<Velocity(const Chain&)>;

/// One classical RK4 step of d gamma / dt = v(gamma); windings are kept.
Chain rk4_step(const Chain& chain, double dt, const VelocityFn& velocity);

enum class StopReason { t_end, chord_arc_ceiling, separation_floor };
std::string to_string(StopReason r);

struct Frame {
  long step = 0;
  double time = 0.0;
  Chain chain;
  DiagnosticsRecord diagnostics;
};

struct RunResult {
  StopReason reason = StopReason::t_end;
  double t_final = 0.0;
  long steps = 0;
  double F_initial = 0.0;
  double F_ceiling = 0.0;
  /// Samples where the monitored F growth bound was exceeded.
  int f_bound_violations = 0;
  std::vector<Frame> frames;
};

using FrameSink = std::function<void(const Frame&)>;

/// Integrates the CDE (or its mollified form) from t = 0. Stop conditions are
/// normal termination; numerical failures raise Error with the failing time.
RunResult run(const Chain& initial, const LatticeKernel& kernel, const QuadratureConfig& quad,
              const StepperConfig& cfg, const FrameSink& sink = {}, bool keep_frames = true);

}  // namespace asqg
