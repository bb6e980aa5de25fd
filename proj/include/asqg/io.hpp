#pragma once

#include <string>

#include "asqg/evolution.hpp"

namespace asqg {

/// Parsed and validated scenario document (schema_version 1).
struct ScenarioConfig {
  double alpha = 0.5;
  std::size_t M = 128;
  KernelConfig kernel;
  QuadratureConfig quad;
  StepperConfig stepper;
  std::string output_dir = "out";
  unsigned long seed = 0;
  Chain initial;
};

/// Parses a scenario from JSON text; relative from_file paths resolve against base_dir.
ScenarioConfig parse_scenario(const std::string& json_text, const std::string& base_dir = ".");
ScenarioConfig load_scenario(const std::string& path);

struct Snapshot {
  double time = 0.0;
  bool has_alpha = false;
  double alpha = 0.0;
  Chain chain;
};

std::string snapshot_json(const Chain& chain, double time, const double* alpha = nullptr);
Snapshot parse_snapshot(const std::string& json_text);
void write_snapshot(const std::string& path, const Chain& chain, double time, const double* alpha = nullptr);
Snapshot read_snapshot(const std::string& path);

/// Initial (grey) and final (blue) contours over the strip boundaries x1 = +-1/2,
/// with one periodic image of each curve.
std::string svg_plot(const Chain& initial, const Chain& final_chain);

struct SimulationSummary {
  StopReason reason = StopReason::t_end;
  double t_final = 0.0;
  long steps = 0;
  int exit_code = 0;
};

/// Runs a scenario and writes snapshot_NNNNNN.json, diagnostics.csv, summary.json
/// and plot.svg into the output directory. Exit code 0 at t_end, 2 on a stop condition.
SimulationSummary simulate(const ScenarioConfig& cfg);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace asqg
