#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "asqg/errors.hpp"
#include "asqg/io.hpp"
#include "support.hpp"

using namespace asqg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path tmp_dir(const std::string& name) {
  const fs::path p = fs::path(ASQG_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc{};
}

struct CmdResult {
  int status = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(ASQG_CLI_PATH) + " " + args + " 2>&1";
  CmdResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 512> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// Value printed on the line starting with the given label.
double field(const std::string& out, const std::string& label) {
  std::istringstream is(out);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string name;
    double v;
    if (ls >> name >> v && name == label) return v;
  }
  FAIL("label " << label << " not found in\n" << out);
  return 0;
}

std::vector<std::string> lines_of(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

const char* kFlat = R"({"schema_version": 1, "alpha": 0.5, "M": 32, "dt": 0.01, "t_end": 0.05,
  "geometry": {"type": "flat_layer", "h": 0.3}, "snapshot_stride": 2, "diagnostics_m": 2})";

}  // namespace

TEST_CASE("scenario parsing") {
  const ScenarioConfig c = parse_scenario(kFlat);
  CHECK(c.alpha == 0.5);
  CHECK(c.M == 32);
  REQUIRE(c.initial.size() == 2);
  CHECK(c.initial[0].winding() == 1);
  CHECK(c.initial[1].winding() == 1);
  CHECK(c.stepper.dt == 0.01);
  CHECK(c.stepper.snapshot_stride == 2);

  const ScenarioConfig two = parse_scenario(R"({"alpha": 0.3, "M": 64, "geometry": {"type": "two_component", "curves": [
      {"type": "circle", "radius": 0.1, "center": [0, 0.5]},
      {"type": "ellipse", "a": 0.2, "b": 0.1, "center": [0, -0.5], "angle": 0.4}]}})");
  CHECK(two.initial.size() == 2);
  CHECK(two.initial.grid_size() == 64);

  CHECK(code_of([] { parse_scenario(R"({"alpha": 0.5, "geometry": {"type": "circle", "radius": 0.1, "center": [0, 0]}, "colour": 1})"); }) == Errc::parse);
  CHECK(code_of([] { parse_scenario(R"({"alpha": 1.5, "geometry": {"type": "circle", "radius": 0.1, "center": [0, 0]}})"); }) == Errc::invalid_argument);
  CHECK(code_of([] { parse_scenario(R"({"alpha": 0.5, "geometry": {"type": "torus"}})"); }) == Errc::parse);
  CHECK(code_of([] { parse_scenario("{not json"); }) == Errc::parse);
  CHECK(code_of([] { parse_scenario(R"({"alpha": 0.5, "M": 31, "geometry": {"type": "circle", "radius": 0.1, "center": [0, 0]}})"); }) == Errc::invalid_argument);
}

TEST_CASE("from_file geometry resolves relative paths and resamples") {
  const fs::path dir = tmp_dir("from_file");
  write_snapshot((dir / "init.json").string(), Chain({make_circle(32, 0.2, {0, 0})}), 0.0);
  const ScenarioConfig c = parse_scenario(R"({"alpha": 0.5, "M": 64, "geometry": {"type": "from_file", "path": "init.json"}})",
                                          dir.string());
  REQUIRE(c.initial.size() == 1);
  CHECK(c.initial.grid_size() == 64);
  CHECK(norm(c.initial[0][1] - Point{0.2 * std::cos(-kPi + kTwoPi / 64), 0.2 * std::sin(-kPi + kTwoPi / 64)}) < 1e-14);
}

TEST_CASE("snapshot round trip is bit-exact") {
  std::vector<Point> n(48);
  for (auto& p : n) p = {testing::uniform(-1, 1), testing::uniform(-1, 1) * 1e-7};
  const Chain ch({Curve(n, 0), make_front(48, 0.3, 0.01, 2)});
  const double alpha = 0.7;
  const Snapshot s = parse_snapshot(snapshot_json(ch, 0.1 + 0.2, &alpha));
  CHECK(s.time == 0.1 + 0.2);
  CHECK(s.has_alpha);
  CHECK(s.alpha == alpha);
  REQUIRE(s.chain.size() == 2);
  CHECK(s.chain[1].winding() == 1);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < 48; ++i) CHECK(s.chain[c][i] == ch[c][i]);
  CHECK(code_of([] { parse_snapshot(R"({"time": 0, "curves": [{"winding": 0, "nodes": [[0, 1]]}]})"); }) ==
        Errc::invalid_argument);
}

TEST_CASE("svg plot draws the strip boundaries") {
  const Chain ch({make_circle(32, 0.2, {0, 0})});
  const std::string svg = svg_plot(ch, ch);
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t dashed = 0;
  for (std::size_t p = svg.find("stroke-dasharray"); p != std::string::npos; p = svg.find("stroke-dasharray", p + 1)) ++dashed;
  CHECK(dashed == 2);
}

TEST_CASE("simulate writes artifacts") {
  const fs::path dir = tmp_dir("sim_flat");
  ScenarioConfig c = parse_scenario(kFlat);
  c.output_dir = dir.string();
  const SimulationSummary s = simulate(c);
  CHECK(s.exit_code == 0);
  CHECK(s.reason == StopReason::t_end);
  CHECK(fs::exists(dir / "snapshot_000000.json"));
  CHECK(fs::exists(dir / "snapshot_000005.json"));
  CHECK(fs::exists(dir / "plot.svg"));
  const auto csv = lines_of((dir / "diagnostics.csv").string());
  REQUIRE(csv.size() >= 3);
  CHECK(csv[0] == "time,F_inf,S_0,S_1,S_2,sobolev_m,energy_S,area_0,area_1,separation,A_m");
  double prev = -1;
  for (std::size_t i = 1; i < csv.size(); ++i) {
    const double t = std::stod(csv[i].substr(0, csv[i].find(',')));
    CHECK(t > prev);
    prev = t;
  }
  const json summary = json::parse(read_text_file((dir / "summary.json").string()));
  CHECK(summary.at("status") == "completed");
  CHECK(summary.at("reason") == "t_end");
  const Snapshot last = read_snapshot((dir / "snapshot_000005.json").string());
  for (std::size_t i = 0; i < 32; ++i) CHECK(norm(last.chain[0][i] - c.initial[0][i]) < 1e-13);

  ScenarioConfig stop = parse_scenario(kFlat);
  stop.output_dir = tmp_dir("sim_stop").string();
  stop.stepper.F_ceiling = 1.0;
  const SimulationSummary t = simulate(stop);
  CHECK(t.exit_code == 2);
  const json js = json::parse(read_text_file(stop.output_dir + "/summary.json"));
  CHECK(js.at("reason") == "chord-arc ceiling");
  CHECK(js.at("status") == "stopped");
}

TEST_CASE("cli kernel") {
  auto r = run_cli("kernel 0 0 --r-only --alpha 0.5");
  CHECK(r.status == 0);
  CHECK(field(r.out, "R") == 0.0);
  r = run_cli("kernel 1 0 --free-only --alpha 0.5");
  CHECK(r.status == 0);
  CHECK(std::abs(field(r.out, "G") - 0.33296793550170022957) < 1e-15);
  r = run_cli("kernel 0.25 0.4 --alpha 0.7");
  CHECK(std::abs(field(r.out, "R") - (-0.015208613424102032)) < 1e-6);
  r = run_cli("kernel 0 0 --alpha 0.5");
  CHECK(r.status == 1);
  CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("cli diagnose") {
  const fs::path dir = tmp_dir("cli_diag");
  write_snapshot((dir / "circle.json").string(), Chain({make_circle(64, 1.0, {0, 0})}), 0.0);
  write_snapshot((dir / "flat.json").string(), testing::flat_layer(64, 0.3), 0.0);
  write_snapshot((dir / "two.json").string(), Chain({make_circle(64, 0.1, {0, 0.5}), make_circle(64, 0.1, {0, -0.5})}), 0.0);
  auto r = run_cli("diagnose " + (dir / "circle.json").string() + " --m 3");
  REQUIRE(r.status == 0);
  CHECK(std::abs(field(r.out, "F0") - kPi / 2) < 1e-6);
  CHECK(r.out.find("T_star") != std::string::npos);
  CHECK(r.out.find("(C = 1)") != std::string::npos);
  r = run_cli("diagnose " + (dir / "flat.json").string());
  CHECK(std::abs(field(r.out, "separation") - 0.6) < 1e-12);
  r = run_cli("diagnose " + (dir / "two.json").string() + " --threads 2");
  CHECK(std::abs(field(r.out, "separation") - 0.8) < 1e-12);
  write_text_file((dir / "bad.json").string(), "{\"curves\": 3}");
  CHECK(run_cli("diagnose " + (dir / "bad.json").string()).status == 1);
}

TEST_CASE("cli simulate exit codes") {
  const fs::path dir = tmp_dir("cli_sim");
  write_text_file((dir / "flat.json").string(), kFlat);
  auto r = run_cli("simulate --config " + (dir / "flat.json").string() + " --out " + (dir / "out").string());
  CHECK(r.status == 0);
  CHECK(fs::exists(dir / "out" / "summary.json"));
  json j = json::parse(kFlat);
  j["stop"] = {{"F_ceiling", 1.0}};
  write_text_file((dir / "stop.json").string(), j.dump());
  r = run_cli("simulate --config " + (dir / "stop.json").string() + " --out " + (dir / "out2").string());
  CHECK(r.status == 2);
  CHECK(r.out.find("chord-arc ceiling") != std::string::npos);
  CHECK(run_cli("simulate --config " + (dir / "missing.json").string()).status == 1);
}

TEST_CASE("cli oracle-check") {
  const auto r = run_cli("oracle-check --alpha 0.5");
  CHECK(r.status == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
}
