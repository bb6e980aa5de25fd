#include "asqg/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "asqg/errors.hpp"

namespace asqg {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(Errc::parse, where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(Errc::parse, "unknown key '" + it.key() + "' in " + where);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(Errc::parse, std::string("bad value for '") + key + "': " + e.what());
  }
}

double require_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number())
    fail(Errc::parse, std::string("missing numeric '") + key + "' in " + where);
  return j.at(key).get<double>();
}

Point get_point(const json& j, const char* key) {
  if (!j.contains(key)) return {0.0, 0.0};
  const json& p = j.at(key);
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
    fail(Errc::parse, std::string("'") + key + "' must be [x1, x2]");
  return {p[0].get<double>(), p[1].get<double>()};
}

Curve perturbed_front(std::size_t M, double height, double amp, int mode, double phase, int winding) {
  return sample_curve(M, winding, [&](double eta) {
    return Point{eta / kTwoPi, height + amp * std::cos(mode * eta + phase)};
  });
}

void build_geometry(const json& g, std::size_t M, std::mt19937_64& rng, bool random_phase,
                    const std::string& base_dir, std::vector<Curve>& out) {
  if (!g.is_object() || !g.contains("type") || !g.at("type").is_string())
    fail(Errc::parse, "geometry needs a string 'type'");
  const std::string type = g.at("type").get<std::string>();
  std::uniform_real_distribution<double> uni(0.0, kTwoPi);
  auto phase = [&] { return random_phase ? uni(rng) : 0.0; };
  if (type == "flat_layer") {
    check_keys(g, {"type", "h", "amplitude", "mode"}, "flat_layer");
    const double h = require_number(g, "h", "flat_layer");
    const double amp = get_or(g, "amplitude", 0.0);
    const int mode = get_or(g, "mode", 1);
    out.push_back(perturbed_front(M, h, amp, mode, phase(), 1));
    out.push_back(perturbed_front(M, -h, -amp, mode, phase(), 1));
  } else if (type == "front") {
    check_keys(g, {"type", "height", "amplitude", "mode"}, "front");
    out.push_back(perturbed_front(M, require_number(g, "height", "front"), get_or(g, "amplitude", 0.0),
                                  get_or(g, "mode", 1), phase(), 1));
  } else if (type == "ellipse") {
    check_keys(g, {"type", "a", "b", "center", "angle", "orientation"}, "ellipse");
    const double a = require_number(g, "a", "ellipse"), b = require_number(g, "b", "ellipse");
    const double th = get_or(g, "angle", 0.0);
    const int sgn = get_or(g, "orientation", 1) < 0 ? -1 : 1;
    const Point c = get_point(g, "center");
    out.push_back(sample_curve(M, 0, [&](double eta) {
      const double x = a * std::cos(eta), y = sgn * b * std::sin(eta);
      return Point{c.x1 + std::cos(th) * x - std::sin(th) * y, c.x2 + std::sin(th) * x + std::cos(th) * y};
    }));
  } else if (type == "circle") {
    check_keys(g, {"type", "radius", "center", "orientation"}, "circle");
    out.push_back(make_circle(M, require_number(g, "radius", "circle"), get_point(g, "center"),
                              get_or(g, "orientation", 1)));
  } else if (type == "two_component") {
    check_keys(g, {"type", "curves"}, "two_component");
    if (!g.contains("curves") || !g.at("curves").is_array() || g.at("curves").empty())
      fail(Errc::parse, "two_component needs a non-empty 'curves' array");
    for (const auto& sub : g.at("curves")) build_geometry(sub, M, rng, random_phase, base_dir, out);
  } else if (type == "from_file") {
    check_keys(g, {"type", "path"}, "from_file");
    fs::path p = get_or<std::string>(g, "path", "");
    if (p.is_relative()) p = fs::path(base_dir) / p;
    const Snapshot s = read_snapshot(p.string());
    for (const auto& c : s.chain) out.push_back(c.size() == M ? c : c.resample(M));
  } else {
    fail(Errc::parse, "unknown geometry type '" + type + "'");
  }
}

std::string shortest(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(Errc::io, "write failed for '" + path + "'");
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse, std::string("invalid JSON: ") + e.what());
  }
  check_keys(j, {"schema_version", "alpha", "geometry", "M", "dt", "t_end", "mollified", "epsilon", "kernel",
                 "quadrature", "stop", "snapshot_stride", "diagnostics_m", "output_dir", "seed", "random_phase",
                 "threads"},
             "scenario");
  if (get_or(j, "schema_version", 1) != 1) fail(Errc::parse, "unsupported schema_version");
  ScenarioConfig cfg;
  cfg.alpha = require_number(j, "alpha", "scenario");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) fail(Errc::invalid_argument, "alpha must lie in (0, 1]");
  const long M = get_or(j, "M", 128L);
  if (M < 16 || M % 2 != 0) fail(Errc::invalid_argument, "M must be even and >= 16");
  cfg.M = static_cast<std::size_t>(M);
  cfg.kernel.alpha = cfg.alpha;
  if (j.contains("kernel")) {
    const json& k = j.at("kernel");
    check_keys(k, {"tail_tolerance", "max_images"}, "kernel");
    cfg.kernel.tail_tolerance = get_or(k, "tail_tolerance", cfg.kernel.tail_tolerance);
    cfg.kernel.max_images = get_or(k, "max_images", cfg.kernel.max_images);
  }
  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    check_keys(q, {"near_field_cells", "near_field_order", "grading", "interaction", "f_ceiling"}, "quadrature");
    cfg.quad.near_field_cells = get_or(q, "near_field_cells", cfg.quad.near_field_cells);
    cfg.quad.near_field_order = get_or(q, "near_field_order", cfg.quad.near_field_order);
    cfg.quad.grading = get_or(q, "grading", cfg.quad.grading);
    cfg.quad.f_ceiling = get_or(q, "f_ceiling", cfg.quad.f_ceiling);
    const std::string inter = get_or<std::string>(q, "interaction", "chain_wide");
    if (inter == "chain_wide") cfg.quad.interaction = Interaction::chain_wide;
    else if (inter == "self_only") cfg.quad.interaction = Interaction::self_only;
    else fail(Errc::parse, "interaction must be 'chain_wide' or 'self_only'");
  }
  cfg.quad.threads = get_or(j, "threads", 0);
  auto& st = cfg.stepper;
  st.dt = get_or(j, "dt", st.dt);
  st.t_end = get_or(j, "t_end", st.t_end);
  st.use_mollified = get_or(j, "mollified", st.use_mollified);
  st.epsilon = get_or(j, "epsilon", st.epsilon);
  st.snapshot_stride = get_or(j, "snapshot_stride", st.snapshot_stride);
  st.diagnostics_m = get_or(j, "diagnostics_m", st.diagnostics_m);
  if (j.contains("stop")) {
    const json& s = j.at("stop");
    check_keys(s, {"F_ceiling", "separation_floor", "j_window"}, "stop");
    st.F_ceiling = get_or(s, "F_ceiling", st.F_ceiling);
    st.separation_floor = get_or(s, "separation_floor", st.separation_floor);
    st.j_window = get_or(s, "j_window", st.j_window);
  }
  if (!(st.dt > 0.0)) fail(Errc::invalid_argument, "dt must be positive");
  if (!(st.t_end >= 0.0)) fail(Errc::invalid_argument, "t_end must be >= 0");
  if (st.snapshot_stride < 1) fail(Errc::invalid_argument, "snapshot_stride must be >= 1");
  if (st.diagnostics_m < 0 || cfg.M < 4 * static_cast<std::size_t>(st.diagnostics_m + 1))
    fail(Errc::invalid_argument, "diagnostics_m must satisfy M >= 4 (m + 1)");
  cfg.output_dir = get_or<std::string>(j, "output_dir", cfg.output_dir);
  cfg.seed = get_or(j, "seed", 0UL);
  const bool random_phase = get_or(j, "random_phase", false);
  if (!j.contains("geometry")) fail(Errc::parse, "scenario needs a 'geometry'");
  std::mt19937_64 rng(cfg.seed);
  std::vector<Curve> curves;
  build_geometry(j.at("geometry"), cfg.M, rng, random_phase, base_dir, curves);
  cfg.initial = Chain(std::move(curves));
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  const fs::path p(path);
  return parse_scenario(read_text_file(path), p.has_parent_path() ? p.parent_path().string() : ".");
}

std::string snapshot_json(const Chain& chain, double time, const double* alpha) {
  // Numbers are written as the shortest decimal that reads back to the same double.
  std::string s = "{\"time\": " + shortest(time);
  if (alpha) s += ", \"alpha\": " + shortest(*alpha);
  s += ", \"curves\": [";
  for (std::size_t c = 0; c < chain.size(); ++c) {
    if (c) s += ", ";
    s += "{\"winding\": " + std::to_string(chain[c].winding()) + ", \"nodes\": [";
    for (std::size_t i = 0; i < chain[c].size(); ++i) {
      if (i) s += ", ";
      s += "[" + shortest(chain[c][i].x1) + ", " + shortest(chain[c][i].x2) + "]";
    }
    s += "]}";
  }
  s += "]}\n";
  return s;
}

Snapshot parse_snapshot(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse, std::string("invalid snapshot JSON: ") + e.what());
  }
  check_keys(j, {"time", "alpha", "curves"}, "snapshot");
  Snapshot s;
  s.time = get_or(j, "time", 0.0);
  if (j.contains("alpha")) {
    s.has_alpha = true;
    s.alpha = get_or(j, "alpha", 0.0);
  }
  if (!j.contains("curves") || !j.at("curves").is_array()) fail(Errc::parse, "snapshot needs a 'curves' array");
  std::vector<Curve> curves;
  for (const auto& c : j.at("curves")) {
    check_keys(c, {"winding", "nodes"}, "snapshot curve");
    const int w = get_or(c, "winding", 0);
    if (!c.contains("nodes") || !c.at("nodes").is_array()) fail(Errc::parse, "curve needs 'nodes'");
    std::vector<Point> nodes;
    for (const auto& p : c.at("nodes")) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        fail(Errc::parse, "node must be [x1, x2]");
      nodes.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    curves.emplace_back(std::move(nodes), w);
  }
  s.chain = Chain(std::move(curves));
  return s;
}

void write_snapshot(const std::string& path, const Chain& chain, double time, const double* alpha) {
  write_text_file(path, snapshot_json(chain, time, alpha));
}

Snapshot read_snapshot(const std::string& path) { return parse_snapshot(read_text_file(path)); }

std::string svg_plot(const Chain& initial, const Chain& final_chain) {
  double ylo = 1e300, yhi = -1e300;
  for (const Chain* ch : {&initial, &final_chain})
    for (const auto& c : *ch)
      for (const auto& p : c.nodes()) {
        ylo = std::min(ylo, p.x2);
        yhi = std::max(yhi, p.x2);
      }
  const double pad = 0.1 + 0.05 * (yhi - ylo);
  ylo -= pad;
  yhi += pad;
  const double xlo = -1.0, xhi = 2.0;
  const double scale = 400.0;
  const double W = (xhi - xlo) * scale, H = (yhi - ylo) * scale;
  auto X = [&](double x) { return (x - xlo) * scale; };
  auto Y = [&](double y) { return (yhi - y) * scale; };
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
     << W << " " << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (double xb : {-0.5, 0.5})
    os << "<line x1=\"" << X(xb) << "\" y1=\"0\" x2=\"" << X(xb) << "\" y2=\"" << H
       << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
  auto curve = [&](const Curve& c, double shift, const char* color, double opacity) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-opacity=\"" << opacity
       << "\" stroke-width=\"1.5\" points=\"";
    const long M = static_cast<long>(c.size());
    for (long i = 0; i <= M; ++i) {
      const Point p = c.node(i);
      os << X(p.x1 + shift) << "," << Y(p.x2) << " ";
    }
    os << "\"/>\n";
  };
  for (const auto& c : initial) {
    curve(c, 0.0, "grey", 1.0);
    curve(c, 1.0, "grey", 0.4);
  }
  for (const auto& c : final_chain) {
    curve(c, 0.0, "blue", 1.0);
    curve(c, 1.0, "blue", 0.4);
  }
  os << "</svg>\n";
  return os.str();
}

SimulationSummary simulate(const ScenarioConfig& cfg) {
  LatticeKernel kernel(cfg.kernel);
  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);
  std::ofstream csv(dir / "diagnostics.csv");
  if (!csv) fail(Errc::io, "cannot write diagnostics.csv in '" + cfg.output_dir + "'");
  bool header = false;
  Chain last = cfg.initial;
  auto sink = [&](const Frame& f) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%06ld.json", f.step);
    write_snapshot((dir / name).string(), f.chain, f.time, &cfg.alpha);
    if (!header) {
      csv << f.diagnostics.csv_header() << "\n";
      header = true;
    }
    csv << f.diagnostics.csv_row() << "\n";
    csv.flush();
    last = f.chain;
  };
  const RunResult r = run(cfg.initial, kernel, cfg.quad, cfg.stepper, sink, false);
  SimulationSummary s;
  s.reason = r.reason;
  s.t_final = r.t_final;
  s.steps = r.steps;
  s.exit_code = r.reason == StopReason::t_end ? 0 : 2;
  nlohmann::json j;
  j["status"] = r.reason == StopReason::t_end ? "completed" : "stopped";
  j["reason"] = to_string(r.reason);
  j["t_final"] = r.t_final;
  j["steps"] = r.steps;
  j["F_initial"] = r.F_initial;
  j["F_ceiling"] = r.F_ceiling;
  j["f_bound_violations"] = r.f_bound_violations;
  write_text_file((dir / "summary.json").string(), j.dump(2) + "\n");
  write_text_file((dir / "plot.svg").string(), svg_plot(cfg.initial, last));
  return s;
}

}  // namespace asqg
