// Copyright 2026 The Hyra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "hyra/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "hyra/corpus.hpp"
#include "hyra/error.hpp"
#include "hyra/expr.hpp"
#include "hyra/model_io.hpp"
#include "hyra/reach.hpp"
#include "hyra/simulate.hpp"

namespace hyra {

namespace {

constexpr const char* kBenchPrefix = "bench:";

struct Source {
  std::string model;
  std::string config;

  ModelBundle load() const {
    if (model.rfind(kBenchPrefix, 0) == 0) {
      auto id = parse_benchmark(model.substr(std::string(kBenchPrefix).size()));
      if (!id) throw Error(ErrorKind::ValueError, "unknown benchmark '" + model + "'");
      return build_benchmark(*id);
    }
    std::optional<std::filesystem::path> cfg;
    if (!config.empty()) cfg = config;
    return load_bundle(model, cfg);
  }
};

// Flags that override the configuration.
struct Overrides {
  std::optional<double> step;
  std::optional<double> horizon;
  std::optional<int> max_jumps;

  void add_to(CLI::App* app, const char* step_help) {
    app->add_option("--step", step, step_help)->check(CLI::PositiveNumber);
    app->add_option("--horizon", horizon, "time horizon (overrides the cfg)")
        ->check(CLI::PositiveNumber);
    app->add_option("--max-jumps", max_jumps, "jump bound (overrides the cfg)")
        ->check(CLI::NonNegativeNumber);
  }
  void apply(ReachSettings& s) const {
    if (horizon) s.horizon = *horizon;
    if (max_jumps) s.max_jumps = *max_jumps;
  }
};

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HYRA_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

int cmd_validate(const Source& src, std::ostream& out) {
  const ModelBundle b = src.load();
  const HybridAutomaton& a = b.automaton;
  out << "OK states=" << a.vars.num_states() << " inputs=" << a.vars.num_inputs()
      << " constants=" << a.vars.constants.size() << " locations=" << a.locations.size()
      << " transitions=" << a.transitions.size() << '\n';
  return kExitOk;
}

int cmd_translate(const Source& src, const std::string& to, const std::string& path,
                  const std::string& cfg_path, std::ostream& out) {
  const ModelBundle b = src.load();
  if (to == "flowstar") {
    emit(out, path, emit_flowstar(b));
  } else if (to == "json") {
    emit(out, path, write_json(b));
  } else {
    emit(out, path, emit_spaceex(b));
    if (!cfg_path.empty()) emit(out, cfg_path, emit_config(b));
  }
  return kExitOk;
}

int cmd_reach(const Source& src, const Overrides& ov, std::size_t max_generators,
              const std::string& csv_path, bool quiet, std::ostream& out, std::ostream& err) {
  ModelBundle b = src.load();
  ov.apply(b.settings);
  if (ov.step) b.settings.step = *ov.step;
  check_bundle(b);
  ReachOptions opts;
  opts.max_generators = max_generators;
  const ReachResult r = reach(b, opts);
  out << verdict_line(r) << '\n';
  if (!quiet) {
    err << "termination: " << to_string(r.termination) << "\n";
    if (r.offending_segment) {
      const auto& seg = r.segments[*r.offending_segment];
      err << "first offending segment: #" << *r.offending_segment << " in " << seg.location
          << " at t in [" << format_number(seg.time.lo) << ", " << format_number(seg.time.hi)
          << "]\n";
    }
    err << "wall time: " << std::fixed << std::setprecision(3) << r.stats.wall_seconds << " s\n";
  }
  if (!csv_path.empty()) write_file(csv_path, segments_csv(r.segments, b.automaton.vars));
  return r.verdict == Verdict::SafeProved ? kExitOk : kExitPossiblyUnsafe;
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> times;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(ErrorKind::ValueError, "bad time '" + item + "'");
    times.push_back(v);
  }
  std::sort(times.begin(), times.end());
  return times;
}

struct SimArgs {
  std::string integrator = "heun";
  std::size_t seeds = 1;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string events_path;
  std::string spontaneous;
};

int cmd_simulate(const Source& src, const Overrides& ov, const SimArgs& args, std::ostream& out,
                 std::ostream& err) {
  ModelBundle b = src.load();
  ov.apply(b.settings);
  check_bundle(b);
  SimOptions opts;
  if (ov.step) opts.step = *ov.step;
  opts.spontaneous_times = parse_times(args.spontaneous);
  const IntegratorKind kind = args.integrator == "euler" ? IntegratorKind::Euler : IntegratorKind::Heun;
  const auto x0s = sample_initial(Box::from_intervals(b.initial.box), args.seeds, args.seed);
  const auto runs = simulate_many(b, x0s, kind, opts, worker_count());
  emit(out, args.out_path, trajectory_csv(runs, b.automaton.vars));
  if (!args.events_path.empty()) write_file(args.events_path, events_csv(runs, b.automaton.vars));
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const Trajectory& t = runs[r];
    err << "run " << r << ": samples=" << t.samples.size() << " events=" << t.events.size();
    if (t.zeno) err << " zeno at t~" << format_number(*t.zeno_time);
    if (t.blocked) err << " blocked";
    err << '\n';
  }
  return kExitOk;
}

// --- plotting ---------------------------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  }
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Table read_table(const std::string& csv) {
  Table t;
  std::stringstream ss(csv);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size())
      throw Error(ErrorKind::SyntaxError, "csv line " + std::to_string(lineno) + " has " +
                                              std::to_string(cells.size()) + " cells, expected " +
                                              std::to_string(t.header.size()));
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw Error(ErrorKind::SyntaxError, "empty csv");
  return t;
}

double cell_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(ErrorKind::SyntaxError, "not a number: '" + s + "'");
  return v;
}

// Boxes [x_lo, x_hi] x [y_lo, y_hi] of a segments table, or polylines (one
// per run) of a trajectory table.
struct Projection {
  bool boxes = false;
  std::vector<std::array<double, 4>> rects;
  std::vector<std::vector<std::pair<double, double>>> lines;
};

Projection project(const std::string& csv, const std::string& x, const std::string& y) {
  const Table t = read_table(csv);
  Projection p;
  auto xl = t.column(x + "_lo"), xh = t.column(x + "_hi");
  auto yl = t.column(y + "_lo"), yh = t.column(y + "_hi");
  if (xl && xh && yl && yh) {
    p.boxes = true;
    for (const auto& r : t.rows)
      p.rects.push_back({cell_number(r[*xl]), cell_number(r[*xh]), cell_number(r[*yl]),
                         cell_number(r[*yh])});
    return p;
  }
  auto xc = t.column(x), yc = t.column(y);
  if (!xc || !yc)
    throw Error(ErrorKind::UnknownIdentifier,
                "csv has no columns for '" + x + "' and '" + y + "'");
  auto run = t.column("run");
  std::string current;
  for (const auto& r : t.rows) {
    std::string id = run ? r[*run] : "";
    if (p.lines.empty() || id != current) {
      p.lines.emplace_back();
      current = id;
    }
    p.lines.back().emplace_back(cell_number(r[*xc]), cell_number(r[*yc]));
  }
  return p;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

}  // namespace

std::string plot_csv(const std::string& csv, const std::string& x, const std::string& y) {
  const Projection p = project(csv, x, y);
  std::ostringstream out;
  if (p.boxes) {
    out << x << "_lo," << x << "_hi," << y << "_lo," << y << "_hi\n";
    for (const auto& r : p.rects)
      out << format_number(r[0]) << ',' << format_number(r[1]) << ',' << format_number(r[2])
          << ',' << format_number(r[3]) << '\n';
  } else {
    out << "run," << x << ',' << y << '\n';
    for (std::size_t i = 0; i < p.lines.size(); ++i)
      for (const auto& [a, b] : p.lines[i])
        out << i << ',' << format_number(a) << ',' << format_number(b) << '\n';
  }
  return out.str();
}

std::string plot_svg(const std::string& csv, const std::string& x, const std::string& y) {
  const Projection p = project(csv, x, y);
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  auto grow = [&](double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return;
    x0 = std::min(x0, a);
    x1 = std::max(x1, a);
    y0 = std::min(y0, b);
    y1 = std::max(y1, b);
  };
  for (const auto& r : p.rects) {
    grow(r[0], r[2]);
    grow(r[1], r[3]);
  }
  for (const auto& l : p.lines)
    for (const auto& [a, b] : l) grow(a, b);
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 <= 0) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 <= 0) y0 -= 0.5, y1 += 0.5;

  const double W = 640, H = 480, L = 70, R = 20, T = 20, B = 50;
  auto sx = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
  auto sy = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<g fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"0.6\">\n";
  for (const auto& r : p.rects) {
    if (!std::isfinite(r[0] + r[1] + r[2] + r[3])) continue;
    const double px = sx(r[0]), py = sy(r[3]);
    out << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\"" << fmt(sx(r[1]) - px)
        << "\" height=\"" << fmt(sy(r[2]) - py) << "\"/>\n";
  }
  for (const auto& l : p.lines) {
    out << "<polyline points=\"";
    for (std::size_t i = 0; i < l.size(); ++i)
      out << (i ? " " : "") << fmt(sx(l[i].first)) << ',' << fmt(sy(l[i].second));
    out << "\"/>\n";
  }
  out << "</g>\n";
  out << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\"/>\n</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double vx = x0 + (x1 - x0) * i / 4.0, vy = y0 + (y1 - y0) * i / 4.0;
    out << "<text x=\"" << fmt(sx(vx)) << "\" y=\"" << H - B + 16
        << "\" text-anchor=\"middle\">" << fmt_tick(vx) << "</text>\n";
    out << "<text x=\"" << L - 6 << "\" y=\"" << fmt(sy(vy) + 4)
        << "\" text-anchor=\"end\">" << fmt_tick(vy) << "</text>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
      << x << "</text>\n";
  out << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (T + H - B) / 2 << ")\">" << y << "</text>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = args_in;

  // `bench <name> <command> ...` runs <command> on a built-in model.
  if (!args.empty() && args[0] == "bench") {
    if (args.size() >= 2 && args[1] == "list") {
      for (BenchmarkId id : all_benchmarks()) out << to_string(id) << '\n';
      return kExitOk;
    }
    const bool help = args.size() >= 2 && (args[1] == "-h" || args[1] == "--help");
    if (help || args.size() < 3) {
      (help ? out : err)
          << "usage: hyra bench <name> <validate|translate|reach|check|simulate|export> [options]\n"
             "       hyra bench list\n"
             "names: ball2 (bouncing-ball), platoon6 (platoon), tank3 (tank), linswitch4 (linswitch)\n";
      return help ? kExitOk : kExitInputError;
    }
    auto id = parse_benchmark(args[1]);
    if (!id) {
      err << "hyra: error: unknown benchmark '" << args[1] << "'\n";
      return kExitInputError;
    }
    if (args[2] == "export") {
      if (args.size() != 4) {
        err << "usage: hyra bench <name> export <dir>\n";
        return kExitInputError;
      }
      try {
        export_fixtures(*id, args[3]);
      } catch (const Error& e) {
        err << "hyra: error: " << e.what() << '\n';
        return is_input_error(e.kind()) ? kExitInputError : kExitEngineError;
      }
      return kExitOk;
    }
    std::vector<std::string> rewritten = {args[2], std::string(kBenchPrefix) + std::string(to_string(*id))};
    rewritten.insert(rewritten.end(), args.begin() + 3, args.end());
    args = std::move(rewritten);
  }

  CLI::App app{"Affine hybrid automata: translation, reachability and simulation", "hyra"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success / SafeProved, 1 PossiblyUnsafe, 2 input error, 3 engine error.\n"
      "Settings precedence: command-line flag > cfg file > built-in default.\n"
      "HYRA_THREADS caps the number of simulation workers.\n"
      "`hyra bench <name> <command>` runs a command on a built-in benchmark.");

  Source src;
  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("model", src.model, "model file (.xml with cfg, or .json bundle)")->required();
    cmd->add_option("config", src.config, "cfg file for an .xml model");
  };

  auto* validate = app.add_subcommand("validate", "parse and check a model");
  add_source(validate);

  std::string to = "flowstar", out_path, cfg_out;
  auto* translate = app.add_subcommand("translate", "convert to another format");
  add_source(translate);
  translate->add_option("--to", to, "target format")
      ->check(CLI::IsMember({"flowstar", "spaceex", "json"}));
  translate->add_option("--out", out_path, "output file (default stdout)");
  translate->add_option("--cfg-out", cfg_out, "with --to spaceex: also write the cfg here");

  Overrides ov;
  std::size_t max_generators = 20;
  std::string csv_path;
  auto* reach_cmd = app.add_subcommand("reach", "flowpipe reachability; prints the verdict line");
  add_source(reach_cmd);
  ov.add_to(reach_cmd, "sampling time (overrides the cfg)");
  reach_cmd->add_option("--out", csv_path, "write the flowpipe boxes as CSV");
  reach_cmd->add_option("--max-generators", max_generators, "zonotope order bound")
      ->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "reachability verdict only");
  add_source(check);
  ov.add_to(check, "sampling time (overrides the cfg)");

  SimArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "simulate trajectories from the initial box");
  add_source(simulate_cmd);
  ov.add_to(simulate_cmd, "integration step (default: a tenth of the sampling time)");
  simulate_cmd->add_option("--integrator", sim.integrator, "integration scheme")
      ->check(CLI::IsMember({"euler", "heun"}));
  simulate_cmd->add_option("--seeds", sim.seeds, "number of runs")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim.seed, "random seed for the start points");
  simulate_cmd->add_option("--out", sim.out_path, "trajectory CSV (default stdout)");
  simulate_cmd->add_option("--events", sim.events_path, "event log CSV");
  simulate_cmd->add_option("--spontaneous", sim.spontaneous,
                           "comma-separated times at which guard-true transitions fire");

  std::string plot_in, plot_x, plot_y, plot_format = "svg";
  auto* plot = app.add_subcommand("plot", "2-d projection of a flowpipe or trajectory CSV");
  plot->add_option("csv", plot_in, "CSV from reach --out or simulate")->required();
  plot->add_option("--x", plot_x, "horizontal variable")->required();
  plot->add_option("--y", plot_y, "vertical variable")->required();
  plot->add_option("--format", plot_format, "output format")->check(CLI::IsMember({"svg", "csv"}));
  plot->add_option("--out", out_path, "output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hyra: error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(src, out);
    if (translate->parsed()) return cmd_translate(src, to, out_path, cfg_out, out);
    if (reach_cmd->parsed()) return cmd_reach(src, ov, max_generators, csv_path, false, out, err);
    if (check->parsed()) return cmd_reach(src, ov, 20, "", true, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(src, ov, sim, out, err);
    if (plot->parsed()) {
      const std::string text = read_file(plot_in);
      emit(out, out_path,
           plot_format == "svg" ? plot_svg(text, plot_x, plot_y) : plot_csv(text, plot_x, plot_y));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "hyra: error: " << e.what() << '\n';
    return is_input_error(e.kind()) ? kExitInputError : kExitEngineError;
  } catch (const std::exception& e) {
    err << "hyra: error: " << e.what() << '\n';
    return kExitEngineError;
  }
  return kExitInputError;
}

}  // namespace hyra
