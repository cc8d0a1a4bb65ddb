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


#include "hyra/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "corpus_data.hpp"
#include "hyra/error.hpp"
#include "hyra/expr.hpp"
#include "hyra/reach.hpp"
#include "json.hpp"

namespace hyra {

namespace {

using nlohmann::ordered_json;
using detail::PrintedMatrix;

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

Transition make_transition(const HybridAutomaton& ha, std::string source, std::string target,
                           std::string_view guard, std::string_view reset = {},
                           std::optional<std::string> label = std::nullopt) {
  Transition t;
  t.source = std::move(source);
  t.target = std::move(target);
  t.guard = parse_condition(guard, ha.vars);
  t.reset = reset.empty() ? ResetMap::identity(ha.vars.num_states())
                          : parse_assignment(reset, ha.vars);
  t.label = std::move(label);
  return t;
}

ReachSettings settings_for(const HybridAutomaton& ha, double horizon, double step, int max_jumps,
                           std::string_view forbidden, std::string out_x, std::string out_y,
                           bool fixpoint = false) {
  ReachSettings s;
  s.horizon = horizon;
  s.step = step;
  s.max_jumps = max_jumps;
  s.forbidden = parse_condition(forbidden, ha.vars);
  s.output_vars = {std::move(out_x), std::move(out_y)};
  s.fixpoint_check = fixpoint;
  return s;
}

// Position rows of the platoon matrices carry +1 on the next column and
// velocity rows -1 on the following acceleration; anything else in those
// rows breaks the chain pattern.
std::string chain_note(int row, int col, double value) {
  if (row >= 18) return {};
  int kind = row % 3;
  if (kind == 0 && !(col == row + 1 && value == 1.0))
    return "suspect: position row, chain pattern expects +1 at column " + std::to_string(row + 1);
  if (kind == 1 && !(col == row + 1 && value == -1.0))
    return "suspect: velocity row, chain pattern expects -1 at column " + std::to_string(row + 1);
  return {};
}

std::vector<std::string> platoon_states() {
  std::vector<std::string> names;
  for (int i = 1; i <= 6; ++i) {
    auto k = std::to_string(i);
    names.push_back("e" + k);
    names.push_back("e" + k + "_dot");
    names.push_back("a" + k);
  }
  return names;
}

// Where an A_n entry lands: the printed matrix has an empty row 17 and a
// last row shifted by four columns; rows 15 and 16 point two columns past
// the chain pattern.
std::pair<int, int> nocomm_target(int r, int c) {
  if (r == 15 && c == 18) return {15, 16};
  if (r == 16 && c == 19) return {16, 17};
  if (r == 18) return {17, c - 4};
  return {r, c};
}

struct PlatoonMapping {
  std::vector<TranscriptionEntry> entries;
  AffineDynamics comm, nocomm;
};

PlatoonMapping map_platoon(std::size_t n) {
  PlatoonMapping out;
  out.comm = AffineDynamics::zero(n, 0);
  out.nocomm = AffineDynamics::zero(n, 0);
  auto add = [&](AffineDynamics& dyn, TranscriptionEntry e) {
    if (e.target == "A") {
      dyn.A(e.row, e.col) = e.value;
    } else if (e.target == "B") {
      dyn.params.push_back({static_cast<std::size_t>(e.row), dyn.drift_col(), "a_L", e.value});
    }
    out.entries.push_back(std::move(e));
  };

  const PrintedMatrix& am = detail::platoon_comm_printed();
  for (int r = 0; r < static_cast<int>(am.rows.size()); ++r) {
    for (int c = 0; c < static_cast<int>(am.rows[r].size()); ++c) {
      double v = am.rows[r][c];
      if (v == 0.0) continue;
      TranscriptionEntry e{am.name, r, c, v, "q_c", "A", r, c, chain_note(r, c, v)};
      if (c == 18) {
        e.target = "B";
        e.col = 0;
        e.note = "last printed column read as the a_L column";
      }
      add(out.comm, std::move(e));
    }
  }
  const PrintedMatrix& an = detail::platoon_nocomm_printed();
  for (int r = 0; r < static_cast<int>(an.rows.size()); ++r) {
    for (int c = 0; c < static_cast<int>(an.rows[r].size()); ++c) {
      double v = an.rows[r][c];
      if (v == 0.0) continue;
      auto [tr, tc] = nocomm_target(r, c);
      TranscriptionEntry e{an.name, r, c, v, "q_n", "A", tr, tc, {}};
      if (tr != r || tc != c) {
        e.note = "moved from printed (" + std::to_string(r) + ", " + std::to_string(c) +
                 ") to the nearest in-range slot of the chain pattern";
      } else {
        e.note = chain_note(r, c, v);
      }
      add(out.nocomm, std::move(e));
    }
  }
  auto add_b = [&](const std::vector<double>& b, const std::string& name,
                   const std::string& loc, AffineDynamics& dyn) {
    for (int r = 0; r < static_cast<int>(b.size()); ++r) {
      if (b[r] == 0.0) continue;
      TranscriptionEntry e{name, r, 0, b[r], loc, "B", r, 0, "coefficient of a_L"};
      if (r >= static_cast<int>(n)) {
        e.target = "dropped";
        e.row = e.col = -1;
        e.note = "beyond the state dimension";
      }
      add(dyn, std::move(e));
    }
  };
  add_b(detail::platoon_comm_b_printed(), "B_m", "q_c", out.comm);
  add_b(detail::platoon_nocomm_b_printed(), "B_n", "q_n", out.nocomm);
  return out;
}

std::vector<TranscriptionEntry> linswitch_entries() {
  std::vector<TranscriptionEntry> out;
  for (int m = 0; m < 4; ++m) {
    const PrintedMatrix& a = detail::linswitch_printed(m);
    std::string loc = "q" + std::to_string(m + 1);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        out.push_back({a.name, r, c, a.rows[r][c], loc, "A", r, c, {}});
  }
  const auto& b = detail::linswitch_b_printed();
  for (int r = 0; r < static_cast<int>(b.size()); ++r) {
    TranscriptionEntry e{"B", r, 0, b[r], "all", "B", r < 3 ? r : r - 1, 0, {}};
    if (r == 3) {
      e.target = "dropped";
      e.row = e.col = -1;
      e.note = "five printed entries for four states; this interior zero is dropped";
    }
    out.push_back(std::move(e));
  }
  return out;
}

double max_real_eigenvalue(const Matrix& a) {
  Eigen::EigenSolver<Matrix> es(a, false);
  return es.eigenvalues().real().maxCoeff();
}

ordered_json entry_json(const TranscriptionEntry& e) {
  ordered_json j;
  j["source"] = e.source;
  j["printed"] = {e.printed_row, e.printed_col};
  j["value"] = e.value;
  j["location"] = e.location;
  j["target"] = e.target;
  if (e.target != "dropped") j["at"] = {e.row, e.col};
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

std::string transcription_json(BenchmarkId id) {
  ordered_json j;
  j["benchmark"] = std::string(to_string(id));
  j["indexing"] = "zero-based; printed = position in the printed matrix, at = position in the model";
  if (id == BenchmarkId::Platoon6) {
    j["state_order"] = platoon_states();
    j["column_reading"] =
        "19 printed columns against 18 states: the last column is the a_L column (constant a_L = 0)";
    j["a_L"] = "q_c takes the last A_m column and B_m; q_n takes B_n";
  } else {
    j["state_order"] = {"x1", "x2", "x3", "x4"};
    j["b_reading"] = {-0.0845, 0.0, 0.0, -0.7342};
    j["b_alternatives"] = {
        {{"drop", "printed 1 or 2 (same vector)"}, {"b", {-0.0845, 0.0, 0.0, -0.7342}}},
        {{"drop", "printed 0"}, {"b", {0.0, 0.0, 0.0, -0.7342}}},
        {{"drop", "printed 4"}, {"b", {-0.0845, 0.0, 0.0, 0.0}}},
    };
    ordered_json eig = ordered_json::object();
    ModelBundle b = build_linswitch();
    for (const auto& loc : b.automaton.locations)
      eig[loc.name] = max_real_eigenvalue(loc.dynamics.A);
    j["max_real_eigenvalue"] = eig;
    j["stability_note"] =
        "as printed every A_i has an eigenvalue with positive real part; the matrices are kept as printed";
  }
  ordered_json entries = ordered_json::array();
  for (const auto& e : transcription(id)) entries.push_back(entry_json(e));
  j["entries"] = entries;
  return dump(j);
}

}  // namespace

const std::vector<BenchmarkId>& all_benchmarks() {
  static const std::vector<BenchmarkId> ids = {BenchmarkId::BouncingBall2, BenchmarkId::Platoon6,
                                               BenchmarkId::Tank3, BenchmarkId::LinSwitch4};
  return ids;
}

std::string_view to_string(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::BouncingBall2: return "ball2";
    case BenchmarkId::Platoon6: return "platoon6";
    case BenchmarkId::Tank3: return "tank3";
    case BenchmarkId::LinSwitch4: return "linswitch4";
  }
  return "?";
}

std::optional<BenchmarkId> parse_benchmark(std::string_view name) {
  static const std::array<std::pair<std::string_view, BenchmarkId>, 8> table = {{
      {"ball2", BenchmarkId::BouncingBall2},
      {"bouncing-ball", BenchmarkId::BouncingBall2},
      {"platoon6", BenchmarkId::Platoon6},
      {"platoon", BenchmarkId::Platoon6},
      {"tank3", BenchmarkId::Tank3},
      {"tank", BenchmarkId::Tank3},
      {"linswitch4", BenchmarkId::LinSwitch4},
      {"linswitch", BenchmarkId::LinSwitch4},
  }};
  for (const auto& [key, id] : table)
    if (key == name) return id;
  return std::nullopt;
}

ModelBundle build_bouncing_ball(double c, Interval heights) {
  if (!(c >= 0.0 && c <= 1.0))
    throw Error(ErrorKind::ValueError, "restitution c = " + format_number(c) + " outside [0, 1]");
  if (!(heights.lo <= heights.hi) || heights.lo < 0.0)
    throw Error(ErrorKind::ValueError, "height range must be a non-empty interval in [0, inf)");

  ModelBundle b;
  HybridAutomaton& ha = b.automaton;
  ha.vars.state_vars = {"x", "v", "x1", "v1"};
  ha.vars.constants = {{"c", c}};

  Location loc;
  loc.name = "always";
  loc.invariant = parse_condition("x >= 0 & x1 >= 0", ha.vars);
  loc.dynamics = parse_flow("x' == v & v' == -9.81 & x1' == v1 & v1' == -9.81", ha.vars);
  ha.locations.push_back(std::move(loc));
  ha.transitions.push_back(
      make_transition(ha, "always", "always", "x == 0 & v <= 0", "v' == -c*v", "bounce1"));
  ha.transitions.push_back(
      make_transition(ha, "always", "always", "x1 == 0 & v1 <= 0", "v1' == -c*v1", "bounce2"));

  b.settings = settings_for(ha, 40.0, 0.01, 8, "v >= 10.7", "x", "v");
  b.initial = {"always", {heights, {0.0, 0.0}, heights, {0.0, 0.0}}};
  return b;
}

ModelBundle build_platoon(const PlatoonOptions& options) {
  ModelBundle b;
  HybridAutomaton& ha = b.automaton;
  ha.vars.state_vars = platoon_states();
  ha.vars.constants = {{"a_L", 0.0}};
  if (options.clock_variant) {
    ha.vars.state_vars.push_back("t");
    ha.vars.constants["c1"] = 2.0;
    ha.vars.constants["c2"] = 2.0;
  }
  const std::size_t n = ha.vars.num_states();
  PlatoonMapping m = map_platoon(n);

  Location qc{"q_c", {}, std::move(m.comm)};
  Location qn{"q_n", {}, std::move(m.nocomm)};
  if (options.clock_variant) {
    qc.dynamics.c(n - 1) = 1.0;
    qn.dynamics.c(n - 1) = 1.0;
    qc.invariant = parse_condition("t <= c1", ha.vars);
    qn.invariant = parse_condition("t <= c2", ha.vars);
  }
  ha.locations.push_back(std::move(qc));
  ha.locations.push_back(std::move(qn));
  if (options.clock_variant) {
    ha.transitions.push_back(make_transition(ha, "q_c", "q_n", "t >= c1", "t := 0"));
    ha.transitions.push_back(make_transition(ha, "q_n", "q_c", "t >= c2", "t := 0"));
  } else {
    ha.transitions.push_back(make_transition(ha, "q_c", "q_n", ""));
    ha.transitions.push_back(make_transition(ha, "q_n", "q_c", ""));
  }

  b.settings = settings_for(ha, 12.0, 0.02, 2, "e1 >= 1.7", "e1", "e1_dot", true);
  b.initial.location = "q_c";
  b.initial.box.assign(18, Interval{0.9, 1.1});
  if (options.clock_variant) b.initial.box.push_back({0.0, 0.0});
  return b;
}

ModelBundle build_tank(const TankParams& p) {
  const std::array<std::pair<const char*, double>, 6> coeffs = {{
      {"q0", p.q0}, {"q1", p.q1}, {"k_a", p.k_a}, {"q_b", p.q_b}, {"k_2", p.k_2}, {"k_c", p.k_c}}};
  for (const auto& [name, v] : coeffs)
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorKind::ValueError,
                  std::string("tank coefficient ") + name + " = " + format_number(v) + " must be positive");

  ModelBundle b;
  HybridAutomaton& ha = b.automaton;
  ha.vars.state_vars = {"x1", "x2", "x3"};

  auto name_of = [](int mask) {
    std::string s;
    for (int k = 0; k < 3; ++k) {
      if (k > 0) s += '_';
      s += (mask >> (2 - k)) & 1 ? "on" : "off";
    }
    return s;
  };
  const std::string fmt[3][2] = {
      {"x1 >= " + format_number(p.v1_open), "x1 <= " + format_number(p.v1_close)},
      {"x2 <= " + format_number(p.v2_open), "x2 >= " + format_number(p.v2_close)},
      {"x2 <= " + format_number(p.v3_open), "x2 >= " + format_number(p.v3_close)},
  };
  // Guard that switches valve k from `on` to !on.
  const std::string toggle[3][2] = {
      {"x1 <= " + format_number(p.v1_open), "x1 >= " + format_number(p.v1_close)},
      {"x2 >= " + format_number(p.v2_open), "x2 <= " + format_number(p.v2_close)},
      {"x2 >= " + format_number(p.v3_open), "x2 <= " + format_number(p.v3_close)},
  };

  for (int mask = 0; mask < 8; ++mask) {
    bool v1 = mask & 4, v2 = mask & 2, v3 = mask & 1;
    Location loc;
    loc.name = name_of(mask);
    std::string inv;
    for (int k = 0; k < 3; ++k) {
      bool on = (mask >> (2 - k)) & 1;
      inv += (k > 0 ? " & " : "") + fmt[k][on];
    }
    loc.invariant = parse_condition(inv, ha.vars);
    AffineDynamics d = AffineDynamics::zero(3, 0);
    d.A(0, 0) = -p.k_a;
    d.c(0) = p.q0 + (v1 ? p.q1 : 0.0);
    d.A(1, 0) = p.k_a;
    d.A(1, 1) = -(v2 ? p.k_2 : 0.0) - (v3 ? p.k_c : 0.0);
    d.c(1) = -p.q_b;
    d.A(2, 1) = v3 ? p.k_c : 0.0;
    loc.dynamics = std::move(d);
    ha.locations.push_back(std::move(loc));
  }
  for (int mask = 0; mask < 8; ++mask) {
    for (int k = 0; k < 3; ++k) {
      int bit = 1 << (2 - k);
      bool on = mask & bit;
      ha.transitions.push_back(
          make_transition(ha, name_of(mask), name_of(mask ^ bit), toggle[k][on]));
    }
  }

  b.settings = settings_for(ha, 5.0, 0.1, 8, "x3 == -0.7", "x1", "x2");
  b.initial = {"off_off_off", {{0.48, 0.52}, {0.24, 0.26}, {0.19, 0.21}}};
  return b;
}

ModelBundle build_linswitch() {
  ModelBundle b;
  HybridAutomaton& ha = b.automaton;
  ha.vars.state_vars = {"x1", "x2", "x3", "x4"};
  ha.vars.input_vars = {"u"};
  ha.input_range = {{-1.0, 1.0}};

  const std::array<const char*, 4> invariants = {"x1 >= 2", "x1 >= -1", "x1 >= -3", "x1 <= 3"};
  const std::array<const char*, 4> guards = {"x1 <= 2", "x1 <= -1", "x1 <= -3", "x1 >= 3"};
  std::vector<TranscriptionEntry> entries = linswitch_entries();
  for (int m = 0; m < 4; ++m) {
    Location loc;
    loc.name = "q" + std::to_string(m + 1);
    loc.invariant = parse_condition(invariants[m], ha.vars);
    loc.dynamics = AffineDynamics::zero(4, 1);
    for (const auto& e : entries) {
      if (e.target == "A" && e.location == loc.name) loc.dynamics.A(e.row, e.col) = e.value;
      if (e.target == "B") loc.dynamics.B(e.row, 0) = e.value;
    }
    ha.locations.push_back(std::move(loc));
  }
  for (int m = 0; m < 4; ++m)
    ha.transitions.push_back(make_transition(ha, "q" + std::to_string(m + 1),
                                             "q" + std::to_string((m + 1) % 4 + 1), guards[m]));

  b.settings = settings_for(ha, 1.0, 0.01, 8, "x1 >= 20", "x1", "x2");
  b.initial = {"q1", {{3.1, 3.4}, {4.0, 4.1}, {0.1, 0.2}, {-0.3, -0.2}}};
  return b;
}

ModelBundle build_benchmark(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::BouncingBall2: return build_bouncing_ball();
    case BenchmarkId::Platoon6: return build_platoon();
    case BenchmarkId::Tank3: return build_tank();
    case BenchmarkId::LinSwitch4: return build_linswitch();
  }
  throw Error(ErrorKind::ValueError, "unknown benchmark");
}

std::vector<TranscriptionEntry> transcription(BenchmarkId id) {
  if (id == BenchmarkId::Platoon6) return map_platoon(18).entries;
  if (id == BenchmarkId::LinSwitch4) return linswitch_entries();
  return {};
}

std::map<std::string, std::string> fixture_files(BenchmarkId id) {
  ModelBundle b = build_benchmark(id);
  std::map<std::string, std::string> files;
  files["model.xml"] = emit_spaceex(b);
  files["config.cfg"] = emit_config(b);
  files["model.model"] = emit_flowstar(b);
  if (id == BenchmarkId::Platoon6 || id == BenchmarkId::LinSwitch4)
    files["transcription.json"] = transcription_json(id);
  return files;
}

std::string expected_json(BenchmarkId id, const ReachResult& result) {
  ModelBundle b = build_benchmark(id);
  const HybridAutomaton& ha = b.automaton;
  ordered_json j;
  j["benchmark"] = std::string(to_string(id));

  ordered_json s;
  s["state_vars"] = ha.vars.state_vars;
  s["input_vars"] = ha.vars.input_vars;
  ordered_json consts = ordered_json::object();
  for (const auto& [k, v] : ha.vars.constants) consts[k] = v;
  s["constants"] = consts;
  std::vector<std::string> locs;
  for (const auto& l : ha.locations) locs.push_back(l.name);
  s["locations"] = locs;
  s["transitions"] = ha.transitions.size();
  s["initial_location"] = b.initial.location;
  j["structure"] = s;

  ordered_json st;
  st["time_horizon"] = b.settings.horizon;
  st["sampling_time"] = b.settings.step;
  st["max_jumps"] = b.settings.max_jumps;
  st["forbidden"] =
      b.settings.forbidden ? format_condition(*b.settings.forbidden, ha.vars.state_vars) : "";
  st["output_variables"] = {b.settings.output_vars.first, b.settings.output_vars.second};
  st["fixpoint"] = b.settings.fixpoint_check;
  j["settings"] = st;

  ordered_json r;
  r["verdict"] = std::string(to_string(result.verdict));
  r["termination"] = std::string(to_string(result.termination));
  r["max_depth"] = result.stats.max_depth;
  r["segments"] = result.stats.segments;
  r["time_reached"] = result.stats.time_reached;
  j["reach"] = r;

  ordered_json checks = ordered_json::object();
  std::vector<std::string> notes;
  switch (id) {
    case BenchmarkId::BouncingBall2: {
      double g = 9.81, c = ha.vars.constants.at("c"), h = b.initial.box[0].hi;
      checks["max_rebound_speed"] = c * std::sqrt(2.0 * g * h);
      checks["zeno_time_range"] = {std::sqrt(2.0 * b.initial.box[0].lo / g) * (1 + c) / (1 - c),
                                   std::sqrt(2.0 * h / g) * (1 + c) / (1 - c)};
      notes.push_back("two independent balls share one location; one text mentions three balls");
      notes.push_back("the flowpipe stops at the jump bound: each bounce level doubles the successor count");
      break;
    }
    case BenchmarkId::Platoon6:
      checks["max_real_eigenvalue"] = {{"q_c", max_real_eigenvalue(ha.locations[0].dynamics.A)},
                                       {"q_n", max_real_eigenvalue(ha.locations[1].dynamics.A)}};
      notes.push_back("matrices as printed; see transcription.json for moved and suspect entries");
      notes.push_back("the verdict is recorded, not compared against a reference");
      notes.push_back("switching is spontaneous (guard true); build_platoon has a clock variant");
      break;
    case BenchmarkId::Tank3:
      checks["levels_range"] = {0.0, 1.0};
      notes.push_back("flow coefficients are defaults of this corpus, not published values");
      notes.push_back("x3 only grows from its initial level, so x3 == -0.7 is unreachable");
      break;
    case BenchmarkId::LinSwitch4: {
      ordered_json eig = ordered_json::object();
      for (const auto& l : ha.locations) eig[l.name] = max_real_eigenvalue(l.dynamics.A);
      checks["max_real_eigenvalue"] = eig;
      checks["guard_thresholds_x1"] = {2.0, -1.0, -3.0, 3.0};
      notes.push_back("guard thresholds on x1 are corpus choices placed at simulated crossings");
      notes.push_back("as printed all four A_i are unstable");
      break;
    }
  }
  j["checks"] = checks;
  j["notes"] = notes;
  return dump(j);
}

void export_fixtures(BenchmarkId id, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : fixture_files(id)) write_file(dir / name, text);
  write_file(dir / "expected.json", expected_json(id, reach(build_benchmark(id))));
}

}  // namespace hyra
