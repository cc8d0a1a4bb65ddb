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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1 for ctest).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyra/corpus.hpp"
#include "hyra/error.hpp"
#include "hyra/expr.hpp"
#include "hyra/model_io.hpp"
#include "hyra/reach.hpp"
#include "hyra/simulate.hpp"
#include "json.hpp"

using namespace hyra;

namespace {

constexpr double kG = 9.81;
const std::filesystem::path kCorpus = std::filesystem::path(HYRA_SOURCE_DIR) / "corpus";

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x(i++) = d;
  return x;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

// x' = -x, x(0) = 1.
ModelBundle decay_bundle(double horizon, double step) {
  ModelBundle b;
  b.automaton.vars.state_vars = {"x"};
  Location loc;
  loc.name = "run";
  loc.dynamics = parse_flow("x' == -x", b.automaton.vars);
  b.automaton.locations.push_back(loc);
  b.settings.horizon = horizon;
  b.settings.step = step;
  b.settings.output_vars = {"x", "x"};
  b.initial = {"run", {{1.0, 1.0}}};
  return b;
}

// Least-squares slope of log(err) against log(h).
double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Global error at t = 1 of x' = -x integrated with fixed step h.
double decay_error(double h, IntegratorKind kind) {
  AffineDynamics d = AffineDynamics::zero(1, 0);
  d.A(0, 0) = -1.0;
  Vector x = vec({1.0});
  const int n = static_cast<int>(std::lround(1.0 / h));
  for (int i = 0; i < n; ++i) x = step(d, x, Vector(0), h, kind);
  return std::abs(x(0) - std::exp(-1.0));
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  ModelBundle b = build_bouncing_ball();
  SimOptions opt;
  opt.step = 1e-4;
  const Trajectory tr = simulate(b, vec({10.1, 0.0, 10.2, 0.0}), IntegratorKind::Heun, opt);
  const double secs = seconds_since(t0);
  const double t_oracle = std::sqrt(2.0 * 10.1 / kG);
  const double v_oracle = 0.75 * std::sqrt(2.0 * kG * 10.1);
  auto it = std::find_if(tr.events.begin(), tr.events.end(),
                         [](const Event& e) { return e.label == std::string("bounce1"); });
  if (it == tr.events.end()) return {false, "no impact of the first ball"};
  const double dt = std::abs(it->time - t_oracle);
  const double dv = std::abs(it->post(1) - v_oracle);
  return {dt <= 1e-6 && dv <= 1e-3 && secs < 1.0,
          "impact " + num(it->time) + " (oracle " + num(t_oracle) + ", err " + num(dt) +
              "), rebound " + num(it->post(1)) + " (oracle " + num(v_oracle) + ", err " + num(dv) +
              "), " + num(secs) + " s"};
}

Outcome criterion2() {
  const double c = 0.75;
  ModelBundle b = build_bouncing_ball();
  std::vector<std::pair<double, double>> starts = {
      {10.0, 10.0}, {10.05, 10.05}, {10.1, 10.1}, {10.15, 10.15}, {10.2, 10.2}, {10.0, 10.2}, {10.2, 10.0}};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> height(10.0, 10.2);
  for (int i = 0; i < 5; ++i) starts.emplace_back(height(rng), height(rng));
  bool ok = true;
  std::string worst;
  double lo = INFINITY, hi = -INFINITY;
  for (auto [h1, h2] : starts) {
    const Trajectory tr = simulate(b, vec({h1, 0.0, h2, 0.0}), IntegratorKind::Heun);
    const double oracle = std::sqrt(2.0 * std::min(h1, h2) / kG) * (1 + c) / (1 - c);
    if (!tr.zeno || !tr.zeno_time) {
      ok = false;
      worst = "no zeno flag for heights " + num(h1) + ", " + num(h2);
      continue;
    }
    const double z = *tr.zeno_time;
    lo = std::min(lo, z);
    hi = std::max(hi, z);
    if (!(z >= 9.99 && z <= 10.10)) {
      ok = false;
      worst = "estimate " + num(z) + " for heights " + num(h1) + ", " + num(h2) + " (oracle " +
              num(oracle) + ")";
    }
  }
  return {ok, ok ? "estimates in [" + num(lo) + ", " + num(hi) + "] over " +
                       std::to_string(starts.size()) + " starts"
                 : worst};
}

Outcome criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  ModelBundle b = build_bouncing_ball();
  const ReachResult safe = reach(b);
  ModelBundle tight = b;
  tight.settings.forbidden = parse_condition("v >= 10", b.automaton.vars);
  const ReachResult unsafe = reach(tight);
  const double secs = seconds_since(t0);
  return {safe.verdict == Verdict::SafeProved && unsafe.verdict == Verdict::PossiblyUnsafe &&
              secs < 10.0,
          "v >= 10.7: " + std::string(to_string(safe.verdict)) +
              ", v >= 10.0: " + std::string(to_string(unsafe.verdict)) + " (true max " +
              num(0.75 * std::sqrt(2 * kG * 10.2)) + "), " + num(secs) + " s"};
}

Outcome criterion4() {
  const ReachResult r = reach(decay_bundle(1.0, 1e-3));
  const double oracle = std::exp(-1.0);
  bool found = false, ok = true;
  double width = 0.0;
  for (const auto& s : r.segments) {
    if (!(s.time.lo <= 1.0 && 1.0 <= s.time.hi)) continue;
    found = true;
    width = std::max(width, s.hull.hi(0) - s.hull.lo(0));
    ok = ok && s.hull.lo(0) <= oracle && oracle <= s.hull.hi(0) && width <= 0.01;
  }
  return {found && ok, "width at t=1: " + num(width) + ", contains e^-1: " + (ok ? "yes" : "no")};
}

Outcome criterion5() {
  const std::vector<double> hs = {1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> ee, eh;
  for (double h : hs) {
    ee.push_back(decay_error(h, IntegratorKind::Euler));
    eh.push_back(decay_error(h, IntegratorKind::Heun));
  }
  const double se = loglog_slope(hs, ee), sh = loglog_slope(hs, eh);
  // Free fall x' = v, v' = -g over 1 s.
  AffineDynamics d = AffineDynamics::zero(2, 0);
  d.A(0, 1) = 1.0;
  d.c(1) = -kG;
  double rel = 0.0;
  for (double h : {0.1, 0.01, 0.001}) {
    Vector x = vec({10.0, 0.0});
    const int n = static_cast<int>(std::lround(1.0 / h));
    for (int i = 0; i < n; ++i) x = step(d, x, Vector(0), h, IntegratorKind::Heun);
    const double exact = 10.0 - 0.5 * kG;
    rel = std::max(rel, std::abs(x(0) - exact) / std::abs(exact));
  }
  return {std::abs(se - 1.0) <= 0.2 && std::abs(sh - 2.0) <= 0.2 && rel <= 1e-9,
          "Euler slope " + num(se) + ", Heun slope " + num(sh) + ", free-fall rel err " + num(rel)};
}

// Every sampled state lies in the box hull of a segment of its location
// whose time interval contains the sample time.
struct Containment {
  std::map<std::string, std::vector<const FlowpipeSegment*>> by_loc;
  std::map<std::string, double> max_width;

  explicit Containment(const ReachResult& r) {
    for (const auto& s : r.segments) {
      by_loc[s.location].push_back(&s);
      max_width[s.location] = std::max(max_width[s.location], s.time.hi - s.time.lo);
    }
    for (auto& [_, v] : by_loc)
      std::sort(v.begin(), v.end(),
                [](const FlowpipeSegment* a, const FlowpipeSegment* b) { return a->time.lo < b->time.lo; });
  }

  bool covers(const Sample& s) const {
    auto it = by_loc.find(s.location);
    if (it == by_loc.end()) return false;
    const auto& v = it->second;
    const double t = s.time, tol = 1e-9;
    auto end = std::upper_bound(v.begin(), v.end(), t + tol,
                                [](double x, const FlowpipeSegment* seg) { return x < seg->time.lo; });
    const double reach_back = max_width.at(s.location) + tol;
    for (auto p = end; p != v.begin();) {
      --p;
      if ((*p)->time.lo < t - reach_back) break;
      if ((*p)->time.hi + tol >= t && (*p)->hull.contains(s.state, 1e-6)) return true;
    }
    return false;
  }
};

Outcome criterion6() {
  std::string detail;
  bool ok = true;
  for (BenchmarkId id : all_benchmarks()) {
    const ModelBundle b = build_benchmark(id);
    const ReachResult r = reach(b);
    const Containment cover(r);
    SimOptions opt;
    opt.step = b.settings.step / 10.0;
    opt.max_jumps = b.settings.max_jumps;
    const auto x0s = sample_initial(Box::from_intervals(b.initial.box), 100, 2026);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> when(0.0, b.settings.horizon);
    std::size_t samples = 0, violations = 0;
    for (std::size_t k = 0; k < x0s.size(); ++k) {
      SimOptions o = opt;
      // Spontaneous switches at seeded random times (platoon).
      o.spontaneous_times = {when(rng), when(rng)};
      std::sort(o.spontaneous_times.begin(), o.spontaneous_times.end());
      const Trajectory tr = simulate(b, x0s[k], IntegratorKind::Heun, o);
      for (const auto& s : tr.samples) {
        if (s.jumps > b.settings.max_jumps) continue;
        ++samples;
        if (!cover.covers(s)) ++violations;
      }
    }
    ok = ok && violations == 0 && samples > 0;
    detail += std::string(to_string(id)) + ": " + std::to_string(violations) + "/" +
              std::to_string(samples) + "; ";
  }
  return {ok, "violations/samples " + detail};
}

Outcome criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (BenchmarkId id : all_benchmarks()) {
    const ModelBundle b = build_benchmark(id);
    const SpaceExModel sx = parse_spaceex(emit_spaceex(b));
    const ConfigFile cfg = parse_config(emit_config(b), sx.automaton);
    ModelBundle back;
    back.automaton = sx.automaton;
    back.system = sx.component;
    back.settings = cfg.settings;
    back.initial = cfg.initial;
    const bool sx_ok = back == b;
    const bool js_ok = read_json(write_json(b)) == b;
    const std::filesystem::path dir = kCorpus / std::string(to_string(id));
    const ModelBundle disk = load_bundle(dir / "model.xml");
    const bool fx_ok = emit_flowstar(disk) == read_file(dir / "model.model") && disk == b;
    ok = ok && sx_ok && js_ok && fx_ok;
    detail += std::string(to_string(id)) + (sx_ok && js_ok && fx_ok ? " ok; " : " MISMATCH; ");
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 1.0;
  return {ok, detail + num(secs) + " s"};
}

Outcome criterion8() {
  auto load = [](const char* name) { return load_bundle(kCorpus / name / "model.xml"); };
  const ModelBundle tank = load("tank3"), ls = load("linswitch4"), pl = load("platoon6"),
                    ball = load("ball2");
  const bool tank_ok = tank.automaton.locations.size() == 8 && tank.initial.location == "off_off_off";
  const bool ls_ok = ls.automaton.locations.size() == 4 && ls.automaton.transitions.size() == 4;
  const bool pl_ok = pl.automaton.locations.size() == 2 && pl.settings.max_jumps == 2 &&
                     pl.settings.horizon == 12.0 && pl.automaton.vars.num_states() == 18;
  const auto c = ball.automaton.vars.constants.find("c");
  const bool ball_ok = ball.settings.horizon == 40.0 && c != ball.automaton.vars.constants.end() &&
                       c->second == 0.75;
  return {tank_ok && ls_ok && pl_ok && ball_ok,
          std::string("tank ") + (tank_ok ? "ok" : "bad") + ", linswitch " + (ls_ok ? "ok" : "bad") +
              ", platoon " + (pl_ok ? "ok" : "bad") + ", ball " + (ball_ok ? "ok" : "bad")};
}

// Characteristic polynomial by Faddeev-LeVerrier, then the Hurwitz
// determinants of its coefficients: all positive iff every root has a
// negative real part.
bool hurwitz_stable(const Matrix& A) {
  const Eigen::Index n = A.rows();
  std::vector<double> c(static_cast<std::size_t>(n) + 1);  // monic: c[0] = 1
  c[0] = 1.0;
  Matrix M = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    M = A * M + c[static_cast<std::size_t>(k - 1)] * Matrix::Identity(n, n);
    c[static_cast<std::size_t>(k)] = -(A * M).trace() / static_cast<double>(k);
  }
  for (Eigen::Index k = 1; k <= n; ++k) {
    Matrix H = Matrix::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) {
        const Eigen::Index idx = 2 * (i + 1) - (j + 1);
        if (idx >= 0 && idx <= n) H(i, j) = c[static_cast<std::size_t>(idx)];
      }
    if (!(H.determinant() > 0.0)) return false;
  }
  return true;
}

Outcome criterion9() {
  const ModelBundle b = build_linswitch();
  std::vector<std::string> unstable;
  for (const auto& loc : b.automaton.locations)
    if (!hurwitz_stable(loc.dynamics.A)) unstable.push_back(loc.name);
  if (unstable.empty()) return {true, "all four modes Hurwitz stable"};
  // Pinned transcription decision: the matrices are kept as printed and the
  // instability is recorded, with the same per-mode values, in the fixture.
  const auto doc = nlohmann::json::parse(read_file(kCorpus / "linswitch4" / "transcription.json"));
  bool documented = doc.contains("stability_note") && doc.contains("max_real_eigenvalue");
  std::string names;
  for (const auto& name : unstable) {
    names += name + " ";
    const Location* loc = b.automaton.find_location(name);
    Eigen::EigenSolver<Matrix> es(loc->dynamics.A, false);
    const double re = es.eigenvalues().real().maxCoeff();
    documented = documented && doc["max_real_eigenvalue"].contains(name) &&
                 std::abs(doc["max_real_eigenvalue"][name].get<double>() - re) <= 1e-9 && re > 0.0;
  }
  return {documented, "unstable as printed: " + names +
                          (documented ? "(pinned: recorded in linswitch4/transcription.json)"
                                      : "(NOT documented)")};
}

Outcome criterion10() {
  const ModelBundle b = load_bundle(kCorpus / "platoon6" / "model.xml");
  const auto t0 = std::chrono::steady_clock::now();
  const ReachResult r = reach(b);
  const double secs = seconds_since(t0);
  const auto expected = nlohmann::json::parse(read_file(kCorpus / "platoon6" / "expected.json"));
  const std::string recorded = expected["reach"]["verdict"].get<std::string>();
  const bool ok = std::abs(r.stats.time_reached - 12.0) <= 1e-9 && r.stats.max_depth <= 2 &&
                  b.settings.step == 0.02 && secs < 60.0 && recorded == to_string(r.verdict);
  return {ok, std::string(to_string(r.verdict)) + " (recorded " + recorded + "), depth " +
                  std::to_string(r.stats.max_depth) + ", time " + num(r.stats.time_reached) + ", " +
                  num(secs) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 ball simulation impact and rebound", criterion1},
      {"2 ball zeno detection", criterion2},
      {"3 ball reach safety", criterion3},
      {"4 linear reach accuracy", criterion4},
      {"5 integrator orders", criterion5},
      {"6 containment soundness", criterion6},
      {"7 translation round trips", criterion7},
      {"8 corpus structure", criterion8},
      {"9 switching-mode stability", criterion9},
      {"10 platoon reach", criterion10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
