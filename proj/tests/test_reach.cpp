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


#include <cmath>
#include <random>
#include <regex>
#include <string>

#include "doctest.h"
#include "hyra/corpus.hpp"
#include "hyra/error.hpp"
#include "hyra/expr.hpp"
#include "hyra/model_io.hpp"
#include "hyra/reach.hpp"

using namespace hyra;

namespace {

ModelBundle one_location(const std::vector<std::string>& vars, const std::string& flow,
                         const std::string& invariant, std::vector<Interval> init, double T,
                         double step) {
  ModelBundle b;
  b.automaton.vars.state_vars = vars;
  Location loc;
  loc.name = "run";
  loc.dynamics = parse_flow(flow, b.automaton.vars);
  loc.invariant = parse_condition(invariant, b.automaton.vars);
  b.automaton.locations.push_back(loc);
  b.settings.horizon = T;
  b.settings.step = step;
  b.settings.output_vars = {vars.front(), vars.back()};
  b.initial = {"run", std::move(init)};
  return b;
}

// True when some segment with a time interval containing t has a hull containing x.
bool covered(const ReachResult& r, double t, const Vector& x, double slack = 1e-9) {
  for (const auto& s : r.segments)
    if (s.time.lo - 1e-12 <= t && t <= s.time.hi + 1e-12 && s.hull.contains(x, slack)) return true;
  return false;
}

template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("decay flowpipe encloses the exact solution tightly") {
  const ReachResult r = reach(one_location({"x"}, "x' == -x", "", {{1.0, 1.0}}, 2.0, 1e-3));
  CHECK(r.verdict == Verdict::SafeProved);
  CHECK(r.termination == Termination::Completed);
  CHECK(r.stats.time_reached == doctest::Approx(2.0));
  double worst = 0.0;
  for (const auto& s : r.segments) {
    // Oracle: e^-t is monotone, so the true range over the segment is [e^-hi, e^-lo].
    CHECK(s.hull.lo(0) <= std::exp(-s.time.hi) + 1e-12);
    CHECK(s.hull.hi(0) >= std::exp(-s.time.lo) - 1e-12);
    worst = std::max(worst, (s.hull.hi(0) - s.hull.lo(0)) - (std::exp(-s.time.lo) - std::exp(-s.time.hi)));
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("rotation flowpipe contains sampled exact trajectories") {
  const double T = 6.3;
  const ReachResult r = reach(one_location({"x", "y"}, "x' == y & y' == -x", "",
                                           {{1.0, 1.1}, {0.0, 0.1}}, T, 0.05));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double x0 = 1.0 + 0.1 * u(rng), y0 = 0.1 * u(rng);
    for (double t = 0.0; t <= T; t += 0.0137) {
      Vector x(2);
      x << x0 * std::cos(t) + y0 * std::sin(t), -x0 * std::sin(t) + y0 * std::cos(t);
      CHECK(covered(r, t, x));
    }
  }
}

TEST_CASE("bounded inputs: extreme constant inputs stay enclosed") {
  ModelBundle b = one_location({"x"}, "x' == -x", "", {{0.5, 0.6}}, 3.0, 0.01);
  b.automaton.vars.input_vars = {"w"};
  b.automaton.input_range = {{-0.1, 0.1}};
  b.automaton.locations[0].dynamics = parse_flow("x' == -x + w", b.automaton.vars);
  const ReachResult r = reach(b);
  for (double w : {-0.1, 0.1})
    for (double x0 : {0.5, 0.6})
      for (double t = 0.0; t <= 3.0; t += 0.01) {
        Vector x(1);
        x << w + (x0 - w) * std::exp(-t);
        CHECK(covered(r, t, x));
      }
}

TEST_CASE("discretization encloses the start and one-step sets") {
  AffineDynamics d = AffineDynamics::zero(2, 0);
  d.A << -0.5, 2.0, -2.0, -0.5;
  d.c << 0.3, 0.0;
  const Zonotope X0 = Zonotope::from_box(Box(Vector::Constant(2, 0.9), Vector::Constant(2, 1.1)));
  const double h = 0.05;
  const Discretization disc = discretize(d, X0, Box{}, h);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  // Oracle: exact solutions from the corners at sub-step times.
  for (int corner = 0; corner < 4; ++corner) {
    Vector x0(2);
    x0 << (corner & 1 ? 1.1 : 0.9), (corner & 2 ? 1.1 : 0.9);
    const Vector xs = -d.A.fullPivLu().solve(d.c);  // equilibrium
    for (double t = 0.0; t <= h + 1e-12; t += h / 16) {
      const Vector x = xs + matrix_exponential(d.A, t) * (x0 - xs);
      for (int j = 0; j < 8; ++j) {
        Vector dir(2);
        dir << g(rng), g(rng);
        CHECK(dir.dot(x) <= support(disc.omega0, dir) + 1e-9);
      }
    }
  }
  CHECK((disc.phi - matrix_exponential(d.A, h)).norm() <= 1e-12);
}

TEST_CASE("engine errors") {
  CHECK(error_kind([] { reach(one_location({"x"}, "x' == -1000*x", "", {{1.0, 1.0}}, 1.0, 1.0)); }) ==
        ErrorKind::StepTooLarge);
  CHECK(error_kind([] { reach(one_location({"x"}, "x' == -x", "x >= 2", {{1.0, 1.0}}, 1.0, 0.01)); }) ==
        ErrorKind::InitOutsideInvariant);
}

TEST_CASE("fixpoint detection stops a contracting self loop") {
  ModelBundle b = one_location({"x"}, "x' == 0", "", {{0.0, 1.0}}, 1.0, 0.1);
  b.automaton.transitions.push_back({"run", "run", Condition{},
                                     parse_assignment("x := 0.5*x", b.automaton.vars), "halve"});
  b.settings.max_jumps = 5;
  b.settings.fixpoint_check = true;
  const ReachResult r = reach(b);
  CHECK(r.termination == Termination::FixpointReached);
  b.settings.fixpoint_check = false;
  CHECK(reach(b).termination == Termination::JumpBoundHit);
}

TEST_CASE("ball reach: guard windows and verdicts") {
  const ModelBundle ball = build_bouncing_ball();
  const ReachResult r = reach(ball);
  CHECK(r.verdict == Verdict::SafeProved);
  CHECK(r.termination == Termination::JumpBoundHit);
  CHECK(r.stats.max_depth == ball.settings.max_jumps);
  for (const auto& s : r.segments) CHECK(s.set.num_generators() <= 20);
  // Oracle: first impacts happen at sqrt(2 h / g) for h in [10, 10.2].
  double first_lo = INFINITY;
  for (const auto& s : r.segments)
    if (s.jump_depth == 1) first_lo = std::min(first_lo, s.time.lo);
  CHECK(first_lo <= std::sqrt(2 * 10.0 / 9.81) + 1e-9);
  CHECK(first_lo >= std::sqrt(2 * 10.0 / 9.81) - 0.05);

  ModelBundle tight = ball;
  tight.settings.forbidden = parse_condition("v >= 10", ball.automaton.vars);
  const ReachResult bad = reach(tight);
  CHECK(bad.verdict == Verdict::PossiblyUnsafe);
  REQUIRE(bad.offending_segment);
  CHECK(bad.segments[*bad.offending_segment].hull.hi(1) >= 10.0);
}

TEST_CASE("jump successors land inside the target invariant") {
  const ModelBundle b = build_linswitch();
  const HybridAutomaton a = resolve_constants(b.automaton);
  const Location& start = *a.find_location(b.initial.location);
  const auto segs = flowpipe(start, Zonotope::from_box(Box::from_intervals(b.initial.box)), b.settings,
                             {}, Box::from_intervals(a.input_range));
  const Transition* out = nullptr;
  for (const auto& t : a.transitions)
    if (t.source == start.name) out = &t;
  REQUIRE(out);
  const auto succ = jump_successors(segs, *out, a, b.settings.horizon);
  REQUIRE_FALSE(succ.empty());
  const Location& target = *a.find_location(out->target);
  for (const auto& s : succ) {
    CHECK(s.depth == 1);
    const Box h = box_hull(s.init);
    // The guard holds and the target invariant holds on the successor.
    Vector lo = h.lo, hi = h.hi;
    CHECK(out->guard.satisfied(lo, 1e-9));
    CHECK(target.invariant.satisfied(hi, 1e-9));
    CHECK(s.time.lo >= 0.0);
    CHECK(s.time.hi <= b.settings.horizon);
  }
}

TEST_CASE("safety check treats equalities as thin slabs") {
  VariableTable t;
  t.state_vars = {"x"};
  FlowpipeSegment s;
  s.time = {0.0, 1.0};
  s.location = "run";
  s.hull = Box(Vector::Constant(1, 0.0), Vector::Constant(1, 1.0));
  s.set = Zonotope::from_box(s.hull);
  CHECK(check_safety({s}, parse_condition("x == 0.5", t)).verdict == Verdict::PossiblyUnsafe);
  CHECK(check_safety({s}, parse_condition("x == 1.5", t)).verdict == Verdict::SafeProved);
  CHECK(check_safety({s}, parse_condition("x == 1.01", t), 0.02).verdict == Verdict::PossiblyUnsafe);
  CHECK(check_safety({s}, parse_condition("x >= 1.01", t)).verdict == Verdict::SafeProved);
}

TEST_CASE("verdict line and segment csv") {
  const ReachResult r = reach(build_tank());
  const std::string line = verdict_line(r);
  CHECK(std::regex_match(line, std::regex(R"(VERDICT (SafeProved|PossiblyUnsafe) jumps=\d+ segments=\d+ time=\S+)")));
  CHECK(line.find("segments=" + std::to_string(r.segments.size())) != std::string::npos);
  const std::string csv = segments_csv(r.segments, build_tank().automaton.vars);
  CHECK(csv.rfind("time_lo,time_hi,location,jump_depth,x1_lo,x1_hi", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == r.segments.size() + 1);
}

TEST_CASE("reach is deterministic") {
  const ReachResult a = reach(build_platoon()), b = reach(build_platoon());
  CHECK(segments_csv(a.segments, build_platoon().automaton.vars) ==
        segments_csv(b.segments, build_platoon().automaton.vars));
}
