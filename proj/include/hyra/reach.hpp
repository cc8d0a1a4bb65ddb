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


#ifndef HYRA_REACH_HPP_
#define HYRA_REACH_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyra/ir.hpp"
#include "hyra/model_io.hpp"
#include "hyra/setrep.hpp"

namespace hyra {

struct FlowpipeSegment {
  Interval time;
  Zonotope set;  // unclamped enclosure
  Box hull;      // box hull of `set` intersected with the location invariant
  std::string location;
  int jump_depth = 0;
};

enum class Verdict { SafeProved, PossiblyUnsafe };
enum class Termination { Completed, JumpBoundHit, FixpointReached };

std::string_view to_string(Verdict v);
std::string_view to_string(Termination t);

struct ReachStats {
  std::size_t segments = 0;
  int max_depth = 0;          // deepest jump depth that produced a flowpipe
  double time_reached = 0.0;  // largest segment end time
  double max_bloat = 0.0;     // largest curvature radius seen in discretize
  double wall_seconds = 0.0;
};

struct ReachResult {
  std::vector<FlowpipeSegment> segments;
  Verdict verdict = Verdict::SafeProved;
  Termination termination = Termination::Completed;
  std::optional<std::size_t> offending_segment;
  ReachStats stats;
};

struct ReachOptions {
  std::size_t max_generators = 20;
  // Curvature radius allowed relative to the initial-set radius.
  double bloat_ratio = 10.0;
};

// One-step kernel of x' = A x + B u + c for a fixed step.
struct StepKernel {
  Matrix phi;     // e^{A step}
  Vector offset;  // effect of the fixed drift c + B u_mid over one step
  Matrix f_center, f_radius;  // interval matrix bounding the curvature of A x
  Box drift_curvature;        // curvature contribution of the fixed drift
  Zonotope input_set;         // states reachable from 0 under B (u - u_mid)
};

StepKernel make_kernel(const AffineDynamics& dyn, const Box& inputs, double step);

struct Discretization {
  Zonotope omega0;  // all states over [0, step]
  Zonotope V;       // one-step input contribution
  Matrix phi;
  Vector offset;
  double alpha = 0.0;  // curvature radius
};

// `dyn` must be resolved. An empty input box means no inputs.
Discretization discretize(const AffineDynamics& dyn, const Zonotope& X0, const Box& U,
                          double step);

struct FlowpipeStart {
  Interval time{0.0, 0.0};  // window in which the set was entered
  int depth = 0;
  bool check_invariant = true;  // InitOutsideInvariant when the hull leaves the invariant
};

// Throws Error(InitOutsideInvariant | StepTooLarge).
std::vector<FlowpipeSegment> flowpipe(const Location& loc, const Zonotope& init,
                                      const ReachSettings& settings, const FlowpipeStart& start = {},
                                      const Box& inputs = {}, const ReachOptions& options = {},
                                      double* alpha_out = nullptr);

struct JumpSuccessor {
  std::string target;
  Zonotope init;
  Interval time;
  int depth = 0;
};

std::vector<JumpSuccessor> jump_successors(const std::vector<FlowpipeSegment>& segments,
                                           const Transition& transition,
                                           const HybridAutomaton& automaton, double horizon,
                                           std::size_t max_generators = 20);

// `bundle` may still carry symbolic constants; they are bound at their values.
ReachResult reach(const ModelBundle& bundle, const ReachOptions& options = {});

struct SafetyReport {
  Verdict verdict = Verdict::SafeProved;
  std::optional<std::size_t> offending_segment;
};

// Equality constraints are checked as slabs of half-width 1e-9 + `bloat`.
SafetyReport check_safety(const std::vector<FlowpipeSegment>& segments, const Condition& forbidden,
                          double bloat = 0.0);

// time_lo,time_hi,location,jump_depth,<v>_lo,<v>_hi,...
std::string segments_csv(const std::vector<FlowpipeSegment>& segments, const VariableTable& vars);

// VERDICT <verdict> jumps=<d> segments=<n> time=<t>
std::string verdict_line(const ReachResult& result);

}  // namespace hyra

#endif  // HYRA_REACH_HPP_
