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


#ifndef HYRA_SIMULATE_HPP_
#define HYRA_SIMULATE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyra/ir.hpp"
#include "hyra/model_io.hpp"
#include "hyra/setrep.hpp"

namespace hyra {

enum class IntegratorKind { Euler, Heun };  // Heun is the second-order scheme

std::string_view to_string(IntegratorKind kind);

// One fixed step of x' = A x + B u + c.
Vector step(const AffineDynamics& dyn, const Vector& x, const Vector& u, double h,
            IntegratorKind kind);

struct Sample {
  double time = 0.0;
  std::string location;
  Vector state;
  int jumps = 0;
};

struct Event {
  double time = 0.0;
  std::size_t transition = 0;  // index into the automaton's transition list
  std::optional<std::string> label;
  std::string source;
  std::string target;
  Vector pre;
  Vector post;
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<Event> events;
  bool zeno = false;
  std::optional<double> zeno_time;  // accumulation-time estimate
  bool blocked = false;             // stopped because an invariant was left
};

struct SimOptions {
  double step = 0.0;  // 0: a tenth of the bundle's reach step
  double zeno_dwell = 1e-4;
  int zeno_count = 10;
  int max_events = 10000;
  std::optional<int> max_jumps;         // transitions are disabled afterwards
  std::vector<double> spontaneous_times;  // when guard-`true` transitions fire
  std::optional<Vector> input;            // constant input; default: centre of U
};

struct Crossing {
  double offset = 0.0;  // time after the start of the step
  Vector state;         // state just before the guard is entered
};

// Bisects the step from x_before for the earliest point where the whole
// guard holds. Inequalities are level-triggered; an equality counts as
// reached once its residual changes sign. Returns nullopt when the guard is
// not reached at the end of the step or is `true`.
std::optional<Crossing> detect_event(const AffineDynamics& dyn, const Transition& transition,
                                     const Vector& x_before, const Vector& x_after,
                                     const Vector& u, double t, double h, IntegratorKind kind);

// `bundle` may carry symbolic constants; they are bound at their values.
// Throws Error(InitOutsideInvariant | MaxEventsExceeded).
Trajectory simulate(const ModelBundle& bundle, const Vector& x0, IntegratorKind kind,
                    const SimOptions& options = {});

// One run per start point on up to `threads` workers; results in input order.
std::vector<Trajectory> simulate_many(const ModelBundle& bundle, const std::vector<Vector>& x0s,
                                      IntegratorKind kind, const SimOptions& options,
                                      unsigned threads);

// Box corners first (when k >= 2^n), then seeded uniform points.
std::vector<Vector> sample_initial(const Box& box, std::size_t k, std::uint64_t seed);

// time,location,<state vars>; with several runs a leading `run` column.
std::string trajectory_csv(const std::vector<Trajectory>& runs, const VariableTable& vars);
std::string events_csv(const std::vector<Trajectory>& runs, const VariableTable& vars);

}  // namespace hyra

#endif  // HYRA_SIMULATE_HPP_
