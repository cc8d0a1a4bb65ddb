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


#include "hyra/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "hyra/error.hpp"
#include "hyra/expr.hpp"

namespace hyra {

namespace {

constexpr double kInvariantTol = 1e-9;

double residual(const LinearConstraint& c, const Vector& x) { return c.coeffs.dot(x) - c.bound; }

bool reached(const LinearConstraint& c, const Vector& x, double g_before) {
  const double g = residual(c, x);
  switch (c.relation) {
    case Relation::LessEq:
    case Relation::Less:
      return g <= 0.0;
    case Relation::GreaterEq:
    case Relation::Greater:
      return g >= 0.0;
    case Relation::Equal:
      return g == 0.0 || (g_before != 0.0 && (g > 0.0) != (g_before > 0.0));
  }
  return false;
}

// Guard already holds at x (zero-time check after entering a location).
bool holds_now(const Condition& guard, const Vector& x) {
  if (guard.is_true()) return false;
  return std::all_of(guard.constraints.begin(), guard.constraints.end(),
                     [&](const LinearConstraint& c) { return reached(c, x, 0.0); });
}

class Runner {
 public:
  Runner(const HybridAutomaton& a, double horizon, IntegratorKind kind, const SimOptions& opt,
         double dt, Vector u)
      : a_(a), horizon_(horizon), kind_(kind), opt_(opt), dt_(dt), u_(std::move(u)) {}

  Trajectory run(const std::string& start, const Vector& x0) {
    loc_ = *a_.location_index(start);
    x_ = x0;
    t_ = 0.0;
    if (!a_.locations[loc_].invariant.satisfied(x_, kInvariantTol))
      throw Error(ErrorKind::InitOutsideInvariant,
                  "start point is not inside the invariant of '" + start + "'");
    record();
    std::vector<double> schedule = opt_.spontaneous_times;
    std::sort(schedule.begin(), schedule.end());
    std::size_t next_spont = 0;
    const double tol = 1e-12 * std::max(1.0, horizon_);

    if (fire_enabled()) return std::move(traj_);
    while (t_ < horizon_ - tol) {
      while (next_spont < schedule.size() && schedule[next_spont] <= t_ + tol) {
        if (schedule[next_spont] >= t_ - tol && fire_spontaneous()) {
          if (fire_enabled()) return std::move(traj_);
        }
        ++next_spont;
      }
      double h = std::min(dt_, horizon_ - t_);
      if (next_spont < schedule.size()) h = std::min(h, schedule[next_spont] - t_);
      const Location& loc = a_.locations[loc_];
      const Vector x_new = step(loc.dynamics, x_, u_, h, kind_);

      std::optional<Crossing> best;
      std::size_t best_index = 0;
      if (jumps_allowed()) {
        for (std::size_t i = 0; i < a_.transitions.size(); ++i) {
          const Transition& tr = a_.transitions[i];
          if (tr.source != loc.name) continue;
          auto hit = detect_event(loc.dynamics, tr, x_, x_new, u_, t_, h, kind_);
          if (hit && (!best || hit->offset < best->offset)) {
            best = std::move(hit);
            best_index = i;
          }
        }
      }
      if (best) {
        const double t_event = t_ + best->offset;
        x_ = best->state;
        t_ = t_event;
        if (t_ > traj_.samples.back().time) record();
        if (fire(best_index)) return std::move(traj_);
        if (fire_enabled()) return std::move(traj_);
        continue;
      }
      if (!loc.invariant.satisfied(x_new, kInvariantTol)) {
        traj_.blocked = true;
        return std::move(traj_);
      }
      x_ = x_new;
      t_ = (h == horizon_ - t_) ? horizon_ : t_ + h;
      record();
    }
    return std::move(traj_);
  }

 private:
  bool jumps_allowed() const {
    return !opt_.max_jumps || static_cast<int>(traj_.events.size()) < *opt_.max_jumps;
  }

  void record() {
    traj_.samples.push_back({t_, a_.locations[loc_].name, x_, static_cast<int>(traj_.events.size())});
  }

  // Fires every guard that holds at the current state, in declaration order.
  bool fire_enabled() {
    for (;;) {
      if (!jumps_allowed()) return false;
      const std::string& name = a_.locations[loc_].name;
      bool fired = false;
      for (std::size_t i = 0; i < a_.transitions.size(); ++i) {
        const Transition& tr = a_.transitions[i];
        if (tr.source != name || !holds_now(tr.guard, x_)) continue;
        if (fire(i)) return true;
        fired = true;
        break;
      }
      if (!fired) return false;
    }
  }

  bool fire_spontaneous() {
    if (!jumps_allowed()) return false;
    const std::string& name = a_.locations[loc_].name;
    for (std::size_t i = 0; i < a_.transitions.size(); ++i) {
      const Transition& tr = a_.transitions[i];
      if (tr.source == name && tr.guard.is_true()) {
        fire(i);
        return true;
      }
    }
    return false;
  }

  // Applies transition i at the current time. Returns true when the run must stop.
  bool fire(std::size_t i) {
    const Transition& tr = a_.transitions[i];
    Event ev;
    ev.time = t_;
    ev.transition = i;
    ev.label = tr.label;
    ev.source = tr.source;
    ev.target = tr.target;
    ev.pre = x_;
    ev.post = tr.reset.apply(x_);
    x_ = ev.post;
    loc_ = *a_.location_index(tr.target);
    traj_.events.push_back(std::move(ev));
    if (static_cast<int>(traj_.events.size()) > opt_.max_events)
      throw Error(ErrorKind::MaxEventsExceeded,
                  "more than " + std::to_string(opt_.max_events) + " events before t = " +
                      std::to_string(t_));
    return check_zeno();
  }

  bool check_zeno() {
    const auto& ev = traj_.events;
    const std::size_t n = static_cast<std::size_t>(opt_.zeno_count);
    if (n < 2 || ev.size() < n + 1) return false;
    std::vector<double> gaps;
    for (std::size_t k = ev.size() - n; k < ev.size(); ++k) gaps.push_back(ev[k].time - ev[k - 1].time);
    if (!std::all_of(gaps.begin(), gaps.end(), [&](double g) { return g < opt_.zeno_dwell; }))
      return false;
    const std::size_t half = n / 2;
    double w0 = 0.0;
    double w1 = 0.0;
    for (std::size_t k = n - 2 * half; k < n - half; ++k) w0 += gaps[k];
    for (std::size_t k = n - half; k < n; ++k) w1 += gaps[k];
    const double last = ev.back().time;
    double estimate = last;
    if (w0 > 0.0 && w1 < w0) {
      const double q = w1 / w0;
      estimate = last + w1 * q / (1.0 - q);
    }
    traj_.zeno = true;
    traj_.zeno_time = estimate;
    return true;
  }

  const HybridAutomaton& a_;
  double horizon_;
  IntegratorKind kind_;
  const SimOptions& opt_;
  double dt_;
  Vector u_;
  std::size_t loc_ = 0;
  Vector x_;
  double t_ = 0.0;
  Trajectory traj_;
};

}  // namespace

std::string_view to_string(IntegratorKind kind) {
  return kind == IntegratorKind::Euler ? "euler" : "heun";
}

Vector step(const AffineDynamics& dyn, const Vector& x, const Vector& u, double h,
            IntegratorKind kind) {
  const Vector k1 = dyn.derivative(x, u);
  if (kind == IntegratorKind::Euler) return x + h * k1;
  const Vector k2 = dyn.derivative(x + h * k1, u);
  return x + (0.5 * h) * (k1 + k2);
}

std::optional<Crossing> detect_event(const AffineDynamics& dyn, const Transition& transition,
                                     const Vector& x_before, const Vector& x_after,
                                     const Vector& u, double t, double h, IntegratorKind kind) {
  const Condition& guard = transition.guard;
  if (guard.is_true()) return std::nullopt;
  std::vector<double> before;
  before.reserve(guard.constraints.size());
  for (const auto& c : guard.constraints) before.push_back(residual(c, x_before));
  auto holds = [&](const Vector& x) {
    for (std::size_t i = 0; i < guard.constraints.size(); ++i)
      if (!reached(guard.constraints[i], x, before[i])) return false;
    return true;
  };
  if (!holds(x_after)) return std::nullopt;
  const double tol = 1e-9 * std::max(1.0, t);
  double lo = 0.0;
  double hi = h;
  Vector x_lo = x_before;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const Vector x_mid = step(dyn, x_before, u, mid, kind);
    if (holds(x_mid)) {
      hi = mid;
    } else {
      lo = mid;
      x_lo = x_mid;
    }
  }
  return Crossing{lo, x_lo};
}

Trajectory simulate(const ModelBundle& bundle, const Vector& x0, IntegratorKind kind,
                    const SimOptions& options) {
  const HybridAutomaton a = resolve_constants(bundle.automaton);
  if (static_cast<std::size_t>(x0.size()) != a.vars.num_states())
    throw Error(ErrorKind::DimensionMismatch, "start point has the wrong dimension");
  if (!a.location_index(bundle.initial.location))
    throw Error(ErrorKind::InvalidModel,
                "initial location '" + bundle.initial.location + "' does not exist");
  const double dt = options.step > 0 ? options.step : bundle.settings.step / 10.0;
  Vector u = Vector::Zero(static_cast<Eigen::Index>(a.vars.num_inputs()));
  if (options.input) {
    if (options.input->size() != u.size())
      throw Error(ErrorKind::DimensionMismatch, "input has the wrong dimension");
    u = *options.input;
  } else if (u.size() > 0) {
    u = Box::from_intervals(a.input_range).center();
  }
  Runner runner(a, bundle.settings.horizon, kind, options, dt, u);
  return runner.run(bundle.initial.location, x0);
}

std::vector<Trajectory> simulate_many(const ModelBundle& bundle, const std::vector<Vector>& x0s,
                                      IntegratorKind kind, const SimOptions& options,
                                      unsigned threads) {
  std::vector<Trajectory> out(x0s.size());
  std::vector<std::exception_ptr> errors(x0s.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < x0s.size(); i = next++) {
      try {
        out[i] = simulate(bundle, x0s[i], kind, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(x0s.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<Vector> sample_initial(const Box& box, std::size_t k, std::uint64_t seed) {
  const std::size_t n = box.dim();
  std::vector<Vector> out;
  out.reserve(k);
  if (n < 63 && k >= (std::size_t{1} << n)) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Vector x(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        x(ii) = (mask >> i) & 1u ? box.hi(ii) : box.lo(ii);
      }
      out.push_back(std::move(x));
    }
  }
  std::mt19937_64 gen(seed);
  while (out.size() < k) {
    Vector x(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double r = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      x(ii) = box.lo(ii) == box.hi(ii) ? box.lo(ii) : box.lo(ii) + r * (box.hi(ii) - box.lo(ii));
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::string trajectory_csv(const std::vector<Trajectory>& runs, const VariableTable& vars) {
  const bool many = runs.size() > 1;
  std::ostringstream out;
  if (many) out << "run,";
  out << "time,location";
  for (const auto& v : vars.state_vars) out << ',' << v;
  out << '\n';
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (const auto& s : runs[r].samples) {
      if (many) out << r << ',';
      out << format_number(s.time) << ',' << s.location;
      for (Eigen::Index i = 0; i < s.state.size(); ++i) out << ',' << format_number(s.state(i));
      out << '\n';
    }
  }
  return out.str();
}

std::string events_csv(const std::vector<Trajectory>& runs, const VariableTable& vars) {
  std::ostringstream out;
  out << "run,time,transition,label,source,target";
  for (const auto& v : vars.state_vars) out << ",pre_" << v;
  for (const auto& v : vars.state_vars) out << ",post_" << v;
  out << '\n';
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (const auto& e : runs[r].events) {
      out << r << ',' << format_number(e.time) << ',' << e.transition << ','
          << e.label.value_or("") << ',' << e.source << ',' << e.target;
      for (Eigen::Index i = 0; i < e.pre.size(); ++i) out << ',' << format_number(e.pre(i));
      for (Eigen::Index i = 0; i < e.post.size(); ++i) out << ',' << format_number(e.post(i));
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace hyra
