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


#include "hyra/reach.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <sstream>

#include "hyra/error.hpp"
#include "hyra/expr.hpp"

namespace hyra {

namespace {

double induced_inf_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  return M.cwiseAbs().rowwise().sum().maxCoeff();
}

// Drops all-zero generators.
Zonotope compact(const Zonotope& z) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < z.generators.cols(); ++j)
    if (!z.generators.col(j).isZero(0.0)) keep.push_back(j);
  if (static_cast<Eigen::Index>(keep.size()) == z.generators.cols()) return z;
  Matrix g(z.generators.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    g.col(static_cast<Eigen::Index>(k)) = z.generators.col(keep[k]);
  return Zonotope(z.center, g);
}

// Smallest truncation order whose remainder bound is negligible, together
// with that bound: sum_{i > eta} a^i / i! <= a^{eta+1}/(eta+1)! / (1 - a/(eta+2)).
std::pair<int, double> truncation(double a) {
  if (a == 0.0) return {2, 0.0};
  for (int eta = 2; eta <= 400; ++eta) {
    if (eta + 2 <= a) continue;
    const double log_tail = (eta + 1) * std::log(a) - std::lgamma(eta + 2.0) -
                            std::log(1.0 - a / (eta + 2));
    if (eta >= 4 && log_tail < std::log(1e-16)) return {eta, std::exp(log_tail)};
  }
  throw Error(ErrorKind::StepTooLarge,
              "step too large for the series bounds (norm of A*step is " + std::to_string(a) +
                  "); reduce the step");
}

double curvature_coef(int i) {
  const double di = i;
  return std::pow(di, -di / (di - 1.0)) - std::pow(di, -1.0 / (di - 1.0));
}

bool box_within(const Box& box, const Condition& cond) {
  for (const auto& c : cond.constraints) {
    const double hi = support(box, c.coeffs);
    const double lo = -support(box, -c.coeffs);
    const double tol = 1e-9 * (1.0 + std::abs(c.bound) + c.coeffs.cwiseAbs().dot(
                                                             box.lo.cwiseAbs().cwiseMax(box.hi.cwiseAbs())));
    switch (c.relation) {
      case Relation::LessEq:
      case Relation::Less:
        if (hi > c.bound + tol) return false;
        break;
      case Relation::GreaterEq:
      case Relation::Greater:
        if (lo < c.bound - tol) return false;
        break;
      case Relation::Equal:
        if (hi > c.bound + tol || lo < c.bound - tol) return false;
        break;
    }
  }
  return true;
}

Box input_box(const HybridAutomaton& a) {
  if (a.vars.num_inputs() == 0) return Box();
  return Box::from_intervals(a.input_range);
}

struct Curvature {
  Box box;
  double alpha = 0.0;
};

// F * box(X0) plus the drift curvature, as a box centred anywhere.
Curvature curvature(const StepKernel& k, const Zonotope& X0) {
  const Box xb = box_hull(X0);
  const Vector xc = xb.center();
  const Vector xr = xb.radius();
  const Vector center = k.f_center * xc + k.drift_curvature.center();
  const Vector radius = k.f_center.cwiseAbs() * xr + k.f_radius * (xc.cwiseAbs() + xr) +
                        k.drift_curvature.radius();
  Curvature c{Box(center - radius, center + radius), 0.0};
  c.alpha = (center.cwiseAbs() + radius).size() ? (center.cwiseAbs() + radius).maxCoeff() : 0.0;
  return c;
}

Discretization apply_kernel(const StepKernel& k, const Zonotope& X0) {
  Discretization d;
  d.phi = k.phi;
  d.offset = k.offset;
  d.V = k.input_set;
  const Curvature c = curvature(k, X0);
  d.alpha = c.alpha;
  Zonotope omega = enclose_hull(X0, k.phi, k.offset);
  omega = minkowski_sum(omega, Zonotope::from_box(c.box));
  omega = minkowski_sum(omega, k.input_set);
  d.omega0 = compact(omega);
  return d;
}

double set_radius(const Zonotope& z) {
  const Box b = box_hull(z);
  return b.dim() ? b.radius().maxCoeff() : 0.0;
}

void check_bloat(double alpha, const Zonotope& X0, const ReachOptions& options, double step) {
  const Box b = box_hull(X0);
  const double r0 = set_radius(X0);
  const double floor = 1e-3 * std::max(1.0, b.max_abs());
  const double limit = options.bloat_ratio * std::max(r0, floor);
  if (alpha > limit) {
    std::ostringstream msg;
    msg << "bloating radius " << alpha << " exceeds " << limit << " at step " << step
        << "; reduce the step";
    throw Error(ErrorKind::StepTooLarge, msg.str());
  }
}

std::vector<FlowpipeSegment> run_flowpipe(const Location& loc, const StepKernel& kernel,
                                          const Zonotope& init, const ReachSettings& settings,
                                          const FlowpipeStart& start, const ReachOptions& options,
                                          double* alpha_out) {
  if (start.check_invariant && !box_within(box_hull(init), loc.invariant))
    throw Error(ErrorKind::InitOutsideInvariant,
                "initial set is not inside the invariant of '" + loc.name + "'");
  const Discretization d = apply_kernel(kernel, init);
  check_bloat(d.alpha, init, options, settings.step);
  if (alpha_out) *alpha_out = std::max(*alpha_out, d.alpha);

  std::vector<FlowpipeSegment> out;
  const double T = settings.horizon;
  const double delta = settings.step;
  const double tol = 1e-9 * std::max(1.0, T);
  Zonotope z = reduce_order(d.omega0, options.max_generators);
  for (std::size_t k = 0;; ++k) {
    const double t_lo = start.time.lo + static_cast<double>(k) * delta;
    if (t_lo >= T - tol) break;
    const double t_hi = std::min(start.time.hi + static_cast<double>(k + 1) * delta, T);
    auto clamped = intersect_condition(box_hull(z), loc.invariant);
    if (!clamped) break;
    // States outside the invariant cannot keep flowing; dropping them keeps
    // unstable modes from inflating the set.
    if (auto t = tighten_factors(z, loc.invariant)) z = *t;
    out.push_back({{t_lo, t_hi}, z, *clamped, loc.name, start.depth});
    z = translate(linear_map(d.phi, z), d.offset);
    z = reduce_order(compact(minkowski_sum(z, d.V)), options.max_generators);
    if (!z.center.allFinite() || !z.generators.allFinite())
      throw Error(ErrorKind::Overflow, "flowpipe in '" + loc.name + "' diverged to non-finite values");
  }
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) {
  return v == Verdict::SafeProved ? "SafeProved" : "PossiblyUnsafe";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "Completed";
    case Termination::JumpBoundHit: return "JumpBoundHit";
    case Termination::FixpointReached: return "FixpointReached";
  }
  return "unknown";
}

StepKernel make_kernel(const AffineDynamics& dyn, const Box& inputs, double step) {
  if (dyn.has_params())
    throw Error(ErrorKind::InvalidModel, "dynamics still reference symbolic constants");
  const Eigen::Index n = dyn.A.rows();
  const Eigen::Index m = dyn.B.cols();
  if (static_cast<Eigen::Index>(inputs.dim()) != m)
    throw Error(ErrorKind::DimensionMismatch, "input box does not match the input count");
  StepKernel k;
  Vector u_mid = m ? inputs.center() : Vector::Zero(0);
  const Vector w = dyn.c + (m ? Vector(dyn.B * u_mid) : Vector::Zero(n));

  // [[A, I], [0, 0]] yields e^{A step} and the integral of e^{A s} over the step.
  Matrix aug = Matrix::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = dyn.A;
  aug.topRightCorner(n, n) = Matrix::Identity(n, n);
  const Matrix e = matrix_exponential(aug, step);
  k.phi = e.topLeftCorner(n, n);
  const Matrix gamma = e.topRightCorner(n, n);
  k.offset = gamma * w;

  const Matrix Ad = dyn.A * step;
  const auto [eta, tail] = truncation(induced_inf_norm(Ad));
  std::vector<Matrix> P(static_cast<std::size_t>(eta) + 2);
  P[0] = Matrix::Identity(n, n);
  for (int i = 1; i <= eta + 1; ++i)
    P[static_cast<std::size_t>(i)] = P[static_cast<std::size_t>(i) - 1] * Ad / static_cast<double>(i);

  Matrix f_lo = Matrix::Zero(n, n);
  Matrix f_hi = Matrix::Zero(n, n);
  for (int i = 2; i <= eta; ++i) {
    const Matrix term = curvature_coef(i) * P[static_cast<std::size_t>(i)];
    f_lo += term.cwiseMin(0.0);
    f_hi += term.cwiseMax(0.0);
  }
  k.f_center = 0.5 * (f_lo + f_hi);
  k.f_radius = (0.5 * (f_hi - f_lo)).array() + tail;

  Matrix g_lo = Matrix::Zero(n, n);
  Matrix g_hi = Matrix::Zero(n, n);
  for (int i = 2; i <= eta + 1; ++i) {
    const Matrix term =
        (curvature_coef(i) * step / static_cast<double>(i)) * P[static_cast<std::size_t>(i) - 1];
    g_lo += term.cwiseMin(0.0);
    g_hi += term.cwiseMax(0.0);
  }
  const Matrix g_center = 0.5 * (g_lo + g_hi);
  const Matrix g_radius = (0.5 * (g_hi - g_lo)).array() + tail * step;
  const Vector dc = g_center * w;
  const Vector dr = g_radius * w.cwiseAbs();
  k.drift_curvature = Box(dc - dr, dc + dr);

  // Input solution set for the zero-centred part B (U - u_mid).
  Matrix gu = Matrix::Zero(n, 0);
  if (m) {
    const Vector ur = inputs.radius();
    gu = dyn.B * ur.asDiagonal();
  }
  const Zonotope zu = compact(Zonotope(Vector::Zero(n), gu));
  if (zu.num_generators() == 0) {
    k.input_set = Zonotope::point(Vector::Zero(n));
    return k;
  }
  Vector boxed = Vector::Zero(n);
  for (int i = 2; i <= eta; ++i) {
    const Matrix Mi = (step / static_cast<double>(i + 1)) * P[static_cast<std::size_t>(i)];
    boxed += (Mi * zu.generators).cwiseAbs().rowwise().sum();
  }
  boxed.array() += tail * step * zu.generators.cwiseAbs().sum();
  Matrix g(n, 2 * zu.generators.cols() + n);
  g << step * zu.generators, (0.5 * step) * (Ad * zu.generators),
      Matrix(boxed.asDiagonal());
  k.input_set = compact(Zonotope(Vector::Zero(n), g));
  return k;
}

Discretization discretize(const AffineDynamics& dyn, const Zonotope& X0, const Box& U,
                          double step) {
  if (!(step > 0)) throw Error(ErrorKind::ValueError, "step must be positive");
  return apply_kernel(make_kernel(dyn, U, step), X0);
}

std::vector<FlowpipeSegment> flowpipe(const Location& loc, const Zonotope& init,
                                      const ReachSettings& settings, const FlowpipeStart& start,
                                      const Box& inputs, const ReachOptions& options,
                                      double* alpha_out) {
  const StepKernel kernel = make_kernel(loc.dynamics, inputs, settings.step);
  return run_flowpipe(loc, kernel, init, settings, start, options, alpha_out);
}

namespace {

Condition box_condition(const Box& box) {
  Condition c;
  for (Eigen::Index i = 0; i < box.lo.size(); ++i) {
    Vector e = Vector::Zero(box.lo.size());
    e(i) = 1.0;
    c.constraints.push_back({e, Relation::GreaterEq, box.lo(i), {}});
    c.constraints.push_back({e, Relation::LessEq, box.hi(i), {}});
  }
  return c;
}

}  // namespace

std::vector<JumpSuccessor> jump_successors(const std::vector<FlowpipeSegment>& segments,
                                           const Transition& transition,
                                           const HybridAutomaton& automaton, double horizon,
                                           std::size_t max_generators) {
  std::vector<JumpSuccessor> out;
  const Location* target = automaton.find_location(transition.target);
  const Location* source = automaton.find_location(transition.source);
  if (!target || !source) return out;
  const double tol = 1e-9 * std::max(1.0, horizon);
  const LinearConstraint* plane = nullptr;
  for (const auto& c : transition.guard.constraints)
    if (c.relation == Relation::Equal) {
      plane = &c;
      break;
    }
  std::optional<Box> window;
  // With an equality guard the window keeps the union of the unclamped
  // segment sets and cuts it with the hyperplane once at the end, which
  // preserves the correlation of the coordinates the guard does not touch.
  std::optional<Zonotope> slices;
  Interval time{};
  int depth = 0;
  auto flush = [&] {
    if (!window) return;
    Zonotope z = Zonotope::from_box(*window);
    if (slices && (!plane || hyperplane_hull(*slices, plane->coeffs, plane->bound))) {
      Zonotope cut = plane ? hyperplane_enclosure(*slices, plane->coeffs, plane->bound) : *slices;
      if (auto t = tighten_factors(cut, transition.guard)) cut = *t;
      if (auto t = tighten_factors(cut, box_condition(*window))) cut = *t;
      if (auto t = tighten_factors(cut, source->invariant)) cut = *t;
      // Long windows wrap the union; the box is the better set then.
      const Box ch = box_hull(cut);
      if (((ch.hi - ch.lo).array() <= 2.0 * (window->hi - window->lo).array() + 1e-9).all())
        z = cut;
    }
    z = translate(linear_map(transition.reset.R, z), transition.reset.r);
    if (auto t = tighten_factors(z, target->invariant)) z = *t;
    const Box zh = box_hull(z);
    auto clamped = intersect_condition(zh, target->invariant);
    // The set is kept unclamped: the flowpipe clamps its hulls to the
    // invariant, and boxing here would lose the correlations.
    if (clamped && time.lo < horizon - tol) out.push_back({transition.target, z, time, depth + 1});
    window.reset();
    slices.reset();
  };
  for (const auto& seg : segments) {
    if (seg.location != transition.source) {
      flush();
      continue;
    }
    auto hit = intersect_condition(seg.hull, transition.guard);
    for (const auto& c : transition.guard.constraints) {
      if (!hit || c.relation != Relation::Equal) continue;
      auto bounds = hyperplane_hull(seg.set, c.coeffs, c.bound);
      if (!bounds) {
        hit.reset();
        break;
      }
      Box both = *hit;
      both.lo = both.lo.cwiseMax(bounds->lo);
      both.hi = both.hi.cwiseMin(bounds->hi);
      hit = intersect_condition(both, transition.guard);
    }
    if (!hit) {
      flush();
      continue;
    }
    if (window) {
      window = hull(*window, *hit);
      time.hi = std::max(time.hi, seg.time.hi);
      if (slices) slices = reduce_order(enclose_union(*slices, seg.set), max_generators);
    } else {
      window = *hit;
      time = seg.time;
      depth = seg.jump_depth;
      slices = seg.set;
    }
  }
  flush();
  return out;
}

ReachResult reach(const ModelBundle& bundle, const ReachOptions& options) {
  const auto wall_start = std::chrono::steady_clock::now();
  const HybridAutomaton a = resolve_constants(bundle.automaton);
  const ReachSettings& s = bundle.settings;
  const Box inputs = input_box(a);
  std::vector<std::optional<StepKernel>> kernels(a.locations.size());
  std::vector<std::vector<Box>> explored(a.locations.size());

  struct Item {
    std::size_t loc;
    Zonotope init;
    Interval time;
    int depth;
  };
  std::deque<Item> work;
  const auto first = a.location_index(bundle.initial.location);
  if (!first)
    throw Error(ErrorKind::InvalidModel,
                "initial location '" + bundle.initial.location + "' does not exist");
  work.push_back({*first, Zonotope::from_box(Box::from_intervals(bundle.initial.box)),
                  {0.0, 0.0}, 0});

  ReachResult result;
  bool bound_hit = false;
  bool fixpoint_hit = false;
  double bloat = 0.0;
  while (!work.empty()) {
    Item item = std::move(work.front());
    work.pop_front();
    const Location& loc = a.locations[item.loc];
    const Box init_box = box_hull(item.init);
    if (s.fixpoint_check && item.depth > 0) {
      const auto& seen = explored[item.loc];
      if (std::any_of(seen.begin(), seen.end(),
                      [&](const Box& b) { return b.contains(init_box); })) {
        fixpoint_hit = true;
        continue;
      }
    }
    explored[item.loc].push_back(init_box);
    if (!kernels[item.loc]) kernels[item.loc] = make_kernel(loc.dynamics, inputs, s.step);
    FlowpipeStart start{item.time, item.depth, item.depth == 0};
    std::vector<FlowpipeSegment> segs =
        run_flowpipe(loc, *kernels[item.loc], item.init, s, start, options, &bloat);
    if (segs.empty()) continue;
    result.stats.max_depth = std::max(result.stats.max_depth, item.depth);
    for (const auto& t : a.transitions) {
      if (t.source != loc.name) continue;
      for (auto& succ : jump_successors(segs, t, a, s.horizon, options.max_generators)) {
        if (item.depth >= s.max_jumps) {
          bound_hit = true;
          break;
        }
        work.push_back({*a.location_index(succ.target), std::move(succ.init), succ.time,
                        succ.depth});
      }
    }
    for (auto& seg : segs) result.segments.push_back(std::move(seg));
  }

  result.stats.segments = result.segments.size();
  result.stats.max_bloat = bloat;
  for (const auto& seg : result.segments)
    result.stats.time_reached = std::max(result.stats.time_reached, seg.time.hi);
  result.termination = bound_hit      ? Termination::JumpBoundHit
                       : fixpoint_hit ? Termination::FixpointReached
                                      : Termination::Completed;
  if (s.forbidden) {
    const SafetyReport safety =
        check_safety(result.segments, resolve_condition(*s.forbidden, bundle.automaton.vars), bloat);
    result.verdict = safety.verdict;
    result.offending_segment = safety.offending_segment;
  }
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

SafetyReport check_safety(const std::vector<FlowpipeSegment>& segments, const Condition& forbidden,
                          double bloat) {
  Condition widened;
  for (const auto& c : forbidden.constraints) {
    if (c.relation != Relation::Equal) {
      widened.constraints.push_back(c);
      continue;
    }
    const double w = 1e-9 + bloat * c.coeffs.cwiseAbs().sum();
    LinearConstraint lo = c;
    lo.relation = Relation::GreaterEq;
    lo.bound = c.bound - w;
    LinearConstraint hi = c;
    hi.relation = Relation::LessEq;
    hi.bound = c.bound + w;
    widened.constraints.push_back(lo);
    widened.constraints.push_back(hi);
  }
  SafetyReport report;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!intersect_condition(segments[i].hull, widened)) continue;
    if (!report.offending_segment ||
        segments[i].time.lo < segments[*report.offending_segment].time.lo)
      report.offending_segment = i;
  }
  if (report.offending_segment) report.verdict = Verdict::PossiblyUnsafe;
  return report;
}

std::string segments_csv(const std::vector<FlowpipeSegment>& segments, const VariableTable& vars) {
  std::ostringstream out;
  out << "time_lo,time_hi,location,jump_depth";
  for (const auto& v : vars.state_vars) out << ',' << v << "_lo," << v << "_hi";
  out << '\n';
  for (const auto& seg : segments) {
    out << format_number(seg.time.lo) << ',' << format_number(seg.time.hi) << ','
        << seg.location << ',' << seg.jump_depth;
    for (std::size_t i = 0; i < seg.hull.dim(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      out << ',' << format_number(seg.hull.lo(k)) << ',' << format_number(seg.hull.hi(k));
    }
    out << '\n';
  }
  return out.str();
}

std::string verdict_line(const ReachResult& result) {
  std::ostringstream out;
  out << "VERDICT " << to_string(result.verdict) << " jumps=" << result.stats.max_depth
      << " segments=" << result.stats.segments
      << " time=" << format_number(result.stats.time_reached);
  return out.str();
}

}  // namespace hyra
