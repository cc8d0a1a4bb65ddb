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

#ifndef HYRA_IR_HPP_
#define HYRA_IR_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hyra {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return 0.5 * (lo + hi); }
  double radius() const { return 0.5 * (hi - lo); }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool operator==(const Interval&) const = default;
};

// A scalar that may still depend on named constants:
//   value + sum_k params[k] * constant_k
struct Coef {
  double value = 0.0;
  std::map<std::string, double> params;

  Coef() = default;
  Coef(double v) : value(v) {}  // NOLINT(google-explicit-constructor)

  bool is_number() const { return params.empty(); }
  bool is_zero() const { return value == 0.0 && params.empty(); }

  Coef& operator+=(const Coef& other);
  Coef& operator-=(const Coef& other);
  Coef operator-() const;
  Coef scaled(double factor) const;

  bool operator==(const Coef&) const = default;
};

// One symbolic contribution `factor * name` to entry (row, col) of an
// augmented numeric matrix. The meaning of `col` is defined by the owner.
struct ParamTerm {
  std::size_t row = 0;
  std::size_t col = 0;
  std::string name;
  double factor = 1.0;

  bool operator==(const ParamTerm&) const = default;
};

struct VariableTable {
  std::vector<std::string> state_vars;
  std::vector<std::string> input_vars;
  std::map<std::string, double> constants;

  std::size_t num_states() const { return state_vars.size(); }
  std::size_t num_inputs() const { return input_vars.size(); }
  std::optional<std::size_t> state_index(std::string_view name) const;
  std::optional<std::size_t> input_index(std::string_view name) const;
  bool has_constant(std::string_view name) const;

  bool operator==(const VariableTable&) const = default;
};

// x' = A x + B u + c. Params index the augmented matrix [A | B | c].
struct AffineDynamics {
  Matrix A;
  Matrix B;
  Vector c;
  std::vector<ParamTerm> params;

  static AffineDynamics zero(std::size_t n, std::size_t m);
  std::size_t drift_col() const { return static_cast<std::size_t>(A.cols() + B.cols()); }
  Coef entry(std::size_t row, std::size_t col) const;
  bool has_params() const { return !params.empty(); }
  // f(x, u) = A x + B u + c; requires resolved dynamics.
  Vector derivative(const Vector& x, const Vector& u) const;
};

enum class Relation { LessEq, Less, Equal, GreaterEq, Greater };

std::string_view to_string(Relation rel);

// coeffs . x  rel  bound. Params index [coeffs | bound] on row 0.
struct LinearConstraint {
  Vector coeffs;
  Relation relation = Relation::LessEq;
  double bound = 0.0;
  std::vector<ParamTerm> params;

  Coef coeff(std::size_t i) const;
  Coef bound_coef() const;
  // Strict relations are evaluated as their closures.
  bool satisfied(const Vector& x, double tol = 0.0) const;
  // Signed violation: <= 0 when satisfied (for equalities, |residual|).
  double violation(const Vector& x) const;
  bool is_trivial() const;
};

// Conjunction of linear constraints; empty means `true`.
struct Condition {
  std::vector<LinearConstraint> constraints;

  bool is_true() const { return constraints.empty(); }
  bool satisfied(const Vector& x, double tol = 0.0) const;
};

// x' = R x + r. Params index [R | r].
struct ResetMap {
  Matrix R;
  Vector r;
  std::vector<ParamTerm> params;

  static ResetMap identity(std::size_t n);
  bool is_identity() const;
  Coef entry(std::size_t row, std::size_t col) const;
  Vector apply(const Vector& x) const;
};

struct Location {
  std::string name;
  Condition invariant;
  AffineDynamics dynamics;
};

struct Transition {
  std::string source;
  std::string target;
  Condition guard;
  ResetMap reset;
  std::optional<std::string> label;
};

struct HybridAutomaton {
  VariableTable vars;
  std::vector<Location> locations;
  std::vector<Transition> transitions;
  std::vector<Interval> input_range;  // one per input variable

  const Location* find_location(std::string_view name) const;
  std::optional<std::size_t> location_index(std::string_view name) const;
};

struct InitialCondition {
  std::string location;
  std::vector<Interval> box;  // one per state variable

  bool operator==(const InitialCondition&) const = default;
};

struct ReachSettings {
  double horizon = 1.0;
  double step = 1e-3;
  int max_jumps = 0;
  std::optional<Condition> forbidden;  // absent: nothing is forbidden
  std::pair<std::string, std::string> output_vars;
  bool fixpoint_check = false;
};

enum class DefectKind {
  EmptyStateVars,
  DuplicateName,
  DimensionMismatch,
  DanglingLocation,
  UnknownConstant,
  NonFinite,
  EmptyInterval,
  MissingInputRange,
};

std::string_view to_string(DefectKind kind);

struct Defect {
  DefectKind kind;
  std::string where;
  std::string message;

  bool operator==(const Defect&) const = default;
};

struct ValidationReport {
  std::vector<Defect> defects;

  bool ok() const { return defects.empty(); }
  bool has(DefectKind kind) const;
  bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate(const HybridAutomaton& automaton);

// Replaces constant or input `name` by `value`. Constants are folded into the
// numeric entries that referenced them; inputs are folded into the drift and
// removed from the input list. Throws Error(UnknownSymbol).
HybridAutomaton bind_constant(const HybridAutomaton& automaton,
                              std::string_view name, double value);

// Binds every remaining constant at its table value.
HybridAutomaton resolve_constants(const HybridAutomaton& automaton);
Condition resolve_condition(const Condition& cond, const VariableTable& vars);

// Structural equality (names, order, exact coefficients, params).
bool operator==(const AffineDynamics& a, const AffineDynamics& b);
bool operator==(const LinearConstraint& a, const LinearConstraint& b);
bool operator==(const Condition& a, const Condition& b);
bool operator==(const ResetMap& a, const ResetMap& b);
bool operator==(const Location& a, const Location& b);
bool operator==(const Transition& a, const Transition& b);
bool operator==(const HybridAutomaton& a, const HybridAutomaton& b);
bool operator==(const ReachSettings& a, const ReachSettings& b);

}  // namespace hyra

#endif  // HYRA_IR_HPP_
