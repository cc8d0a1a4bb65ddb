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

#ifndef HYRA_EXPR_HPP_
#define HYRA_EXPR_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyra/ir.hpp"

namespace hyra {

enum class NodeKind {
  Number,
  Identifier,
  Negate,
  Add,
  Sub,
  Mul,
  Div,
  Compare,
  Conjunction,
  LocationRef,  // loc(component) == name, as used in initial conditions
};

struct ExprNode {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;
  std::string name;  // identifier, or the location name of a LocationRef
  bool primed = false;
  Relation relation = Relation::LessEq;
  bool assignment = false;  // `:=` instead of a comparison
  std::vector<ExprNode> children;
  std::size_t position = 0;
};

using ExpressionAst = ExprNode;

// Recursive-descent parse. Precedence (tightest first): unary -, then * /,
// then + -, then comparisons (chains such as `0 <= x <= 1` expand to a
// conjunction), then & / &&. An empty string is the empty conjunction.
// Every comparison side must linearize over `table`. Throws
// Error(SyntaxError | UnknownIdentifier | NonlinearUnsupported) carrying the
// character position of the offending token.
ExpressionAst parse_expression(std::string_view text, const VariableTable& table);

// Affine combination over state and input variables with possibly symbolic
// coefficients.
struct AffineForm {
  std::vector<Coef> state;
  std::vector<Coef> input;
  Coef constant;

  bool has_inputs() const;
  bool has_states() const;
};

// Throws Error(NonlinearUnsupported) for products of two non-constant terms.
AffineForm linearize(const ExprNode& node, const VariableTable& table);

// Constraints over input variables alone land in `input_bounds` when it is
// non-null; mixed state/input constraints are unsupported.
struct InputBound {
  std::size_t input;
  Relation relation;
  double value;
};

Condition to_condition(const ExprNode& ast, const VariableTable& table,
                       std::vector<InputBound>* input_bounds = nullptr);
Condition parse_condition(std::string_view text, const VariableTable& table,
                          std::vector<InputBound>* input_bounds = nullptr);

// `x' == <affine>` conjuncts. Variables without an equation get derivative 0.
AffineDynamics parse_flow(std::string_view text, const VariableTable& table);

// `x' == <affine>` or `x := <affine>` conjuncts; unassigned variables keep
// their value.
ResetMap parse_assignment(std::string_view text, const VariableTable& table);

// Shortest decimal text that reads back to exactly `value`.
std::string format_number(double value);

// Canonical affine text, e.g. `-0.75*v`, `x - 2*c*y + 3`; "0" when empty.
std::string format_affine(const std::vector<Coef>& coeffs,
                          const std::vector<std::string>& names, const Coef& constant);

enum class EqualityStyle { DoubleEquals, SingleEquals };

std::string format_constraint(const LinearConstraint& c, const std::vector<std::string>& names,
                              EqualityStyle style = EqualityStyle::DoubleEquals);

// Conjunction joined with " & "; "" for true.
std::string format_condition(const Condition& cond, const std::vector<std::string>& names,
                             EqualityStyle style = EqualityStyle::DoubleEquals);

}  // namespace hyra

#endif  // HYRA_EXPR_HPP_
