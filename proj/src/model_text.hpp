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


// Text fragments shared by the model writers.

#ifndef HYRA_SRC_MODEL_TEXT_HPP_
#define HYRA_SRC_MODEL_TEXT_HPP_

#include <string>
#include <vector>

#include "hyra/expr.hpp"
#include "hyra/ir.hpp"

namespace hyra::detail {

std::vector<std::string> state_and_input_names(const VariableTable& vars);

// Right-hand side of `x_row' = ...` over states, inputs and the drift.
std::string flow_rhs(const AffineDynamics& d, std::size_t row, const VariableTable& vars);

// `x' == v & v' == -9.81`, one conjunct per state variable.
std::string flow_text(const AffineDynamics& d, const VariableTable& vars);

// Rows of the reset that differ from the identity.
std::vector<std::size_t> changed_rows(const ResetMap& reset);
std::string reset_rhs(const ResetMap& reset, std::size_t row, const VariableTable& vars);

// `u >= -1 & u <= 1` for every input; "" without inputs.
std::string input_range_text(const HybridAutomaton& a);

// `x >= 10 & x <= 10.2 & v == 0`.
std::string box_text(const std::vector<Interval>& box, const std::vector<std::string>& names);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace hyra::detail

#endif  // HYRA_SRC_MODEL_TEXT_HPP_
