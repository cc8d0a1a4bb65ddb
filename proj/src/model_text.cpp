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


#include "model_text.hpp"

namespace hyra::detail {

std::vector<std::string> state_and_input_names(const VariableTable& vars) {
  std::vector<std::string> names = vars.state_vars;
  names.insert(names.end(), vars.input_vars.begin(), vars.input_vars.end());
  return names;
}

std::string flow_rhs(const AffineDynamics& d, std::size_t row, const VariableTable& vars) {
  const std::size_t width = vars.num_states() + vars.num_inputs();
  std::vector<Coef> coeffs;
  coeffs.reserve(width);
  for (std::size_t col = 0; col < width; ++col) coeffs.push_back(d.entry(row, col));
  return format_affine(coeffs, state_and_input_names(vars), d.entry(row, width));
}

std::string flow_text(const AffineDynamics& d, const VariableTable& vars) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < vars.num_states(); ++i)
    parts.push_back(vars.state_vars[i] + "' == " + flow_rhs(d, i, vars));
  return join(parts, " & ");
}

std::vector<std::size_t> changed_rows(const ResetMap& reset) {
  std::vector<std::size_t> rows;
  const auto n = static_cast<std::size_t>(reset.R.rows());
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    bool changed = reset.r(r) != 0.0;
    for (std::size_t j = 0; j < n && !changed; ++j)
      changed = reset.R(r, static_cast<Eigen::Index>(j)) != (i == j ? 1.0 : 0.0);
    for (const auto& p : reset.params) changed = changed || p.row == i;
    if (changed) rows.push_back(i);
  }
  return rows;
}

std::string reset_rhs(const ResetMap& reset, std::size_t row, const VariableTable& vars) {
  const std::size_t n = vars.num_states();
  std::vector<Coef> coeffs;
  coeffs.reserve(n);
  for (std::size_t col = 0; col < n; ++col) coeffs.push_back(reset.entry(row, col));
  return format_affine(coeffs, vars.state_vars, reset.entry(row, n));
}

std::string input_range_text(const HybridAutomaton& a) {
  std::vector<Interval> box(a.input_range.begin(), a.input_range.end());
  box.resize(std::min(box.size(), a.vars.num_inputs()));
  return box_text(box, a.vars.input_vars);
}

std::string box_text(const std::vector<Interval>& box, const std::vector<std::string>& names) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (box[i].lo == box[i].hi) {
      parts.push_back(names[i] + " == " + format_number(box[i].lo));
    } else {
      parts.push_back(names[i] + " >= " + format_number(box[i].lo));
      parts.push_back(names[i] + " <= " + format_number(box[i].hi));
    }
  }
  return join(parts, " & ");
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace hyra::detail
