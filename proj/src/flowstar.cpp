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


#include <sstream>

#include "hyra/expr.hpp"
#include "hyra/model_io.hpp"
#include "model_text.hpp"

namespace hyra {

namespace {

// Flow* has no strict relations; they are written as their closures.
LinearConstraint closed(LinearConstraint c) {
  if (c.relation == Relation::Less) c.relation = Relation::LessEq;
  if (c.relation == Relation::Greater) c.relation = Relation::GreaterEq;
  return c;
}

void write_constraints(std::ostringstream& out, const Condition& cond,
                       const std::vector<std::string>& names, const std::string& indent) {
  for (const auto& c : cond.constraints)
    out << indent << format_constraint(closed(c), names, EqualityStyle::SingleEquals) << "\n";
}

// Interval contributed by B u over the input box, or nullopt for a zero row.
std::optional<Interval> input_term(const HybridAutomaton& a, const AffineDynamics& d,
                                   std::size_t row) {
  const auto r = static_cast<Eigen::Index>(row);
  bool any = false;
  Interval sum{0.0, 0.0};
  for (std::size_t j = 0; j < a.vars.num_inputs(); ++j) {
    const double b = d.B(r, static_cast<Eigen::Index>(j));
    if (b == 0.0) continue;
    any = true;
    const Interval u = j < a.input_range.size() ? a.input_range[j] : Interval{};
    sum.lo += b > 0 ? b * u.lo : b * u.hi;
    sum.hi += b > 0 ? b * u.hi : b * u.lo;
  }
  if (!any) return std::nullopt;
  return sum;
}

}  // namespace

std::string emit_flowstar(const ModelBundle& bundle) {
  const HybridAutomaton a = resolve_constants(bundle.automaton);
  const VariableTable& vars = a.vars;
  const ReachSettings& s = bundle.settings;
  const std::vector<std::string>& names = vars.state_vars;
  std::ostringstream out;

  out << "hybrid reachability\n{\n";
  out << "  state var " << detail::join(names, ", ") << "\n\n";
  out << "  setting\n  {\n";
  out << "    fixed steps " << format_number(s.step) << "\n";
  out << "    time " << format_number(s.horizon) << "\n";
  out << "    remainder estimation 1e-4\n";
  out << "    identity precondition\n";
  out << "    gnuplot octagon " << s.output_vars.first << ", " << s.output_vars.second << "\n";
  out << "    fixed orders 4\n";
  out << "    cutoff 1e-12\n";
  out << "    precision 53\n";
  out << "    output " << bundle.system << "\n";
  out << "    max jumps " << s.max_jumps << "\n";
  out << "    print on\n";
  out << "  }\n\n";

  out << "  modes\n  {\n";
  for (std::size_t k = 0; k < a.locations.size(); ++k) {
    const Location& loc = a.locations[k];
    if (k > 0) out << "\n";
    out << "    " << loc.name << "\n    {\n";
    out << "      lti ode\n      {\n";
    AffineDynamics flow = loc.dynamics;
    flow.B.setZero();
    for (std::size_t i = 0; i < names.size(); ++i) {
      out << "        " << names[i] << "' = " << detail::flow_rhs(flow, i, vars);
      if (auto term = input_term(a, loc.dynamics, i))
        out << " + [" << format_number(term->lo) << ", " << format_number(term->hi) << "]";
      out << "\n";
    }
    out << "      }\n";
    out << "      inv\n      {\n";
    write_constraints(out, loc.invariant, names, "        ");
    out << "      }\n";
    out << "    }\n";
  }
  out << "  }\n\n";

  out << "  jumps\n  {\n";
  for (std::size_t k = 0; k < a.transitions.size(); ++k) {
    const Transition& t = a.transitions[k];
    if (k > 0) out << "\n";
    out << "    " << t.source << " -> " << t.target << "\n";
    out << "    guard\n    {\n";
    write_constraints(out, t.guard, names, "      ");
    out << "    }\n";
    out << "    reset\n    {\n";
    for (std::size_t row : detail::changed_rows(t.reset))
      out << "      " << names[row] << "' := " << detail::reset_rhs(t.reset, row, vars) << "\n";
    out << "    }\n";
    out << "    interval aggregation\n";
  }
  out << "  }\n\n";

  out << "  init\n  {\n";
  out << "    " << bundle.initial.location << "\n    {\n";
  for (std::size_t i = 0; i < bundle.initial.box.size() && i < names.size(); ++i) {
    const Interval& iv = bundle.initial.box[i];
    out << "      " << names[i] << " in [" << format_number(iv.lo) << ", "
        << format_number(iv.hi) << "]\n";
  }
  out << "    }\n  }\n";
  out << "}\n";

  if (s.forbidden) {
    const Condition bad = resolve_condition(*s.forbidden, bundle.automaton.vars);
    out << "\nunsafe\n{\n";
    for (std::size_t k = 0; k < a.locations.size(); ++k) {
      if (k > 0) out << "\n";
      out << "  " << a.locations[k].name << "\n  {\n";
      write_constraints(out, bad, names, "    ");
      out << "  }\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace hyra
