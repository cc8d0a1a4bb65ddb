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


#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "hyra/error.hpp"
#include "hyra/expr.hpp"
#include "hyra/model_io.hpp"
#include "model_text.hpp"

namespace hyra {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Drops `#` and `//` comments that sit outside quotes.
std::string strip_comment(const std::string& line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quote) {
      if (ch == quote) quote = 0;
    } else if (ch == '"' || ch == '\'') {
      quote = ch;
    } else if (ch == '#' || (ch == '/' && i + 1 < line.size() && line[i + 1] == '/')) {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front())
    return v.substr(1, v.size() - 2);
  return v;
}

double to_number(const std::string& text, const std::string& key) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw Error(ErrorKind::ValueError, key + ": '" + text + "' is not a number");
  return v;
}

int to_count(const std::string& text, const std::string& key) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v < 0)
    throw Error(ErrorKind::ValueError, key + ": '" + text + "' is not a non-negative integer");
  return v;
}

double evaluate(const Coef& c, const VariableTable& vars) {
  double v = c.value;
  for (const auto& [name, f] : c.params) v += f * vars.constants.at(name);
  return v;
}

void collect(const ExprNode& node, std::vector<const ExprNode*>& out) {
  if (node.kind == NodeKind::Conjunction) {
    for (const auto& c : node.children) collect(c, out);
  } else {
    out.push_back(&node);
  }
}

InitialCondition parse_initially(const std::string& text, const HybridAutomaton& a) {
  const VariableTable& vars = a.vars;
  const ExprNode ast = parse_expression(text, vars);
  std::vector<const ExprNode*> items;
  collect(ast, items);
  const std::size_t n = vars.num_states();
  std::vector<std::optional<double>> lo(n), hi(n);
  InitialCondition init;
  for (const ExprNode* item : items) {
    if (item->kind == NodeKind::LocationRef) {
      if (!init.location.empty() && init.location != item->name)
        throw Error(ErrorKind::ValueError, "initial set names two locations", item->position);
      init.location = item->name;
      continue;
    }
    if (item->kind != NodeKind::Compare || item->assignment)
      throw Error(ErrorKind::SyntaxError, "expected a comparison", item->position);
    AffineForm e = linearize(item->children[0], vars);
    const AffineForm rhs = linearize(item->children[1], vars);
    for (std::size_t i = 0; i < n; ++i) e.state[i] -= rhs.state[i];
    e.constant -= rhs.constant;
    if (e.has_inputs() || rhs.has_inputs())
      throw Error(ErrorKind::ValueError, "initial set may not constrain inputs", item->position);
    std::optional<std::size_t> var;
    for (std::size_t i = 0; i < n; ++i) {
      if (e.state[i].is_zero()) continue;
      if (var)
        throw Error(ErrorKind::ValueError, "initial set must be a box (one variable per constraint)",
                    item->position);
      var = i;
    }
    if (!var) throw Error(ErrorKind::ValueError, "constraint names no variable", item->position);
    const double coef = evaluate(e.state[*var], vars);
    const double value = (0.0 - evaluate(e.constant, vars)) / coef;
    Relation rel = item->relation;
    if (coef < 0) {
      if (rel == Relation::LessEq || rel == Relation::Less)
        rel = Relation::GreaterEq;
      else if (rel == Relation::GreaterEq || rel == Relation::Greater)
        rel = Relation::LessEq;
    }
    auto& l = lo[*var];
    auto& h = hi[*var];
    if (rel != Relation::LessEq && rel != Relation::Less) l = l ? std::max(*l, value) : value;
    if (rel != Relation::GreaterEq && rel != Relation::Greater) h = h ? std::min(*h, value) : value;
  }
  if (init.location.empty()) {
    if (a.locations.size() != 1)
      throw Error(ErrorKind::ValueError, "initial set needs loc(...) == <name>");
    init.location = a.locations.front().name;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!lo[i] || !hi[i])
      throw Error(ErrorKind::ValueError,
                  "initial set leaves '" + vars.state_vars[i] + "' unbounded");
    init.box.push_back({*lo[i], *hi[i]});
  }
  return init;
}

std::pair<std::string, std::string> parse_outputs(const std::string& text,
                                                  const VariableTable& vars) {
  std::vector<std::string> names;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) names.push_back(trim(cur));
  if (names.size() != 2)
    throw Error(ErrorKind::ValueError, "output-variables needs exactly two names");
  for (const auto& nm : names)
    if (!vars.state_index(nm))
      throw Error(ErrorKind::UnknownIdentifier, "output variable '" + nm + "' is not a state");
  return {names[0], names[1]};
}

}  // namespace

ConfigFile parse_config(std::string_view text, const HybridAutomaton& automaton) {
  static const std::vector<std::string> kKeys = {
      "system",        "initially", "forbidden",        "time-horizon",
      "sampling-time", "max-jumps", "output-variables", "fixpoint"};
  std::map<std::string, std::pair<std::string, std::size_t>> values;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      throw Error(ErrorKind::UnknownKey, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    values[key] = {unquote(trim(line.substr(eq + 1))), line_no};
  }

  auto in_line = [&](const std::string& key, auto&& f) {
    try {
      return f(values.at(key).first);
    } catch (const Error& e) {
      throw e.with_context("line " + std::to_string(values.at(key).second) + " (" + key + ")");
    }
  };

  ConfigFile cfg;
  const VariableTable& vars = automaton.vars;
  if (!values.count("time-horizon"))
    throw Error(ErrorKind::MissingKey, "missing required key 'time-horizon'");
  if (!values.count("initially"))
    throw Error(ErrorKind::MissingKey, "missing required key 'initially'");
  cfg.settings.horizon = in_line("time-horizon", [&](const std::string& v) {
    const double h = to_number(v, "time-horizon");
    if (h <= 0) throw Error(ErrorKind::ValueError, "time-horizon must be positive");
    return h;
  });
  cfg.settings.step = cfg.settings.horizon / 1000.0;
  if (values.count("sampling-time")) {
    cfg.settings.step = in_line("sampling-time", [&](const std::string& v) {
      const double s = to_number(v, "sampling-time");
      if (s <= 0 || s > cfg.settings.horizon)
        throw Error(ErrorKind::ValueError, "sampling-time must lie in (0, time-horizon]");
      return s;
    });
  }
  cfg.settings.max_jumps = 10;
  if (values.count("max-jumps"))
    cfg.settings.max_jumps = in_line("max-jumps", [](const std::string& v) { return to_count(v, "max-jumps"); });
  if (values.count("fixpoint")) {
    cfg.settings.fixpoint_check = in_line("fixpoint", [](const std::string& v) {
      if (v != "true" && v != "false")
        throw Error(ErrorKind::ValueError, "fixpoint must be true or false");
      return v == "true";
    });
  }
  if (values.count("system")) cfg.system = values.at("system").first;
  if (values.count("forbidden")) {
    cfg.settings.forbidden =
        in_line("forbidden", [&](const std::string& v) { return parse_condition(v, vars); });
  }
  if (values.count("output-variables")) {
    cfg.settings.output_vars = in_line("output-variables", [&](const std::string& v) {
      return parse_outputs(v, vars);
    });
  } else if (!vars.state_vars.empty()) {
    cfg.settings.output_vars = {vars.state_vars.front(),
                                vars.state_vars[std::min<std::size_t>(1, vars.num_states() - 1)]};
  }
  cfg.initial = in_line("initially", [&](const std::string& v) { return parse_initially(v, automaton); });
  return cfg;
}

std::string emit_config(const ModelBundle& bundle) {
  const ReachSettings& s = bundle.settings;
  const VariableTable& vars = bundle.automaton.vars;
  std::ostringstream out;
  out << "system = \"" << bundle.system << "\"\n";
  std::string init = detail::box_text(bundle.initial.box, vars.state_vars);
  init += (init.empty() ? "" : " & ") + std::string("loc(") + bundle.system +
          ") == " + bundle.initial.location;
  out << "initially = \"" << init << "\"\n";
  if (s.forbidden) {
    const std::string f = format_condition(*s.forbidden, vars.state_vars);
    out << "forbidden = \"" << (f.empty() ? "true" : f) << "\"\n";
  }
  out << "time-horizon = " << format_number(s.horizon) << "\n";
  out << "sampling-time = " << format_number(s.step) << "\n";
  out << "max-jumps = " << s.max_jumps << "\n";
  out << "output-variables = \"" << s.output_vars.first << ", " << s.output_vars.second << "\"\n";
  out << "fixpoint = " << (s.fixpoint_check ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace hyra
