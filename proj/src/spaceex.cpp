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
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "hyra/error.hpp"
#include "hyra/expr.hpp"
#include "hyra/model_io.hpp"
#include "model_text.hpp"

namespace hyra {

namespace {

namespace pt = boost::property_tree;

std::string attr(const pt::ptree& node, const std::string& name, const std::string& fallback = "") {
  return node.get<std::string>("<xmlattr>." + name, fallback);
}

std::string required_attr(const pt::ptree& node, const std::string& element,
                          const std::string& name) {
  auto v = node.get_optional<std::string>("<xmlattr>." + name);
  if (!v) throw Error(ErrorKind::XmlMalformed, "<" + element + "> lacks attribute '" + name + "'");
  return *v;
}

double parse_value(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw Error(ErrorKind::ValueError, what + ": '" + text + "' is not a number");
  return v;
}

struct ParamDecl {
  std::string name;
  std::string type;
  bool local = false;
  std::string dynamics;
  bool controlled = true;
  std::optional<std::string> value;
};

ParamDecl read_param(const pt::ptree& node) {
  ParamDecl p;
  p.name = required_attr(node, "param", "name");
  p.type = attr(node, "type", "real");
  p.local = attr(node, "local", "false") == "true";
  p.dynamics = attr(node, "dynamics", "any");
  p.controlled = attr(node, "controlled", "true") != "false";
  if (auto v = node.get_optional<std::string>("<xmlattr>.value")) p.value = *v;
  for (const char* dim : {"d1", "d2"}) {
    const std::string d = attr(node, dim, "1");
    if (d != "1")
      throw Error(ErrorKind::UnsupportedFeature,
                  "param '" + p.name + "' is not a scalar (" + dim + "=" + d + ")");
  }
  return p;
}

struct InputBox {
  std::vector<std::optional<double>> lo;
  std::vector<std::optional<double>> hi;

  bool operator==(const InputBox&) const = default;
};

InputBox collect_bounds(const std::vector<InputBound>& bounds, std::size_t m) {
  InputBox box;
  box.lo.assign(m, std::nullopt);
  box.hi.assign(m, std::nullopt);
  auto lower = [&](std::size_t j, double v) { box.lo[j] = box.lo[j] ? std::max(*box.lo[j], v) : v; };
  auto upper = [&](std::size_t j, double v) { box.hi[j] = box.hi[j] ? std::min(*box.hi[j], v) : v; };
  for (const auto& b : bounds) {
    switch (b.relation) {
      case Relation::LessEq:
      case Relation::Less:
        upper(b.input, b.value);
        break;
      case Relation::GreaterEq:
      case Relation::Greater:
        lower(b.input, b.value);
        break;
      case Relation::Equal:
        lower(b.input, b.value);
        upper(b.input, b.value);
        break;
    }
  }
  return box;
}

template <typename F>
auto with_element(const std::string& context, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_context(context);
  }
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

SpaceExModel parse_spaceex(std::string_view xml_text) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(xml_text)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorKind::XmlMalformed,
                "line " + std::to_string(e.line()) + ": " + e.message());
  }
  auto root = doc.get_child_optional("sspaceex");
  if (!root) throw Error(ErrorKind::XmlMalformed, "missing <sspaceex> root element");

  const pt::ptree* component = nullptr;
  for (const auto& [tag, child] : *root) {
    if (tag == "<xmlattr>" || tag == "<xmlcomment>" || tag == "note") continue;
    if (tag != "component")
      throw Error(ErrorKind::UnsupportedFeature, "unsupported element <" + tag + ">");
    if (component)
      throw Error(ErrorKind::UnsupportedFeature,
                  "component networks are not supported (more than one <component>)");
    component = &child;
  }
  if (!component) throw Error(ErrorKind::XmlMalformed, "no <component> element");

  SpaceExModel model;
  model.component = required_attr(*component, "component", "id");
  HybridAutomaton& a = model.automaton;
  std::set<std::string> labels;

  // Declarations first: expressions may reference params declared later.
  for (const auto& [tag, child] : *component) {
    if (tag == "bind")
      throw Error(ErrorKind::UnsupportedFeature, "component networks (<bind>) are not supported");
    if (tag != "param") continue;
    const ParamDecl p = read_param(child);
    if (p.type == "label") {
      if (!p.local)
        throw Error(ErrorKind::UnsupportedFeature,
                    "label '" + p.name + "' is not local; synchronization is not supported");
      labels.insert(p.name);
    } else if (p.type == "real") {
      if (p.dynamics == "const") {
        if (!p.value)
          throw Error(ErrorKind::ValueError, "constant '" + p.name + "' has no value attribute");
        a.vars.constants[p.name] = parse_value(*p.value, "constant '" + p.name + "'");
      } else if (p.dynamics == "any") {
        (p.controlled ? a.vars.state_vars : a.vars.input_vars).push_back(p.name);
      } else {
        throw Error(ErrorKind::UnsupportedFeature,
                    "param '" + p.name + "' has dynamics '" + p.dynamics + "'");
      }
    } else {
      throw Error(ErrorKind::UnsupportedFeature,
                  "param '" + p.name + "' has type '" + p.type + "'");
    }
  }

  const std::size_t m = a.vars.num_inputs();
  std::map<std::string, std::string> id_to_name;
  std::optional<InputBox> inputs;
  for (const auto& [tag, child] : *component) {
    if (tag != "location") continue;
    const std::string id = required_attr(child, "location", "id");
    Location loc;
    loc.name = required_attr(child, "location", "name");
    if (!id_to_name.emplace(id, loc.name).second)
      throw Error(ErrorKind::XmlMalformed, "duplicate location id '" + id + "'");
    const std::string where = "location '" + loc.name + "'";
    std::vector<InputBound> bounds;
    loc.invariant = with_element(where + " invariant", [&] {
      return parse_condition(child.get<std::string>("invariant", ""), a.vars, &bounds);
    });
    loc.dynamics = with_element(where + " flow", [&] {
      return parse_flow(child.get<std::string>("flow", ""), a.vars);
    });
    InputBox box = collect_bounds(bounds, m);
    if (inputs && !(*inputs == box))
      throw Error(ErrorKind::ValueError,
                  where + ": input bounds differ from those of the first location");
    inputs = box;
    a.locations.push_back(std::move(loc));
  }

  for (const auto& [tag, child] : *component) {
    if (tag != "transition") continue;
    Transition t;
    const std::string src = required_attr(child, "transition", "source");
    const std::string dst = required_attr(child, "transition", "target");
    auto lookup = [&](const std::string& id) {
      auto it = id_to_name.find(id);
      if (it == id_to_name.end())
        throw Error(ErrorKind::InvalidModel, "transition refers to unknown location id '" + id + "'");
      return it->second;
    };
    t.source = lookup(src);
    t.target = lookup(dst);
    const std::string where = "transition " + t.source + " -> " + t.target;
    if (auto label = child.get_optional<std::string>("label")) {
      if (!labels.count(*label))
        throw Error(ErrorKind::UnknownIdentifier, where + ": undeclared label '" + *label + "'");
      t.label = *label;
    }
    t.guard = with_element(where + " guard", [&] {
      return parse_condition(child.get<std::string>("guard", ""), a.vars);
    });
    t.reset = with_element(where + " assignment", [&] {
      return parse_assignment(child.get<std::string>("assignment", ""), a.vars);
    });
    a.transitions.push_back(std::move(t));
  }

  if (inputs) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!inputs->lo[j] || !inputs->hi[j])
        throw Error(ErrorKind::ValueError, "input '" + a.vars.input_vars[j] +
                                               "' needs lower and upper bounds in the invariants");
      a.input_range.push_back({*inputs->lo[j], *inputs->hi[j]});
    }
  }

  const ValidationReport report = validate(a);
  if (!report.ok()) {
    const Defect& d = report.defects.front();
    throw Error(ErrorKind::InvalidModel, d.where + ": " + d.message);
  }
  return model;
}

std::string emit_spaceex(const ModelBundle& bundle) {
  const HybridAutomaton& a = bundle.automaton;
  const VariableTable& vars = a.vars;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"iso-8859-1\"?>\n"
      << "<sspaceex xmlns=\"http://www-verimag.imag.fr/xml-namespaces/sspaceex\" "
         "version=\"0.2\" math=\"SpaceEx\">\n";
  out << "  <component id=\"" << escape(bundle.system) << "\">\n";
  const std::string real = "\" type=\"real\" local=\"false\" d1=\"1\" d2=\"1\" dynamics=\"";
  for (const auto& v : vars.state_vars)
    out << "    <param name=\"" << escape(v) << real << "any\" />\n";
  for (const auto& v : vars.input_vars)
    out << "    <param name=\"" << escape(v) << real << "any\" controlled=\"false\" />\n";
  for (const auto& [name, value] : vars.constants)
    out << "    <param name=\"" << escape(name) << real << "const\" value=\""
        << format_number(value) << "\" />\n";
  std::vector<std::string> labels;
  for (const auto& t : a.transitions)
    if (t.label && std::find(labels.begin(), labels.end(), *t.label) == labels.end())
      labels.push_back(*t.label);
  for (const auto& l : labels)
    out << "    <param name=\"" << escape(l) << "\" type=\"label\" local=\"true\" />\n";

  const std::string inputs = detail::input_range_text(a);
  for (std::size_t k = 0; k < a.locations.size(); ++k) {
    const Location& loc = a.locations[k];
    out << "    <location id=\"" << k + 1 << "\" name=\"" << escape(loc.name) << "\">\n";
    std::string inv = format_condition(loc.invariant, vars.state_vars);
    if (!inputs.empty()) inv = inv.empty() ? inputs : inv + " & " + inputs;
    if (!inv.empty()) out << "      <invariant>" << escape(inv) << "</invariant>\n";
    out << "      <flow>" << escape(detail::flow_text(loc.dynamics, vars)) << "</flow>\n";
    out << "    </location>\n";
  }
  for (const auto& t : a.transitions) {
    const auto src = a.location_index(t.source);
    const auto dst = a.location_index(t.target);
    out << "    <transition source=\"" << (src ? *src + 1 : 0) << "\" target=\""
        << (dst ? *dst + 1 : 0) << "\">\n";
    if (t.label) out << "      <label>" << escape(*t.label) << "</label>\n";
    const std::string guard = format_condition(t.guard, vars.state_vars);
    if (!guard.empty()) out << "      <guard>" << escape(guard) << "</guard>\n";
    std::vector<std::string> assigns;
    for (std::size_t row : detail::changed_rows(t.reset))
      assigns.push_back(vars.state_vars[row] + "' == " + detail::reset_rhs(t.reset, row, vars));
    if (!assigns.empty())
      out << "      <assignment>" << escape(detail::join(assigns, " & ")) << "</assignment>\n";
    out << "    </transition>\n";
  }
  out << "  </component>\n</sspaceex>\n";
  return out.str();
}

}  // namespace hyra
