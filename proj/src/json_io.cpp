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


#include <cmath>

#include "json.hpp"

#include "hyra/error.hpp"
#include "hyra/model_io.hpp"

namespace hyra {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kVersion = 1;

// Folds -0 into 0 so that equal models give equal text.
double canon(double v) { return v == 0.0 ? 0.0 : v; }

Json params_json(const std::vector<ParamTerm>& params) {
  Json arr = Json::array();
  for (const auto& p : params)
    arr.push_back(Json{{"row", p.row}, {"col", p.col}, {"name", p.name}, {"factor", canon(p.factor)}});
  return arr;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(canon(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(canon(v(i)));
  return arr;
}

Json condition_json(const Condition& cond) {
  Json arr = Json::array();
  for (const auto& c : cond.constraints) {
    arr.push_back(Json{{"coeffs", vector_json(c.coeffs)},
                       {"relation", std::string(to_string(c.relation))},
                       {"bound", canon(c.bound)},
                       {"params", params_json(c.params)}});
  }
  return arr;
}

// Reader with path-carrying diagnostics.
class Reader {
 public:
  [[noreturn]] static void fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorKind::SchemaError, path + ": " + msg);
  }

  static const Json& field(const Json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
  }

  static void only_fields(const Json& obj, const std::string& path,
                          std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || it.key() == a;
      if (!ok) fail(path, "unexpected field '" + it.key() + "'");
    }
  }

  static double number(const Json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "expected a finite number");
    return d;
  }

  static std::size_t index(const Json& v, const std::string& path) {
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  static std::string string(const Json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  static bool boolean(const Json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected a boolean");
    return v.get<bool>();
  }

  static const Json& array(const Json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
  }

  static std::vector<std::string> strings(const Json& v, const std::string& path) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < array(v, path).size(); ++i)
      out.push_back(string(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  static Vector vector(const Json& v, const std::string& path, std::size_t n) {
    array(v, path);
    if (v.size() != n)
      fail(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(v.size()));
    Vector out(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      out(static_cast<Eigen::Index>(i)) = number(v[i], path + "[" + std::to_string(i) + "]");
    return out;
  }

  static Matrix matrix(const Json& v, const std::string& path, std::size_t rows, std::size_t cols) {
    array(v, path);
    if (v.size() != rows)
      fail(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(v.size()));
    Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      out.row(static_cast<Eigen::Index>(i)) =
          vector(v[i], path + "[" + std::to_string(i) + "]", cols).transpose();
    return out;
  }

  static std::vector<ParamTerm> params(const Json& v, const std::string& path) {
    std::vector<ParamTerm> out;
    for (std::size_t i = 0; i < array(v, path).size(); ++i) {
      const std::string p = path + "[" + std::to_string(i) + "]";
      only_fields(v[i], p, {"row", "col", "name", "factor"});
      ParamTerm t;
      t.row = index(field(v[i], p, "row"), p + ".row");
      t.col = index(field(v[i], p, "col"), p + ".col");
      t.name = string(field(v[i], p, "name"), p + ".name");
      t.factor = number(field(v[i], p, "factor"), p + ".factor");
      out.push_back(std::move(t));
    }
    return out;
  }

  static Relation relation(const Json& v, const std::string& path) {
    const std::string s = string(v, path);
    for (Relation r : {Relation::LessEq, Relation::Less, Relation::Equal, Relation::GreaterEq,
                       Relation::Greater})
      if (to_string(r) == s) return r;
    fail(path, "unknown relation '" + s + "'");
  }

  static Condition condition(const Json& v, const std::string& path, std::size_t n) {
    Condition cond;
    for (std::size_t i = 0; i < array(v, path).size(); ++i) {
      const std::string p = path + "[" + std::to_string(i) + "]";
      only_fields(v[i], p, {"coeffs", "relation", "bound", "params"});
      LinearConstraint c;
      c.coeffs = vector(field(v[i], p, "coeffs"), p + ".coeffs", n);
      c.relation = relation(field(v[i], p, "relation"), p + ".relation");
      c.bound = number(field(v[i], p, "bound"), p + ".bound");
      c.params = params(field(v[i], p, "params"), p + ".params");
      cond.constraints.push_back(std::move(c));
    }
    return cond;
  }

  static Interval interval(const Json& v, const std::string& path) {
    const Vector pair = vector(v, path, 2);
    if (pair(0) > pair(1)) fail(path, "interval has lo > hi");
    return {pair(0), pair(1)};
  }
};

}  // namespace

std::string write_json(const ModelBundle& bundle) {
  const HybridAutomaton& a = bundle.automaton;
  Json constants = Json::object();
  for (const auto& [name, value] : a.vars.constants) constants[name] = canon(value);
  Json inputs = Json::array();
  for (std::size_t j = 0; j < a.input_range.size(); ++j)
    inputs.push_back(Json::array({canon(a.input_range[j].lo), canon(a.input_range[j].hi)}));

  Json locations = Json::array();
  for (const auto& loc : a.locations) {
    locations.push_back(Json{{"name", loc.name},
                             {"invariant", condition_json(loc.invariant)},
                             {"flow", Json{{"A", matrix_json(loc.dynamics.A)},
                                           {"B", matrix_json(loc.dynamics.B)},
                                           {"c", vector_json(loc.dynamics.c)},
                                           {"params", params_json(loc.dynamics.params)}}}});
  }
  Json transitions = Json::array();
  for (const auto& t : a.transitions) {
    Json j{{"source", t.source}, {"target", t.target}};
    j["label"] = t.label ? Json(*t.label) : Json(nullptr);
    j["guard"] = condition_json(t.guard);
    j["reset"] = Json{{"R", matrix_json(t.reset.R)},
                      {"r", vector_json(t.reset.r)},
                      {"params", params_json(t.reset.params)}};
    transitions.push_back(std::move(j));
  }
  Json box = Json::array();
  for (const auto& iv : bundle.initial.box) box.push_back(Json::array({canon(iv.lo), canon(iv.hi)}));
  const ReachSettings& s = bundle.settings;

  Json doc{{"format", "hyra-bundle"},
           {"version", kVersion},
           {"system", bundle.system},
           {"variables", Json{{"state", a.vars.state_vars},
                              {"input", a.vars.input_vars},
                              {"constants", constants}}},
           {"input_range", inputs},
           {"locations", locations},
           {"transitions", transitions},
           {"initial", Json{{"location", bundle.initial.location}, {"box", box}}},
           {"settings", Json{{"horizon", s.horizon},
                             {"step", s.step},
                             {"max_jumps", s.max_jumps},
                             {"forbidden", s.forbidden ? condition_json(*s.forbidden) : Json(nullptr)},
                             {"output_variables",
                              Json::array({s.output_vars.first, s.output_vars.second})},
                             {"fixpoint", s.fixpoint_check}}}};
  return doc.dump(2) + "\n";
}

ModelBundle read_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("not valid JSON: ") + e.what());
  }
  using R = Reader;
  const std::string root = "$";
  R::only_fields(doc, root, {"format", "version", "system", "variables", "input_range",
                             "locations", "transitions", "initial", "settings"});
  if (R::string(R::field(doc, root, "format"), "$.format") != "hyra-bundle")
    R::fail("$.format", "expected \"hyra-bundle\"");
  if (R::index(R::field(doc, root, "version"), "$.version") != kVersion)
    R::fail("$.version", "unsupported version");

  ModelBundle b;
  b.source_format = SourceFormat::Json;
  b.system = R::string(R::field(doc, root, "system"), "$.system");
  HybridAutomaton& a = b.automaton;

  const Json& vars = R::field(doc, root, "variables");
  R::only_fields(vars, "$.variables", {"state", "input", "constants"});
  a.vars.state_vars = R::strings(R::field(vars, "$.variables", "state"), "$.variables.state");
  a.vars.input_vars = R::strings(R::field(vars, "$.variables", "input"), "$.variables.input");
  const Json& constants = R::field(vars, "$.variables", "constants");
  if (!constants.is_object()) R::fail("$.variables.constants", "expected an object");
  for (auto it = constants.begin(); it != constants.end(); ++it)
    a.vars.constants[it.key()] = R::number(it.value(), "$.variables.constants." + it.key());
  const std::size_t n = a.vars.num_states();
  const std::size_t m = a.vars.num_inputs();

  const Json& inputs = R::array(R::field(doc, root, "input_range"), "$.input_range");
  for (std::size_t j = 0; j < inputs.size(); ++j)
    a.input_range.push_back(R::interval(inputs[j], "$.input_range[" + std::to_string(j) + "]"));

  const Json& locs = R::array(R::field(doc, root, "locations"), "$.locations");
  for (std::size_t k = 0; k < locs.size(); ++k) {
    const std::string p = "$.locations[" + std::to_string(k) + "]";
    R::only_fields(locs[k], p, {"name", "invariant", "flow"});
    Location loc;
    loc.name = R::string(R::field(locs[k], p, "name"), p + ".name");
    loc.invariant = R::condition(R::field(locs[k], p, "invariant"), p + ".invariant", n);
    const Json& flow = R::field(locs[k], p, "flow");
    const std::string fp = p + ".flow";
    R::only_fields(flow, fp, {"A", "B", "c", "params"});
    loc.dynamics.A = R::matrix(R::field(flow, fp, "A"), fp + ".A", n, n);
    loc.dynamics.B = R::matrix(R::field(flow, fp, "B"), fp + ".B", n, m);
    loc.dynamics.c = R::vector(R::field(flow, fp, "c"), fp + ".c", n);
    loc.dynamics.params = R::params(R::field(flow, fp, "params"), fp + ".params");
    a.locations.push_back(std::move(loc));
  }

  const Json& trans = R::array(R::field(doc, root, "transitions"), "$.transitions");
  for (std::size_t k = 0; k < trans.size(); ++k) {
    const std::string p = "$.transitions[" + std::to_string(k) + "]";
    R::only_fields(trans[k], p, {"source", "target", "label", "guard", "reset"});
    Transition t;
    t.source = R::string(R::field(trans[k], p, "source"), p + ".source");
    t.target = R::string(R::field(trans[k], p, "target"), p + ".target");
    const Json& label = R::field(trans[k], p, "label");
    if (!label.is_null()) t.label = R::string(label, p + ".label");
    t.guard = R::condition(R::field(trans[k], p, "guard"), p + ".guard", n);
    const Json& reset = R::field(trans[k], p, "reset");
    const std::string rp = p + ".reset";
    R::only_fields(reset, rp, {"R", "r", "params"});
    t.reset.R = R::matrix(R::field(reset, rp, "R"), rp + ".R", n, n);
    t.reset.r = R::vector(R::field(reset, rp, "r"), rp + ".r", n);
    t.reset.params = R::params(R::field(reset, rp, "params"), rp + ".params");
    a.transitions.push_back(std::move(t));
  }

  const Json& init = R::field(doc, root, "initial");
  R::only_fields(init, "$.initial", {"location", "box"});
  b.initial.location = R::string(R::field(init, "$.initial", "location"), "$.initial.location");
  const Json& box = R::array(R::field(init, "$.initial", "box"), "$.initial.box");
  for (std::size_t i = 0; i < box.size(); ++i)
    b.initial.box.push_back(R::interval(box[i], "$.initial.box[" + std::to_string(i) + "]"));

  const Json& s = R::field(doc, root, "settings");
  const std::string sp = "$.settings";
  R::only_fields(s, sp, {"horizon", "step", "max_jumps", "forbidden", "output_variables", "fixpoint"});
  b.settings.horizon = R::number(R::field(s, sp, "horizon"), sp + ".horizon");
  b.settings.step = R::number(R::field(s, sp, "step"), sp + ".step");
  b.settings.max_jumps = static_cast<int>(R::index(R::field(s, sp, "max_jumps"), sp + ".max_jumps"));
  const Json& forbidden = R::field(s, sp, "forbidden");
  if (!forbidden.is_null()) b.settings.forbidden = R::condition(forbidden, sp + ".forbidden", n);
  const auto outs = R::strings(R::field(s, sp, "output_variables"), sp + ".output_variables");
  if (outs.size() != 2) R::fail(sp + ".output_variables", "expected two names");
  b.settings.output_vars = {outs[0], outs[1]};
  b.settings.fixpoint_check = R::boolean(R::field(s, sp, "fixpoint"), sp + ".fixpoint");
  return b;
}

}  // namespace hyra
