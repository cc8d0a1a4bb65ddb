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


#include <fstream>
#include <sstream>

#include "hyra/error.hpp"
#include "hyra/model_io.hpp"

namespace hyra {

std::string_view to_string(SourceFormat format) {
  switch (format) {
    case SourceFormat::Builder: return "builder";
    case SourceFormat::SpaceEx: return "spaceex";
    case SourceFormat::Json: return "json";
  }
  return "unknown";
}

bool operator==(const ModelBundle& a, const ModelBundle& b) {
  return a.automaton == b.automaton && a.settings == b.settings && a.initial == b.initial &&
         a.system == b.system;
}

void check_bundle(const ModelBundle& bundle) {
  const HybridAutomaton& a = bundle.automaton;
  const ValidationReport report = validate(a);
  if (!report.ok()) {
    const Defect& d = report.defects.front();
    throw Error(ErrorKind::InvalidModel, d.where + ": " + d.message);
  }
  if (!a.find_location(bundle.initial.location))
    throw Error(ErrorKind::InvalidModel,
                "initial location '" + bundle.initial.location + "' does not exist");
  if (bundle.initial.box.size() != a.vars.num_states())
    throw Error(ErrorKind::InvalidModel, "initial box has " +
                                             std::to_string(bundle.initial.box.size()) +
                                             " intervals for " +
                                             std::to_string(a.vars.num_states()) + " states");
  for (std::size_t i = 0; i < bundle.initial.box.size(); ++i)
    if (!(bundle.initial.box[i].lo <= bundle.initial.box[i].hi))
      throw Error(ErrorKind::InvalidModel, "initial interval of '" + a.vars.state_vars[i] +
                                               "' is empty");
  const ReachSettings& s = bundle.settings;
  if (!(s.step > 0 && s.step <= s.horizon))
    throw Error(ErrorKind::InvalidModel, "step must lie in (0, horizon]");
  if (s.max_jumps < 0) throw Error(ErrorKind::InvalidModel, "max_jumps must be non-negative");
  for (const auto& name : {s.output_vars.first, s.output_vars.second})
    if (!a.vars.state_index(name))
      throw Error(ErrorKind::InvalidModel, "output variable '" + name + "' is not a state");
  if (s.forbidden) {
    for (const auto& c : s.forbidden->constraints) {
      if (static_cast<std::size_t>(c.coeffs.size()) != a.vars.num_states())
        throw Error(ErrorKind::InvalidModel, "forbidden constraint has the wrong arity");
      for (const auto& p : c.params)
        if (!a.vars.has_constant(p.name))
          throw Error(ErrorKind::InvalidModel, "forbidden set uses unknown constant '" + p.name + "'");
    }
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

namespace {

std::filesystem::path find_config(const std::filesystem::path& model) {
  std::filesystem::path stem_cfg = model;
  stem_cfg.replace_extension(".cfg");
  if (std::filesystem::exists(stem_cfg)) return stem_cfg;
  const std::filesystem::path sibling = model.parent_path() / "config.cfg";
  if (std::filesystem::exists(sibling)) return sibling;
  throw Error(ErrorKind::IoError, "no config for '" + model.string() + "' (tried '" +
                                      stem_cfg.string() + "' and '" + sibling.string() + "')");
}

template <typename F>
auto in_file(const std::filesystem::path& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

}  // namespace

ModelBundle load_bundle(const std::filesystem::path& model,
                        const std::optional<std::filesystem::path>& config) {
  const std::string ext = model.extension().string();
  ModelBundle bundle;
  if (ext == ".json") {
    const std::string text = read_file(model);
    bundle = in_file(model, [&] { return read_json(text); });
  } else if (ext == ".xml") {
    const std::string text = read_file(model);
    SpaceExModel sx = in_file(model, [&] { return parse_spaceex(text); });
    const std::filesystem::path cfg_path = config ? *config : find_config(model);
    const std::string cfg_text = read_file(cfg_path);
    ConfigFile cfg = in_file(cfg_path, [&] { return parse_config(cfg_text, sx.automaton); });
    bundle.automaton = std::move(sx.automaton);
    bundle.system = sx.component;
    bundle.settings = std::move(cfg.settings);
    bundle.initial = std::move(cfg.initial);
    bundle.source_format = SourceFormat::SpaceEx;
  } else if (ext == ".model") {
    throw Error(ErrorKind::UnsupportedFeature,
                "'" + model.string() + "': Flow*-style files are an output format only");
  } else {
    throw Error(ErrorKind::UnsupportedFeature,
                "'" + model.string() + "': unknown model extension '" + ext + "'");
  }
  in_file(model, [&] { check_bundle(bundle); });
  return bundle;
}

}  // namespace hyra
