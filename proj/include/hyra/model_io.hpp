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


#ifndef HYRA_MODEL_IO_HPP_
#define HYRA_MODEL_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hyra/ir.hpp"

namespace hyra {

enum class SourceFormat { Builder, SpaceEx, Json };

std::string_view to_string(SourceFormat format);

struct ModelBundle {
  HybridAutomaton automaton;
  ReachSettings settings;
  InitialCondition initial;
  SourceFormat source_format = SourceFormat::Builder;
  std::string system = "system";  // component id in the XML form
};

bool operator==(const ModelBundle& a, const ModelBundle& b);

struct SpaceExModel {
  HybridAutomaton automaton;
  std::string component;
};

// Reads the supported single-component subset. Throws Error(XmlMalformed |
// UnsupportedFeature | ValueError | InvalidModel) or expression errors with
// the element as context.
SpaceExModel parse_spaceex(std::string_view xml_text);
std::string emit_spaceex(const ModelBundle& bundle);

struct ConfigFile {
  std::string system;
  ReachSettings settings;
  InitialCondition initial;
};

// `key = value` lines; `#` and `//` start comments; values may be quoted.
// The automaton supplies the identifiers for `initially` and `forbidden`.
ConfigFile parse_config(std::string_view text, const HybridAutomaton& automaton);
std::string emit_config(const ModelBundle& bundle);

// Flow*-style text with constants resolved.
std::string emit_flowstar(const ModelBundle& bundle);

// Canonical JSON (two-space indent, fixed key order, trailing newline).
std::string write_json(const ModelBundle& bundle);
// Throws Error(SchemaError) naming the offending path, e.g. `locations[0].flow.A`.
ModelBundle read_json(std::string_view text);

// Checks the bundle-level invariants (initial location, box arity, names of
// output variables, automaton defects). Throws Error(InvalidModel).
void check_bundle(const ModelBundle& bundle);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

// `.xml` with a config (explicit path, else `<stem>.cfg`, else a sibling
// `config.cfg`), or a `.json` bundle. Throws Error with file context.
ModelBundle load_bundle(const std::filesystem::path& model,
                        const std::optional<std::filesystem::path>& config = std::nullopt);

}  // namespace hyra

#endif  // HYRA_MODEL_IO_HPP_
