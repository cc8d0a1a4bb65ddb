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


#include <filesystem>
#include <regex>
#include <string>

#include "doctest.h"
#include "hyra/corpus.hpp"
#include "hyra/error.hpp"
#include "hyra/expr.hpp"
#include "hyra/model_io.hpp"
#include "json.hpp"

using namespace hyra;

namespace {

const std::filesystem::path kCorpus = std::filesystem::path(HYRA_SOURCE_DIR) / "corpus";

template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::IoError;
}

template <typename F>
std::string error_text(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  FAIL("no error thrown");
  return {};
}

std::string ball_xml() { return emit_spaceex(build_bouncing_ball()); }

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hyra_io_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("spaceex and cfg round trip every benchmark") {
  for (BenchmarkId id : all_benchmarks()) {
    const ModelBundle b = build_benchmark(id);
    const SpaceExModel sx = parse_spaceex(emit_spaceex(b));
    CHECK(sx.automaton == b.automaton);
    CHECK(sx.component == b.system);
    const ConfigFile cfg = parse_config(emit_config(b), sx.automaton);
    CHECK(cfg.settings == b.settings);
    CHECK(cfg.initial == b.initial);
    // Emission is a fixed point.
    ModelBundle back = b;
    back.automaton = sx.automaton;
    CHECK(emit_spaceex(back) == emit_spaceex(b));
  }
}

TEST_CASE("json round trips and is canonical") {
  for (BenchmarkId id : all_benchmarks()) {
    const ModelBundle b = build_benchmark(id);
    const std::string text = write_json(b);
    CHECK(read_json(text) == b);
    CHECK(write_json(read_json(text)) == text);
    CHECK(text.back() == '\n');
    CHECK_FALSE(std::regex_search(text, std::regex(R"(-0\.0(?![0-9]))")));
  }
}

TEST_CASE("json schema errors name the offending path") {
  auto doc = nlohmann::json::parse(write_json(build_bouncing_ball()));
  doc["locations"][0]["flow"]["A"] = "oops";
  const std::string msg = error_text([&] { read_json(doc.dump()); });
  CHECK(msg.find("locations[0].flow.A") != std::string::npos);
  CHECK(error_kind([&] { read_json(doc.dump()); }) == ErrorKind::SchemaError);
  CHECK(error_kind([] { read_json("{ not json"); }) == ErrorKind::SchemaError);
  auto missing = nlohmann::json::parse(write_json(build_bouncing_ball()));
  missing.erase("variables");
  CHECK(error_kind([&] { read_json(missing.dump()); }) == ErrorKind::SchemaError);
}

TEST_CASE("component networks are rejected") {
  const std::string xml = replace_once(ball_xml(), "</component>", "<bind component=\"b\" as=\"b1\" /></component>");
  CHECK(error_kind([&] { parse_spaceex(xml); }) == ErrorKind::UnsupportedFeature);
  const std::string two = replace_once(ball_xml(), "</sspaceex>", "<component id=\"other\"></component></sspaceex>");
  CHECK(error_kind([&] { parse_spaceex(two); }) == ErrorKind::UnsupportedFeature);
  const std::string global = replace_once(ball_xml(), "type=\"label\" local=\"true\"", "type=\"label\" local=\"false\"");
  CHECK(error_kind([&] { parse_spaceex(global); }) == ErrorKind::UnsupportedFeature);
}

TEST_CASE("malformed xml and bad expressions") {
  CHECK(error_kind([] { parse_spaceex("<sspaceex><component id=\"a\">"); }) == ErrorKind::XmlMalformed);
  CHECK(error_kind([] { parse_spaceex("<other/>"); }) == ErrorKind::XmlMalformed);
  const std::string bad = replace_once(ball_xml(), "v' == -c*v", "v' == -c*v*x");
  CHECK(error_kind([&] { parse_spaceex(bad); }) == ErrorKind::NonlinearUnsupported);
  const std::string unknown = replace_once(ball_xml(), "x &gt;= 0", "z &gt;= 0");
  CHECK(error_kind([&] { parse_spaceex(unknown); }) == ErrorKind::UnknownIdentifier);
}

TEST_CASE("config keys are checked") {
  const ModelBundle b = build_bouncing_ball();
  const std::string cfg = emit_config(b);
  CHECK(error_kind([&] { parse_config(cfg + "colour = red\n", b.automaton); }) == ErrorKind::UnknownKey);
  std::string no_horizon;
  for (std::size_t start = 0; start < cfg.size();) {
    const auto end = cfg.find('\n', start);
    const std::string line = cfg.substr(start, end - start);
    if (line.rfind("time-horizon", 0) != 0) no_horizon += line + "\n";
    start = end == std::string::npos ? cfg.size() : end + 1;
  }
  CHECK(error_kind([&] { parse_config(no_horizon, b.automaton); }) == ErrorKind::MissingKey);
  // Comments and quoting.
  const ConfigFile c = parse_config("# comment\n// also\n" + cfg, b.automaton);
  CHECK(c.settings == b.settings);
}

TEST_CASE("flow star emission") {
  const std::string text = emit_flowstar(build_bouncing_ball());
  CHECK(text.find("x' = v") != std::string::npos);
  CHECK(text.find("v' = -9.81") != std::string::npos);
  CHECK(text.find("max jumps 8") != std::string::npos);
  // Constants are resolved.
  CHECK(text.find("0.75") != std::string::npos);
  CHECK(text.find("c*") == std::string::npos);
}

TEST_CASE("load_bundle dispatches on extension") {
  const auto dir = temp_dir("load");
  const ModelBundle b = build_tank();
  write_file(dir / "m.xml", emit_spaceex(b));
  write_file(dir / "m.cfg", emit_config(b));
  CHECK(load_bundle(dir / "m.xml") == b);
  write_file(dir / "b.json", write_json(b));
  CHECK(load_bundle(dir / "b.json") == b);
  CHECK(load_bundle(dir / "b.json").source_format == SourceFormat::Json);
  CHECK(error_kind([&] { load_bundle(kCorpus / "tank3" / "model.model"); }) == ErrorKind::UnsupportedFeature);
  CHECK(error_kind([&] { load_bundle(dir / "absent.xml"); }) == ErrorKind::IoError);
  write_file(dir / "lonely.xml", emit_spaceex(b));
  std::filesystem::remove(dir / "m.cfg");
  CHECK(is_input_error(error_kind([&] { load_bundle(dir / "lonely.xml"); })));
}

TEST_CASE("bundle checks catch inconsistent initial conditions") {
  ModelBundle b = build_tank();
  b.initial.location = "nowhere";
  CHECK(error_kind([&] { check_bundle(b); }) == ErrorKind::InvalidModel);
  b = build_tank();
  b.initial.box.pop_back();
  CHECK(error_kind([&] { check_bundle(b); }) == ErrorKind::InvalidModel);
  b = build_tank();
  b.settings.output_vars.first = "zz";
  CHECK(error_kind([&] { check_bundle(b); }) == ErrorKind::InvalidModel);
}
