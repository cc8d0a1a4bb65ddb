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


#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hyra/cli.hpp"
#include "hyra/corpus.hpp"
#include "hyra/model_io.hpp"

using namespace hyra;

namespace {

const std::filesystem::path kCorpus = std::filesystem::path(HYRA_SOURCE_DIR) / "corpus";

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hyra_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string corpus(const char* bench, const char* file) { return (kCorpus / bench / file).string(); }

}  // namespace

TEST_CASE("validate reports counts") {
  const Run r = run({"validate", corpus("tank3", "model.xml")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("OK states=3 inputs=0") == 0);
  CHECK(r.out.find("locations=8 transitions=24") != std::string::npos);
}

TEST_CASE("check exit codes follow the verdict") {
  const Run safe = run({"check", corpus("ball2", "model.xml")});
  CHECK(safe.code == kExitOk);
  CHECK(safe.out.rfind("VERDICT SafeProved", 0) == 0);
  const Run unsafe = run({"check", corpus("platoon6", "model.xml")});
  CHECK(unsafe.code == kExitPossiblyUnsafe);
  CHECK(std::regex_search(unsafe.out, std::regex(R"(^VERDICT PossiblyUnsafe jumps=2 segments=\d+ time=12)")));
}

TEST_CASE("input errors exit with 2, engine errors with 3") {
  const Run missing = run({"check", "/nonexistent/model.xml"});
  CHECK(missing.code == kExitInputError);
  CHECK_FALSE(missing.err.empty());
  const auto dir = temp_dir("errors");
  write_file(dir / "bad.xml", "<sspaceex><component");
  write_file(dir / "bad.cfg", "time-horizon = 1\n");
  CHECK(run({"validate", (dir / "bad.xml").string()}).code == kExitInputError);
  CHECK(run({"check", corpus("tank3", "model.xml"), "--bogus-flag"}).code == kExitInputError);
  CHECK(run({"reach", corpus("tank3", "model.xml"), "--step", "50"}).code == kExitInputError);
  CHECK(run({"reach", corpus("ball2", "model.xml"), "--step", "5"}).code == kExitEngineError);
  CHECK(run({"bench", "nope", "check"}).code == kExitInputError);
}

TEST_CASE("flags override the cfg") {
  const Run r = run({"reach", corpus("ball2", "model.xml"), "--max-jumps", "2", "--horizon", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("jumps=2") != std::string::npos);
  CHECK(r.out.find("time=3") != std::string::npos);
}

TEST_CASE("translate matches the golden files") {
  const Run fs = run({"translate", corpus("tank3", "model.xml"), "--to", "flowstar"});
  CHECK(fs.code == kExitOk);
  CHECK(fs.out == read_file(kCorpus / "tank3" / "model.model"));
  const auto dir = temp_dir("translate");
  const std::string json = (dir / "ball.json").string();
  CHECK(run({"translate", corpus("ball2", "model.xml"), "--to", "json", "--out", json}).code == kExitOk);
  const std::string xml = (dir / "ball.xml").string(), cfg = (dir / "ball.cfg").string();
  CHECK(run({"translate", json, "--to", "spaceex", "--out", xml, "--cfg-out", cfg}).code == kExitOk);
  CHECK(read_file(xml) == read_file(kCorpus / "ball2" / "model.xml"));
  CHECK(load_bundle(xml) == build_bouncing_ball());
}

TEST_CASE("bench shortcuts") {
  const Run list = run({"bench", "list"});
  CHECK(list.out == "ball2\nplatoon6\ntank3\nlinswitch4\n");
  const Run fs = run({"bench", "tank", "translate", "--to", "flowstar"});
  CHECK(fs.out == read_file(kCorpus / "tank3" / "model.model"));
  const auto dir = temp_dir("export");
  CHECK(run({"bench", "ball2", "export", dir.string()}).code == kExitOk);
  CHECK(read_file(dir / "expected.json") == read_file(kCorpus / "ball2" / "expected.json"));
}

TEST_CASE("simulate output is deterministic across thread counts") {
  const std::vector<std::string> args = {"bench", "tank3", "simulate", "--seeds", "6", "--seed", "4"};
  setenv("HYRA_THREADS", "1", 1);
  const Run one = run(args);
  setenv("HYRA_THREADS", "3", 1);
  const Run three = run(args);
  unsetenv("HYRA_THREADS");
  CHECK(one.code == kExitOk);
  CHECK(one.out == three.out);
  CHECK(one.out.rfind("run,time,location,x1,x2,x3", 0) == 0);
  CHECK(run(args).out == one.out);
}

TEST_CASE("plot renders flowpipes and trajectories") {
  const auto dir = temp_dir("plot");
  const std::string seg = (dir / "seg.csv").string();
  CHECK(run({"bench", "tank3", "reach", "--out", seg}).code == kExitOk);
  const Run svg = run({"plot", seg, "--x", "x1", "--y", "x2"});
  CHECK(svg.code == kExitOk);
  CHECK(svg.out.find("<svg") != std::string::npos);
  CHECK(svg.out.find("<rect") != std::string::npos);
  CHECK(run({"plot", seg, "--x", "x1", "--y", "x2"}).out == svg.out);
  const Run csv = run({"plot", seg, "--x", "x1", "--y", "x2", "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out.find("x1") != std::string::npos);
  CHECK(run({"plot", seg, "--x", "x1", "--y", "zz"}).code == kExitInputError);

  const std::string traj = (dir / "traj.csv").string();
  CHECK(run({"bench", "ball2", "simulate", "--seeds", "2", "--out", traj}).code == kExitOk);
  const Run lines = run({"plot", traj, "--x", "x", "--y", "v"});
  CHECK(lines.out.find("<polyline") != std::string::npos);
}
