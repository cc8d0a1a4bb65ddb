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
#include <filesystem>
#include <map>
#include <set>
#include <string>

#include "doctest.h"
#include "hyra/corpus.hpp"
#include "hyra/error.hpp"
#include "hyra/model_io.hpp"
#include "hyra/reach.hpp"
#include "json.hpp"

using namespace hyra;

namespace {

const std::filesystem::path kCorpus = std::filesystem::path(HYRA_SOURCE_DIR) / "corpus";

std::filesystem::path dir_of(BenchmarkId id) { return kCorpus / std::string(to_string(id)); }

}  // namespace

TEST_CASE("names and aliases") {
  for (BenchmarkId id : all_benchmarks()) CHECK(parse_benchmark(to_string(id)) == id);
  CHECK(parse_benchmark("bouncing-ball") == BenchmarkId::BouncingBall2);
  CHECK(parse_benchmark("platoon") == BenchmarkId::Platoon6);
  CHECK(parse_benchmark("tank") == BenchmarkId::Tank3);
  CHECK(parse_benchmark("linswitch") == BenchmarkId::LinSwitch4);
  CHECK_FALSE(parse_benchmark("ball3"));
}

TEST_CASE("every benchmark validates and checks") {
  for (BenchmarkId id : all_benchmarks()) {
    const ModelBundle b = build_benchmark(id);
    CHECK(validate(b.automaton).ok());
    CHECK_NOTHROW(check_bundle(b));
  }
  CHECK(validate(build_platoon({true}).automaton).ok());
}

TEST_CASE("structure of each benchmark") {
  const ModelBundle ball = build_bouncing_ball();
  CHECK(ball.automaton.vars.num_states() == 4);
  CHECK(ball.automaton.locations.size() == 1);
  CHECK(ball.automaton.transitions.size() == 2);
  CHECK(ball.automaton.vars.constants.at("c") == 0.75);

  const ModelBundle pl = build_platoon();
  CHECK(pl.automaton.vars.num_states() == 18);
  CHECK(pl.automaton.locations.size() == 2);
  CHECK(pl.settings.max_jumps == 2);
  for (const auto& t : pl.automaton.transitions) CHECK(t.guard.is_true());
  const ModelBundle clock = build_platoon({true});
  CHECK(clock.automaton.vars.num_states() == 19);
  for (const auto& t : clock.automaton.transitions) CHECK_FALSE(t.guard.is_true());

  const ModelBundle lin = build_linswitch();
  CHECK(lin.automaton.locations.size() == 4);
  CHECK(lin.automaton.transitions.size() == 4);
  CHECK(lin.automaton.locations[0].dynamics.A(0, 0) == -0.8036);
}

TEST_CASE("tank topology: each valve toggles between adjacent locations") {
  const ModelBundle t = build_tank();
  REQUIRE(t.automaton.locations.size() == 8);
  CHECK(t.initial.location == "off_off_off");
  CHECK(t.automaton.transitions.size() == 24);
  std::set<std::string> names;
  for (const auto& l : t.automaton.locations) names.insert(l.name);
  CHECK(names.size() == 8);
  // Oracle: source and target names differ in exactly one valve token.
  auto tokens = [](const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t at; (at = s.find('_', start)) != std::string::npos; start = at + 1)
      out.push_back(s.substr(start, at - start));
    out.push_back(s.substr(start));
    return out;
  };
  std::map<std::string, int> out_degree;
  for (const auto& tr : t.automaton.transitions) {
    const auto a = tokens(tr.source), b = tokens(tr.target);
    REQUIRE(a.size() == 3);
    REQUIRE(b.size() == 3);
    int diff = 0;
    for (int i = 0; i < 3; ++i) diff += a[i] != b[i];
    CHECK(diff == 1);
    ++out_degree[tr.source];
  }
  for (const auto& [_, d] : out_degree) CHECK(d == 3);
}

TEST_CASE("builder argument checks") {
  CHECK_THROWS_AS(build_bouncing_ball(-0.1), Error);
  CHECK_THROWS_AS(build_bouncing_ball(0.75, {10.2, 10.0}), Error);
  TankParams p;
  p.k_a = 0.0;
  CHECK_THROWS_AS(build_tank(p), Error);
  CHECK_NOTHROW(build_bouncing_ball(0.0));
  CHECK_NOTHROW(build_bouncing_ball(1.0));
}

TEST_CASE("transcription entries land where they say") {
  for (BenchmarkId id : {BenchmarkId::Platoon6, BenchmarkId::LinSwitch4}) {
    const ModelBundle b = build_benchmark(id);
    std::map<std::string, int> a_entries;
    for (const auto& e : transcription(id)) {
      if (e.target == "dropped") {
        CHECK(e.row == -1);
        CHECK_FALSE(e.note.empty());
        continue;
      }
      // "all" marks an entry shared by every location.
      std::vector<const Location*> locs;
      for (const auto& l : b.automaton.locations)
        if (e.location == "all" || l.name == e.location) locs.push_back(&l);
      REQUIRE_FALSE(locs.empty());
      for (const Location* loc : locs) {
        const auto& d = loc->dynamics;
        if (e.target == "A") {
          CHECK(d.A(e.row, e.col) == e.value);
          if (e.value != 0.0) ++a_entries[loc->name];
        } else if (b.automaton.vars.num_inputs() > 0) {
          CHECK(d.B(e.row, e.col) == e.value);
        } else {
          // Without inputs the B column multiplies the constant a_L.
          const Coef c = d.entry(static_cast<std::size_t>(e.row), d.drift_col());
          REQUIRE(c.params.count("a_L") == 1);
          CHECK(c.params.at("a_L") == e.value);
        }
      }
    }
    // Nothing in A is left unaccounted for.
    for (const auto& loc : b.automaton.locations)
      CHECK((loc.dynamics.A.array() != 0.0).count() == a_entries[loc.name]);
  }
}

TEST_CASE("fixtures on disk match the builders") {
  for (BenchmarkId id : all_benchmarks()) {
    for (const auto& [name, text] : fixture_files(id))
      CHECK_MESSAGE(read_file(dir_of(id) / name) == text, to_string(id), "/", name);
    const ModelBundle disk = load_bundle(dir_of(id) / "model.xml");
    CHECK(disk == build_benchmark(id));
    CHECK(emit_flowstar(disk) == read_file(dir_of(id) / "model.model"));
  }
}

TEST_CASE("expected outcomes match a fresh reach run") {
  for (BenchmarkId id : all_benchmarks()) {
    const ReachResult r = reach(build_benchmark(id));
    CHECK(expected_json(id, r) == read_file(dir_of(id) / "expected.json"));
    const auto doc = nlohmann::json::parse(read_file(dir_of(id) / "expected.json"));
    CHECK(doc["reach"]["verdict"] == std::string(to_string(r.verdict)));
    CHECK(doc["reach"]["segments"] == r.segments.size());
  }
}

TEST_CASE("switching modes are unstable as printed and this is recorded") {
  // Oracle: eigenvalues from an independent real Schur form.
  const auto doc = nlohmann::json::parse(read_file(kCorpus / "linswitch4" / "transcription.json"));
  REQUIRE(doc.contains("stability_note"));
  for (const auto& loc : build_linswitch().automaton.locations) {
    Eigen::RealSchur<Matrix> schur(loc.dynamics.A);
    const Matrix& T = schur.matrixT();
    double max_re = -INFINITY;
    // 1x1 blocks are real eigenvalues; a 2x2 block holds a complex pair
    // whose real part is the mean of its diagonal.
    for (Eigen::Index i = 0; i < T.rows(); ++i) {
      if (i + 1 < T.rows() && T(i + 1, i) != 0.0) {
        max_re = std::max(max_re, 0.5 * (T(i, i) + T(i + 1, i + 1)));
        ++i;
      } else {
        max_re = std::max(max_re, T(i, i));
      }
    }
    CHECK(max_re > 0.0);
    CHECK(doc["max_real_eigenvalue"][loc.name].get<double>() == doctest::Approx(max_re).epsilon(1e-9));
  }
}

TEST_CASE("export writes a complete fixture directory") {
  const auto dir = std::filesystem::temp_directory_path() / "hyra_corpus_export";
  std::filesystem::remove_all(dir);
  export_fixtures(BenchmarkId::Tank3, dir);
  for (const char* f : {"model.xml", "config.cfg", "model.model", "expected.json"})
    CHECK(read_file(dir / f) == read_file(kCorpus / "tank3" / f));
}
