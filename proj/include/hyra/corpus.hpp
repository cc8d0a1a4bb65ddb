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


#ifndef HYRA_CORPUS_HPP_
#define HYRA_CORPUS_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyra/ir.hpp"
#include "hyra/model_io.hpp"

namespace hyra {

struct ReachResult;

enum class BenchmarkId { BouncingBall2, Platoon6, Tank3, LinSwitch4 };

const std::vector<BenchmarkId>& all_benchmarks();
// Directory name under corpus/: ball2, platoon6, tank3, linswitch4.
std::string_view to_string(BenchmarkId id);
// Accepts the directory names and the long aliases (bouncing-ball, platoon, tank, linswitch).
std::optional<BenchmarkId> parse_benchmark(std::string_view name);

// Throws Error(ValueError) for c outside [0, 1] or an empty / negative height range.
ModelBundle build_bouncing_ball(double c = 0.75, Interval heights = {10.0, 10.2});

struct PlatoonOptions {
  // Adds a clock t with dwell constants c1, c2 instead of spontaneous switching.
  bool clock_variant = false;
};
ModelBundle build_platoon(const PlatoonOptions& options = {});

struct TankParams {
  double q0 = 0.05;   // constant inflow into tank 1
  double q1 = 0.2;    // inflow through valve 1
  double k_a = 0.3;   // tank 1 -> tank 2
  double q_b = 0.05;  // constant pump outflow of tank 2
  double k_2 = 0.5;   // outflow of tank 2 through valve 2
  double k_c = 0.3;   // tank 2 -> tank 3 through valve 3
  // Valve switching levels.
  double v1_open = 0.4, v1_close = 0.6;      // on x1
  double v2_open = 0.32, v2_close = 0.2;     // on x2
  double v3_open = 0.3, v3_close = 0.22;     // on x2
};
// Throws Error(ValueError) for a non-positive flow coefficient.
ModelBundle build_tank(const TankParams& params = {});

ModelBundle build_linswitch();

ModelBundle build_benchmark(BenchmarkId id);

// One mapped entry of a printed matrix.
struct TranscriptionEntry {
  std::string source;  // printed matrix name
  int printed_row = 0;  // zero-based, as printed
  int printed_col = 0;
  double value = 0.0;
  std::string location;  // model location the entry lands in
  std::string target;    // "A", "B" or "dropped"
  int row = -1;          // zero-based position in the model, -1 when dropped
  int col = -1;
  std::string note;      // non-empty when the entry was moved or is suspect
};

std::vector<TranscriptionEntry> transcription(BenchmarkId id);

// File name -> content for the files emitted from the builder alone
// (model.xml, config.cfg, model.model and, where relevant, transcription.json).
std::map<std::string, std::string> fixture_files(BenchmarkId id);

// expected.json: structure facts plus the reach outcome under the default settings.
std::string expected_json(BenchmarkId id, const ReachResult& result);

// Writes fixture_files and expected.json (runs reach) into `dir`.
void export_fixtures(BenchmarkId id, const std::filesystem::path& dir);

}  // namespace hyra

#endif  // HYRA_CORPUS_HPP_
