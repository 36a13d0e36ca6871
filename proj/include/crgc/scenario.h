// Copyright 2026 The CRGC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crgc/cluster_sim.h"
#include "crgc/coop_repair.h"
#include "crgc/error.h"
#include "crgc/mscr.h"

namespace crgc {

class ScenarioError : public InvalidArgument {
 public:
  ScenarioError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Line-oriented key=value file; '#' starts a comment. Required keys: n, k, r,
// B_symbols. Optional: field (auto|gf256|gf65536), seed, epochs (default 1),
// strategy (comma list or "all", default cooperative), failures (explicit
// comma list of nodes failed every epoch; default r seeded draws), helpers
// (lowest|round-robin|seeded).
struct Scenario {
  unsigned n = 0;
  unsigned k = 0;
  unsigned r = 0;
  std::uint64_t file_symbols = 0;
  FieldMode field = FieldMode::kAuto;
  std::uint64_t seed = 0;
  std::uint64_t epochs = 1;
  std::vector<Strategy> strategies{Strategy::kCooperative};
  std::vector<NodeIndex> failures;
  HelperPolicy helpers = HelperPolicy::kLowestIndex;
};

Scenario parse_scenario(std::string_view text);

struct StrategyRun {
  StrategyReport report;
  VerifyReport verify;
};

struct EpochResult {
  std::uint64_t epoch = 0;
  std::vector<NodeIndex> failed;
  std::vector<StrategyRun> runs;
};

struct SimulationReport {
  Scenario scenario;
  std::size_t symbol_width = 0;
  std::uint64_t stripes = 0;
  std::vector<EpochResult> epochs;

  bool all_verified() const;
};

// The payload is file_symbols random field elements drawn from the seed.
// Every epoch fails a batch, runs each strategy on its own copy of the
// cluster, verifies each result, and carries the first strategy's cluster
// into the next epoch.
SimulationReport run_scenario(const Scenario& scenario);

std::string report_json(const SimulationReport& report);
// "epoch,strategy,newcomer,phase1_symbols,phase2_symbols,total_bytes"
std::string report_csv(const SimulationReport& report);

}  // namespace crgc
