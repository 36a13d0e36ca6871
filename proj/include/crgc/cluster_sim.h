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
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "crgc/coop_repair.h"
#include "crgc/mscr.h"
#include "crgc/rational.h"

namespace crgc {

enum class Strategy {
  kIndividual,             // every newcomer decodes from k survivors
  kSequentialWithHelpers,  // one by one, earlier newcomers join the helpers
  kCooperative,            // two-phase repair with exchange among newcomers
};

Strategy parse_strategy(std::string_view text);
std::string_view to_string(Strategy strategy);

struct ClusterState {
  CodeParams params;
  std::vector<std::optional<NodeShare>> shares;  // slot j-1 holds node j
  std::vector<std::uint8_t> reference;           // payload every k-subset must yield
  std::uint64_t epoch = 0;

  std::vector<NodeIndex> alive() const;
  std::vector<NodeIndex> failed() const;
  std::vector<NodeShare> alive_shares() const;
};

// Encodes `payload` onto all n nodes.
ClusterState make_cluster(const CodeParams& params, std::span<const std::uint8_t> payload,
                          ByteMapping mapping = ByteMapping::kStrict);

// Fails `count` alive nodes drawn uniformly without replacement from a
// generator seeded by (seed, state.epoch). Throws InsufficientNodes when
// fewer than k nodes would remain.
ClusterState inject_failures(ClusterState state, std::size_t count, std::uint64_t seed);
ClusterState inject_failures(ClusterState state, std::span<const NodeIndex> nodes);

struct NewcomerBandwidth {
  NodeIndex node = 0;
  Rational phase1_symbols;
  Rational phase2_symbols;
  Rational total_symbols;
  Rational total_bytes;
};

struct StrategyReport {
  Strategy strategy = Strategy::kCooperative;
  bool measured = true;  // false when the figures come from the formula only
  std::vector<NewcomerBandwidth> newcomers;
  Rational per_newcomer;  // average over newcomers
  Rational formula;       // closed-form per-newcomer value for this strategy
  Rational total_symbols;
};

// Repairs every failed node with the given strategy and advances the epoch.
// Sequential repair is accounted with
//   (1/t) sum_{i<t} B d / (k (d + i - k + 1))
// for t newcomers, while the data is restored by unmetered individual repair.
// Cooperative repair accepts 1..r failures.
std::pair<ClusterState, StrategyReport> run_strategy(ClusterState state, Strategy strategy,
                                                     HelperSelection selection = {});

struct VerifyReport {
  std::uint64_t subsets_checked = 0;
  bool exhaustive = true;
  std::vector<std::vector<NodeIndex>> failing_subsets;

  bool ok() const { return failing_subsets.empty(); }
};

// Decodes from k-subsets of the alive nodes and compares with the reference
// payload: every subset when n <= 8, otherwise `samples` seeded draws.
VerifyReport verify_cluster(const ClusterState& state, std::size_t samples = 256,
                            std::uint64_t seed = 0);

}  // namespace crgc
