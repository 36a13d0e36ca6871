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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crgc/matrix.h"
#include "crgc/mscr.h"

namespace crgc {

enum class HelperPolicy {
  kLowestIndex,  // the k lowest-index alive nodes, for every newcomer
  kRoundRobin,   // newcomer j starts j*k positions further along the alive list
  kSeeded,       // independent seeded k-subsets per newcomer
};

HelperPolicy parse_helper_policy(std::string_view text);
std::string_view to_string(HelperPolicy policy);

struct HelperSelection {
  HelperPolicy policy = HelperPolicy::kLowestIndex;
  std::uint64_t seed = 0;
};

// Who downloads what. Newcomer j (0-based position in `failed`) recovers the
// message rows in rows[j] and downloads them from helpers[j]. With a full
// batch of r newcomers, rows[j] = {j}.
struct RepairPlan {
  std::vector<NodeIndex> failed;  // ascending
  std::vector<std::vector<NodeIndex>> helpers;
  std::vector<std::vector<unsigned>> rows;
  HelperPolicy policy = HelperPolicy::kLowestIndex;
};

// Newcomers are ordered by ascending node index. Between 1 and r failures
// are accepted; a short batch spreads the r rows round-robin over the
// newcomers present.
RepairPlan plan_repair(std::span<const NodeIndex> alive, std::span<const NodeIndex> failed,
                       const CodeParams& params, HelperSelection selection = {});

// One metered message. Phase 1 flows helper -> newcomer, phase 2 flows
// newcomer -> newcomer.
struct TransferRecord {
  NodeIndex from = 0;
  NodeIndex to = 0;
  int phase = 1;
  std::uint64_t stripe = 0;
  std::uint64_t symbols = 0;
  std::uint64_t offset = 0;  // into BandwidthLedger's payload pool
};

class BandwidthLedger {
 public:
  // Throws InvalidArgument for empty payloads or a phase outside {1, 2}.
  void record(NodeIndex from, NodeIndex to, int phase, std::uint64_t stripe,
              std::span<const Symbol> payload);

  const std::vector<TransferRecord>& records() const { return records_; }
  std::span<const Symbol> payload(const TransferRecord& rec) const {
    return std::span(pool_).subspan(rec.offset, rec.symbols);
  }

  // Symbols received by `node`; phase 0 sums both phases.
  std::uint64_t received(NodeIndex node, int phase = 0) const;
  // Symbols sent by `node`; phase 0 sums both phases.
  std::uint64_t sent(NodeIndex node, int phase = 0) const;
  std::uint64_t total(int phase = 0) const;

  // "phase,from,to,stripe,symbol_hex" lines after a header line; multi-symbol
  // payloads concatenate the serialized symbols.
  std::string transcript(const Field& field) const;

 private:
  std::vector<TransferRecord> records_;
  std::vector<Symbol> pool_;
};

// Helper side of phase 1: the stored row `ordinal` (1-based) of every
// stripe, copied verbatim.
std::vector<Symbol> phase1_serve(const NodeShare& helper, unsigned ordinal);

// Newcomer side of phase 1. Column c of `received` holds the symbols sent by
// helpers[c], one row per stripe; row s of the result is the message row of
// stripe s.
Matrix phase1_recover_row(const Matrix& received, std::span<const NodeIndex> helpers,
                          const CodeParams& params);

struct RecoveredRow {
  NodeIndex newcomer = 0;
  unsigned row = 0;  // 0-based message row
  Matrix values;     // stripes x k
};

struct ExchangeMessage {
  NodeIndex from = 0;
  NodeIndex to = 0;
  unsigned row = 0;
  std::vector<Symbol> symbols;  // one per stripe
};

struct ExchangeResult {
  std::vector<ExchangeMessage> messages;  // to other newcomers
  std::vector<ExchangeMessage> kept;      // from == to
};

// Phase 2: each recovered row is re-encoded towards every newcomer.
ExchangeResult phase2_exchange(std::span<const RecoveredRow> recovered,
                               std::span<const NodeIndex> failed, const CodeParams& params);

// Builds the newcomer's share from one contribution per message row; every
// contribution must be addressed to `newcomer`.
NodeShare assemble_share(NodeIndex newcomer, std::span<const ExchangeMessage> contributions,
                         std::uint64_t stripe_count, std::uint64_t original_length,
                         const CodeParams& params);

struct RepairOutcome {
  std::vector<NodeShare> repaired;  // in plan order
  BandwidthLedger ledger;
};

// Runs both phases of cooperative repair against the shares in `available`
// (looked up by node index) and meters every transfer.
RepairOutcome cooperative_repair(std::span<const NodeShare> available, const RepairPlan& plan,
                                 const CodeParams& params);

// Baseline: download k full shares, decode every stripe, re-encode column
// `failed`.
RepairOutcome individual_repair(NodeIndex failed, std::span<const NodeShare> available,
                                const CodeParams& params, HelperSelection selection = {});

}  // namespace crgc
