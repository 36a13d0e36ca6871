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

#include "crgc/coop_repair.h"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "crgc/error.h"
#include "crgc/sampling.h"

namespace crgc {
namespace {

const NodeShare& find_share(std::span<const NodeShare> shares, NodeIndex node) {
  for (const auto& s : shares) {
    if (s.node_index == node) return s;
  }
  throw InsufficientNodes("no share available for node " + std::to_string(node));
}

std::vector<NodeIndex> choose_helpers(const std::vector<NodeIndex>& candidates,
                                      unsigned k, std::size_t newcomer,
                                      const HelperSelection& selection) {
  std::vector<NodeIndex> out;
  switch (selection.policy) {
    case HelperPolicy::kLowestIndex:
      out.assign(candidates.begin(), candidates.begin() + k);
      break;
    case HelperPolicy::kRoundRobin:
      for (unsigned t = 0; t < k; ++t) {
        out.push_back(candidates[(newcomer * k + t) % candidates.size()]);
      }
      break;
    case HelperPolicy::kSeeded: {
      std::mt19937_64 rng(mix_seed(selection.seed ^ mix_seed(newcomer)));
      out = sample_without_replacement(rng, candidates, k);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_consistent(const NodeShare& a, const NodeShare& b, const CodeParams& params) {
  if (a.rows != params.r() || b.rows != params.r() || a.stripe_count != b.stripe_count ||
      a.original_length != b.original_length ||
      b.symbols.size() != b.stripe_count * b.rows) {
    throw IntegrityError("helper shares are inconsistent");
  }
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

}  // namespace

HelperPolicy parse_helper_policy(std::string_view text) {
  if (text == "lowest") return HelperPolicy::kLowestIndex;
  if (text == "round-robin") return HelperPolicy::kRoundRobin;
  if (text == "seeded") return HelperPolicy::kSeeded;
  throw InvalidArgument("unknown helper policy '" + std::string(text) + "'");
}

std::string_view to_string(HelperPolicy policy) {
  switch (policy) {
    case HelperPolicy::kLowestIndex:
      return "lowest";
    case HelperPolicy::kRoundRobin:
      return "round-robin";
    case HelperPolicy::kSeeded:
      return "seeded";
  }
  return "?";
}

RepairPlan plan_repair(std::span<const NodeIndex> alive, std::span<const NodeIndex> failed,
                       const CodeParams& params, HelperSelection selection) {
  const std::set<NodeIndex> failed_set(failed.begin(), failed.end());
  if (failed_set.size() != failed.size()) throw InvalidArgument("duplicate failed node");
  if (failed_set.empty()) throw InvalidArgument("nothing to repair");
  if (failed_set.size() > params.r()) {
    throw ParameterError("code repairs at most r = " + std::to_string(params.r()) +
                         " nodes per batch");
  }
  std::set<NodeIndex> alive_set;
  for (auto node : alive) {
    if (node < 1 || node > params.n()) throw InvalidArgument("alive node out of range");
    if (failed_set.contains(node)) continue;
    alive_set.insert(node);
  }
  for (auto node : failed_set) {
    if (node < 1 || node > params.n()) throw InvalidArgument("failed node out of range");
  }
  if (alive_set.size() < params.k()) {
    throw InsufficientNodes("repair needs " + std::to_string(params.k()) +
                            " alive helpers, have " + std::to_string(alive_set.size()));
  }
  const std::vector<NodeIndex> candidates(alive_set.begin(), alive_set.end());

  RepairPlan plan;
  plan.policy = selection.policy;
  plan.failed.assign(failed_set.begin(), failed_set.end());
  const std::size_t count = plan.failed.size();
  plan.rows.resize(count);
  for (unsigned row = 0; row < params.r(); ++row) plan.rows[row % count].push_back(row);
  for (std::size_t j = 0; j < count; ++j) {
    plan.helpers.push_back(choose_helpers(candidates, params.k(), j, selection));
  }
  return plan;
}

void BandwidthLedger::record(NodeIndex from, NodeIndex to, int phase, std::uint64_t stripe,
                             std::span<const Symbol> payload) {
  if (payload.empty()) throw InvalidArgument("transfer must carry at least one symbol");
  if (phase != 1 && phase != 2) throw InvalidArgument("phase must be 1 or 2");
  records_.push_back({from, to, phase, stripe, payload.size(), pool_.size()});
  pool_.insert(pool_.end(), payload.begin(), payload.end());
}

std::uint64_t BandwidthLedger::received(NodeIndex node, int phase) const {
  std::uint64_t sum = 0;
  for (const auto& rec : records_) {
    if (rec.to == node && (phase == 0 || rec.phase == phase)) sum += rec.symbols;
  }
  return sum;
}

std::uint64_t BandwidthLedger::sent(NodeIndex node, int phase) const {
  std::uint64_t sum = 0;
  for (const auto& rec : records_) {
    if (rec.from == node && (phase == 0 || rec.phase == phase)) sum += rec.symbols;
  }
  return sum;
}

std::uint64_t BandwidthLedger::total(int phase) const {
  std::uint64_t sum = 0;
  for (const auto& rec : records_) {
    if (phase == 0 || rec.phase == phase) sum += rec.symbols;
  }
  return sum;
}

std::string BandwidthLedger::transcript(const Field& field) const {
  std::ostringstream os;
  os << "phase,from,to,stripe,symbol_hex\n";
  std::vector<std::uint8_t> buf(field.symbol_width());
  for (const auto& rec : records_) {
    os << rec.phase << ',' << rec.from << ',' << rec.to << ',' << rec.stripe << ',';
    for (auto sym : payload(rec)) {
      field.write_symbol(sym, buf);
      os << to_hex(buf);
    }
    os << '\n';
  }
  return os.str();
}

std::vector<Symbol> phase1_serve(const NodeShare& helper, unsigned ordinal) {
  if (ordinal < 1 || ordinal > helper.rows) {
    throw InvalidArgument("newcomer ordinal " + std::to_string(ordinal) + " outside 1.." +
                          std::to_string(helper.rows));
  }
  std::vector<Symbol> out;
  out.reserve(helper.stripe_count);
  for (std::uint64_t s = 0; s < helper.stripe_count; ++s) {
    out.push_back(helper.at(s, ordinal - 1));
  }
  return out;
}

Matrix phase1_recover_row(const Matrix& received, std::span<const NodeIndex> helpers,
                          const CodeParams& params) {
  if (helpers.size() != params.k() || received.cols() != params.k()) {
    throw DimensionMismatch("row recovery needs one symbol from each of k helpers");
  }
  std::vector<std::size_t> columns;
  for (auto h : helpers) {
    if (h < 1 || h > params.n()) throw InvalidArgument("helper index out of range");
    columns.push_back(h - 1);
  }
  if (std::set<std::size_t>(columns.begin(), columns.end()).size() != columns.size()) {
    throw InvalidArgument("helpers must be distinct");
  }
  Matrix decoder(params.field(), 0, 0);
  try {
    decoder = invert(params.generator().select_columns(columns));
  } catch (const SingularMatrix&) {
    // Distinct evaluation points make every k-column submatrix invertible.
    throw Error("internal invariant violated: singular helper submatrix");
  }
  return mat_mul(received, decoder);
}

ExchangeResult phase2_exchange(std::span<const RecoveredRow> recovered,
                               std::span<const NodeIndex> failed, const CodeParams& params) {
  ExchangeResult out;
  for (const auto& rr : recovered) {
    for (NodeIndex target : failed) {
      const auto g = params.generator_column(target);
      Matrix column(params.field(), params.k(), 1);
      for (unsigned c = 0; c < params.k(); ++c) column.set(c, 0, g[c]);
      const Matrix coded = mat_mul(rr.values, column);
      ExchangeMessage msg{rr.newcomer, target, rr.row, coded.column(0)};
      (target == rr.newcomer ? out.kept : out.messages).push_back(std::move(msg));
    }
  }
  return out;
}

NodeShare assemble_share(NodeIndex newcomer, std::span<const ExchangeMessage> contributions,
                         std::uint64_t stripe_count, std::uint64_t original_length,
                         const CodeParams& params) {
  NodeShare share;
  share.node_index = newcomer;
  share.rows = params.r();
  share.stripe_count = stripe_count;
  share.original_length = original_length;
  share.symbols.assign(stripe_count * params.r(), 0);
  std::vector<bool> have(params.r(), false);
  for (const auto& msg : contributions) {
    if (msg.to != newcomer) throw InvalidArgument("contribution addressed to another node");
    if (msg.row >= params.r() || have[msg.row]) {
      throw InvalidArgument("unexpected or duplicate row contribution");
    }
    if (msg.symbols.size() != stripe_count) {
      throw DimensionMismatch("contribution has the wrong stripe count");
    }
    have[msg.row] = true;
    for (std::uint64_t s = 0; s < stripe_count; ++s) {
      share.symbols[s * params.r() + msg.row] = msg.symbols[s];
    }
  }
  for (unsigned row = 0; row < params.r(); ++row) {
    if (!have[row]) {
      throw InvalidArgument("missing symbol for row " + std::to_string(row + 1) +
                            " of node " + std::to_string(newcomer));
    }
  }
  return share;
}

RepairOutcome cooperative_repair(std::span<const NodeShare> available, const RepairPlan& plan,
                                 const CodeParams& params) {
  if (plan.helpers.size() != plan.failed.size() || plan.rows.size() != plan.failed.size()) {
    throw InvalidArgument("malformed repair plan");
  }
  if (plan.helpers.empty()) throw InvalidArgument("empty repair plan");
  const NodeShare& reference = find_share(available, plan.helpers.front().front());
  const std::uint64_t stripes = reference.stripe_count;

  RepairOutcome outcome;
  std::vector<RecoveredRow> recovered;
  for (std::size_t j = 0; j < plan.failed.size(); ++j) {
    const NodeIndex newcomer = plan.failed[j];
    const auto& helpers = plan.helpers[j];
    for (unsigned row : plan.rows[j]) {
      Matrix received(params.field(), stripes, params.k());
      for (unsigned c = 0; c < helpers.size(); ++c) {
        if (std::find(plan.failed.begin(), plan.failed.end(), helpers[c]) != plan.failed.end()) {
          throw InvalidArgument("a failed node cannot serve as helper");
        }
        const NodeShare& helper = find_share(available, helpers[c]);
        check_consistent(reference, helper, params);
        const auto payload = phase1_serve(helper, row + 1);
        for (std::uint64_t s = 0; s < stripes; ++s) {
          outcome.ledger.record(helpers[c], newcomer, 1, s, std::span(payload).subspan(s, 1));
          received.set(s, c, payload[s]);
        }
      }
      recovered.push_back({newcomer, row, phase1_recover_row(received, helpers, params)});
    }
  }

  const ExchangeResult exchange = phase2_exchange(recovered, plan.failed, params);
  for (const auto& msg : exchange.messages) {
    for (std::uint64_t s = 0; s < stripes; ++s) {
      outcome.ledger.record(msg.from, msg.to, 2, s, std::span(msg.symbols).subspan(s, 1));
    }
  }
  for (NodeIndex newcomer : plan.failed) {
    std::vector<ExchangeMessage> inbox;
    for (const auto* group : {&exchange.kept, &exchange.messages}) {
      for (const auto& msg : *group) {
        if (msg.to == newcomer) inbox.push_back(msg);
      }
    }
    outcome.repaired.push_back(
        assemble_share(newcomer, inbox, stripes, reference.original_length, params));
  }
  return outcome;
}

RepairOutcome individual_repair(NodeIndex failed, std::span<const NodeShare> available,
                                const CodeParams& params, HelperSelection selection) {
  std::vector<NodeIndex> alive;
  for (const auto& s : available) {
    if (s.node_index != failed) alive.push_back(s.node_index);
  }
  const NodeIndex failed_list[] = {failed};
  const RepairPlan plan = plan_repair(alive, failed_list, params, selection);
  const auto& helpers = plan.helpers.front();

  RepairOutcome outcome;
  std::vector<NodeShare> downloaded;
  for (NodeIndex h : helpers) {
    const NodeShare& share = find_share(available, h);
    if (!downloaded.empty()) check_consistent(downloaded.front(), share, params);
    for (std::uint64_t s = 0; s < share.stripe_count; ++s) {
      outcome.ledger.record(h, failed, 1, s,
                            std::span(share.symbols).subspan(s * share.rows, share.rows));
    }
    downloaded.push_back(share);
  }
  const StripedFile file = reconstruct(downloaded, params);
  const auto g = params.generator_column(failed);
  NodeShare repaired;
  repaired.node_index = failed;
  repaired.rows = params.r();
  repaired.stripe_count = file.stripes.size();
  repaired.original_length = file.original_length;
  const Field& f = *params.field();
  for (const auto& m : file.stripes) {
    for (unsigned i = 0; i < params.r(); ++i) {
      Symbol acc = 0;
      for (unsigned c = 0; c < params.k(); ++c) acc = f.add(acc, f.mul(m(i, c), g[c]));
      repaired.symbols.push_back(acc);
    }
  }
  outcome.repaired.push_back(std::move(repaired));
  return outcome;
}

}  // namespace crgc
