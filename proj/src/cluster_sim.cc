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

#include "crgc/cluster_sim.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "crgc/cutbound.h"
#include "crgc/error.h"
#include "crgc/sampling.h"

namespace crgc {
namespace {

// Advances `subset` to the next k-combination of [0, n) in lexicographic
// order; false after the last one.
bool next_combination(std::vector<std::size_t>& subset, std::size_t n) {
  const std::size_t k = subset.size();
  for (std::size_t i = k; i-- > 0;) {
    if (subset[i] < n - k + i) {
      ++subset[i];
      for (std::size_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

BoundParams mscr_bound(const CodeParams& params, std::uint64_t stripes) {
  BoundParams b;
  b.n = params.n();
  b.k = params.k();
  b.d = params.d();
  b.r = params.r();
  b.file_size = Rational(stripes * params.stripe_symbols());
  b.alpha = b.file_size / params.k();
  return b;
}

std::uint64_t stripe_count(const ClusterState& state) {
  for (const auto& s : state.shares) {
    if (s) return s->stripe_count;
  }
  return 0;
}

NewcomerBandwidth metered(NodeIndex node, const BandwidthLedger& ledger, const Field& field) {
  NewcomerBandwidth bw;
  bw.node = node;
  bw.phase1_symbols = Rational(ledger.received(node, 1));
  bw.phase2_symbols = Rational(ledger.received(node, 2));
  bw.total_symbols = bw.phase1_symbols + bw.phase2_symbols;
  bw.total_bytes = bw.total_symbols * field.symbol_width();
  return bw;
}

void finish(StrategyReport& report) {
  report.total_symbols = 0;
  for (const auto& nb : report.newcomers) report.total_symbols += nb.total_symbols;
  report.per_newcomer = report.newcomers.empty()
                            ? Rational(0)
                            : report.total_symbols / Rational(report.newcomers.size());
}

}  // namespace

Strategy parse_strategy(std::string_view text) {
  if (text == "individual") return Strategy::kIndividual;
  if (text == "sequential_with_helpers") return Strategy::kSequentialWithHelpers;
  if (text == "cooperative") return Strategy::kCooperative;
  throw InvalidArgument("unknown strategy '" + std::string(text) + "'");
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kIndividual:
      return "individual";
    case Strategy::kSequentialWithHelpers:
      return "sequential_with_helpers";
    case Strategy::kCooperative:
      return "cooperative";
  }
  return "?";
}

std::vector<NodeIndex> ClusterState::alive() const {
  std::vector<NodeIndex> out;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (shares[i]) out.push_back(static_cast<NodeIndex>(i + 1));
  }
  return out;
}

std::vector<NodeIndex> ClusterState::failed() const {
  std::vector<NodeIndex> out;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (!shares[i]) out.push_back(static_cast<NodeIndex>(i + 1));
  }
  return out;
}

std::vector<NodeShare> ClusterState::alive_shares() const {
  std::vector<NodeShare> out;
  for (const auto& s : shares) {
    if (s) out.push_back(*s);
  }
  return out;
}

ClusterState make_cluster(const CodeParams& params, std::span<const std::uint8_t> payload,
                          ByteMapping mapping) {
  const StripedFile file = stripe(payload, params, mapping);
  ClusterState state{params, {}, {}, 0};
  for (auto& share : encode(file, params)) state.shares.emplace_back(std::move(share));
  // In lossy mode the cluster stores the reduced symbols, so that is what
  // reconstruction must give back.
  state.reference = unstripe(file, params);
  return state;
}

ClusterState inject_failures(ClusterState state, std::size_t count, std::uint64_t seed) {
  if (count == 0) return state;
  const auto alive = state.alive();
  if (alive.size() < count + state.params.k()) {
    throw InsufficientNodes("failing " + std::to_string(count) + " of " +
                            std::to_string(alive.size()) + " alive nodes leaves fewer than k");
  }
  std::mt19937_64 rng(mix_seed(seed ^ mix_seed(state.epoch)));
  for (NodeIndex node : sample_without_replacement(rng, alive, count)) {
    state.shares[node - 1].reset();
  }
  return state;
}

ClusterState inject_failures(ClusterState state, std::span<const NodeIndex> nodes) {
  const std::set<NodeIndex> unique(nodes.begin(), nodes.end());
  if (unique.size() != nodes.size()) throw InvalidArgument("duplicate node in failure set");
  std::size_t still_alive = state.alive().size();
  for (NodeIndex node : unique) {
    if (node < 1 || node > state.params.n()) throw InvalidArgument("node index out of range");
    if (state.shares[node - 1]) --still_alive;
  }
  if (still_alive < state.params.k()) {
    throw InsufficientNodes("failure set leaves fewer than k alive nodes");
  }
  for (NodeIndex node : unique) state.shares[node - 1].reset();
  return state;
}

std::pair<ClusterState, StrategyReport> run_strategy(ClusterState state, Strategy strategy,
                                                     HelperSelection selection) {
  const CodeParams& params = state.params;
  const auto failed = state.failed();
  const auto available = state.alive_shares();
  const Field& field = *params.field();
  const BoundParams bound = mscr_bound(params, stripe_count(state));

  StrategyReport report;
  report.strategy = strategy;
  switch (strategy) {
    case Strategy::kIndividual: {
      report.formula = non_coop_msr(bound);
      for (NodeIndex node : failed) {
        auto outcome = individual_repair(node, available, params, selection);
        report.newcomers.push_back(metered(node, outcome.ledger, field));
        state.shares[node - 1] = std::move(outcome.repaired.front());
      }
      break;
    }
    case Strategy::kCooperative: {
      if (failed.size() > params.r()) {
        throw ParameterError("cooperative repair handles at most r = " +
                             std::to_string(params.r()) + " failures, got " +
                             std::to_string(failed.size()));
      }
      report.formula = msr_closed_form(bound);
      if (failed.empty()) break;
      const auto alive = state.alive();
      const RepairPlan plan = plan_repair(alive, failed, params, selection);
      auto outcome = cooperative_repair(available, plan, params);
      for (auto& share : outcome.repaired) {
        report.newcomers.push_back(metered(share.node_index, outcome.ledger, field));
        state.shares[share.node_index - 1] = std::move(share);
      }
      break;
    }
    case Strategy::kSequentialWithHelpers: {
      report.measured = false;
      const auto t = static_cast<unsigned>(failed.size());
      Rational sum = 0;
      for (unsigned i = 0; i < t; ++i) {
        const Rational term = bound.file_size * bound.d /
                              (Rational(bound.k) * (bound.d + i - bound.k + 1));
        sum += term;
        report.newcomers.push_back(
            {failed[i], term, Rational(0), term, term * field.symbol_width()});
        // Restore the data; the bandwidth above is the accounting figure.
        auto outcome = individual_repair(failed[i], available, params, selection);
        state.shares[failed[i] - 1] = std::move(outcome.repaired.front());
      }
      report.formula = t == 0 ? Rational(0) : sum / t;
      break;
    }
  }
  finish(report);
  ++state.epoch;
  return {std::move(state), std::move(report)};
}

VerifyReport verify_cluster(const ClusterState& state, std::size_t samples, std::uint64_t seed) {
  VerifyReport report;
  const auto alive = state.alive();
  const unsigned k = state.params.k();
  if (alive.size() < k) {
    report.failing_subsets.push_back(alive);
    return report;
  }
  auto check = [&](const std::vector<NodeIndex>& subset) {
    std::vector<NodeShare> picked;
    for (NodeIndex node : subset) picked.push_back(*state.shares[node - 1]);
    bool good = false;
    try {
      good = decode_payload(picked, state.params) == state.reference;
    } catch (const Error&) {
      good = false;
    }
    ++report.subsets_checked;
    if (!good) report.failing_subsets.push_back(subset);
  };

  if (state.params.n() <= 8) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    do {
      std::vector<NodeIndex> subset;
      for (auto i : idx) subset.push_back(alive[i]);
      check(subset);
    } while (next_combination(idx, alive.size()));
  } else {
    report.exhaustive = false;
    std::mt19937_64 rng(mix_seed(seed ^ mix_seed(state.epoch)));
    for (std::size_t i = 0; i < samples; ++i) {
      auto subset = sample_without_replacement(rng, alive, k);
      std::sort(subset.begin(), subset.end());
      check(subset);
    }
  }
  return report;
}

}  // namespace crgc
