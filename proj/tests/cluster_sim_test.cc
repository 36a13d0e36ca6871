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

#include <random>

#include "gtest/gtest.h"

#include "crgc/error.h"

namespace crgc {
namespace {

ClusterState seven_node_cluster(std::uint64_t seed = 1) {
  const auto params = CodeParams::create(7, 4, 3);
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> payload(84);
  for (auto& b : payload) b = static_cast<std::uint8_t>(rng() % 7);
  return make_cluster(params, payload);
}

TEST(Strategy, Parse) {
  EXPECT_EQ(parse_strategy("individual"), Strategy::kIndividual);
  EXPECT_EQ(parse_strategy("sequential_with_helpers"), Strategy::kSequentialWithHelpers);
  EXPECT_EQ(parse_strategy("cooperative"), Strategy::kCooperative);
  EXPECT_EQ(to_string(Strategy::kSequentialWithHelpers), "sequential_with_helpers");
  EXPECT_THROW(parse_strategy("parallel"), InvalidArgument);
}

TEST(InjectFailures, ExplicitSet) {
  const auto params = CodeParams::create(4, 2, 2, Field::create({5, 1, {}}));
  const std::vector<std::uint8_t> payload = {1, 2, 3, 4};
  const auto state = make_cluster(params, payload);
  const auto broken = inject_failures(state, std::vector<NodeIndex>{2, 4});
  EXPECT_EQ(broken.alive(), (std::vector<NodeIndex>{1, 3}));
  EXPECT_EQ(broken.failed(), (std::vector<NodeIndex>{2, 4}));
  EXPECT_THROW(inject_failures(state, std::vector<NodeIndex>{1, 2, 3}), InsufficientNodes);
  EXPECT_THROW(inject_failures(state, std::vector<NodeIndex>{2, 2}), InvalidArgument);
  EXPECT_THROW(inject_failures(state, std::vector<NodeIndex>{5}), InvalidArgument);
}

TEST(InjectFailures, SeededIsReproducible) {
  const auto state = seven_node_cluster();
  const auto a = inject_failures(state, 3, 99);
  const auto b = inject_failures(state, 3, 99);
  EXPECT_EQ(a.failed(), b.failed());
  EXPECT_EQ(a.failed().size(), 3u);
  EXPECT_EQ(inject_failures(state, 0, 99).failed().size(), 0u);
  EXPECT_THROW(inject_failures(state, 4, 99), InsufficientNodes);
  // Different seeds eventually pick different sets.
  bool differs = false;
  for (std::uint64_t s = 0; s < 20 && !differs; ++s) {
    differs = inject_failures(state, 3, s).failed() != a.failed();
  }
  EXPECT_TRUE(differs);
}

TEST(RunStrategy, ThreeStrategyComparison) {
  const auto broken = inject_failures(seven_node_cluster(), std::vector<NodeIndex>{1, 4, 6});
  ASSERT_EQ(broken.shares[1]->stripe_count, 7u);

  const auto [ind_state, ind] = run_strategy(broken, Strategy::kIndividual);
  EXPECT_TRUE(ind.measured);
  EXPECT_EQ(ind.per_newcomer, 84);
  EXPECT_EQ(ind.formula, 84);
  for (const auto& nb : ind.newcomers) EXPECT_EQ(nb.total_symbols, 84);

  const auto [seq_state, seq] = run_strategy(broken, Strategy::kSequentialWithHelpers);
  EXPECT_FALSE(seq.measured);
  EXPECT_EQ(seq.per_newcomer, Rational(154, 3));
  EXPECT_EQ(seq.formula, Rational(154, 3));
  EXPECT_EQ(to_decimal_string(seq.per_newcomer, 3), "51.333");
  ASSERT_EQ(seq.newcomers.size(), 3u);
  EXPECT_EQ(seq.newcomers[0].total_symbols, 84);
  EXPECT_EQ(seq.newcomers[1].total_symbols, 42);
  EXPECT_EQ(seq.newcomers[2].total_symbols, 28);

  const auto [coop_state, coop] = run_strategy(broken, Strategy::kCooperative);
  EXPECT_TRUE(coop.measured);
  EXPECT_EQ(coop.per_newcomer, 42);
  EXPECT_EQ(coop.formula, 42);
  for (const auto& nb : coop.newcomers) {
    EXPECT_EQ(nb.phase1_symbols, 28);
    EXPECT_EQ(nb.phase2_symbols, 14);
    EXPECT_EQ(nb.total_bytes, 42);
  }

  for (const auto* s : {&ind_state, &seq_state, &coop_state}) {
    EXPECT_TRUE(s->failed().empty());
    EXPECT_EQ(s->epoch, 1u);
    for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(*s->shares[j], *seven_node_cluster().shares[j]);
    EXPECT_TRUE(verify_cluster(*s).ok());
  }
}

TEST(RunStrategy, CooperativeRejectsTooManyFailures) {
  const auto params = CodeParams::create(8, 2, 2);
  const std::vector<std::uint8_t> payload(40, 3);
  const auto broken = inject_failures(make_cluster(params, payload), std::vector<NodeIndex>{1, 2, 3});
  EXPECT_THROW(run_strategy(broken, Strategy::kCooperative), ParameterError);
  const auto [fixed, report] = run_strategy(broken, Strategy::kIndividual);
  EXPECT_TRUE(verify_cluster(fixed).ok());
}

TEST(RunStrategy, NoFailuresIsANoOp) {
  const auto state = seven_node_cluster();
  const auto [after, report] = run_strategy(state, Strategy::kCooperative);
  EXPECT_TRUE(report.newcomers.empty());
  EXPECT_EQ(report.per_newcomer, 0);
  EXPECT_EQ(after.epoch, 1u);
}

TEST(Verify, ExhaustiveAndSampled) {
  const auto small = verify_cluster(seven_node_cluster());
  EXPECT_TRUE(small.ok());
  EXPECT_TRUE(small.exhaustive);
  EXPECT_EQ(small.subsets_checked, 35u);

  const auto params = CodeParams::create(12, 3, 3);
  std::vector<std::uint8_t> payload(90);
  for (std::size_t i = 0; i < payload.size(); ++i) payload[i] = static_cast<std::uint8_t>(i % 13);
  const auto big = verify_cluster(make_cluster(params, payload), 50, 3);
  EXPECT_TRUE(big.ok());
  EXPECT_FALSE(big.exhaustive);
  EXPECT_EQ(big.subsets_checked, 50u);
}

TEST(Verify, CorruptedShareIsIdentified) {
  auto state = seven_node_cluster();
  state.shares[4]->symbols[5] = (state.shares[4]->symbols[5] + 1) % 7;
  const auto report = verify_cluster(state);
  EXPECT_FALSE(report.ok());
  // Exactly the subsets containing node 5 fail.
  EXPECT_EQ(report.failing_subsets.size(), 20u);
  for (const auto& subset : report.failing_subsets) {
    EXPECT_NE(std::find(subset.begin(), subset.end(), 5u), subset.end());
  }
}

TEST(Cluster, LossyReferenceHoldsReducedSymbols) {
  const auto params = CodeParams::create(4, 2, 2, Field::create({5, 1, {}}));
  const std::vector<std::uint8_t> payload = {9, 1};
  EXPECT_THROW(make_cluster(params, payload), InvalidArgument);
  const auto state = make_cluster(params, payload, ByteMapping::kLossy);
  EXPECT_EQ(state.reference, (std::vector<std::uint8_t>{4, 1}));
  EXPECT_TRUE(verify_cluster(state).ok());
}

}  // namespace
}  // namespace crgc
