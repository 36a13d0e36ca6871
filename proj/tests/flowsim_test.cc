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

#include "crgc/flowsim.h"

#include <random>

#include "gtest/gtest.h"

#include "crgc/error.h"

namespace crgc {
namespace {

BoundParams make(unsigned n, unsigned k, unsigned d, unsigned r, Rational alpha, Rational beta1,
                 Rational beta2) {
  BoundParams p;
  p.n = n;
  p.k = k;
  p.d = d;
  p.r = r;
  p.alpha = alpha;
  p.file_size = 0;
  p.beta1 = beta1;
  p.beta2 = beta2;
  return p;
}

// Nodes 2 and 4 fail and are rebuilt from nodes 1 and 3; the collector reads
// both newcomers.
RepairHistory four_node_history() {
  RepairHistory h;
  h.stages.push_back({{2, 4}, {{1, 3}, {1, 3}}});
  return h;
}

// Minimum over every source/sink partition of the interior vertices.
Rational brute_force_min_cut(const FlowGraph& g) {
  const std::size_t v = g.vertices().size();
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < v; ++i) {
    if (i != g.source() && i != g.sink()) interior.push_back(i);
  }
  Rational best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << interior.size()); ++mask) {
    std::vector<bool> side(v, false);
    side[g.sink()] = true;
    for (std::size_t i = 0; i < interior.size(); ++i) side[interior[i]] = mask >> i & 1;
    const Rational c = cut_capacity(g, side);
    if (best < 0 || c < best) best = c;
  }
  return best;
}

Rational min_over_kinds(const FlowGraph& g) {
  const std::size_t groups = collector_group_count(g);
  Rational best = -1;
  for (std::uint32_t mask = 0; mask < (1u << groups); ++mask) {
    std::vector<CutKind> kinds;
    for (std::size_t i = 0; i < groups; ++i) {
      kinds.push_back(mask >> i & 1 ? CutKind::kStorage : CutKind::kRepairLinks);
    }
    const Rational c = evaluate_cut(g, kinds);
    if (best < 0 || c < best) best = c;
  }
  return best;
}

TEST(FlowGraph, FourNodeShape) {
  const auto p = make(4, 2, 2, 2, 2, 1, 1);
  const std::vector<unsigned> dc = {2, 4};
  const auto g = build_graph(four_node_history(), dc, p);
  // source, 4 initial outs, (in, mid, out) for both newcomers, collector.
  EXPECT_EQ(g.vertices().size(), 12u);
  // 4 storage + 4 helper links + 2 internal + 2 exchange + 2 storage + 2 collector.
  EXPECT_EQ(g.edges().size(), 16u);
  const auto dump = g.dump();
  EXPECT_NE(dump.find("source,out:1:0,2\n"), std::string::npos);
  EXPECT_NE(dump.find("out:3:0,in:2:1,1\n"), std::string::npos);
  EXPECT_NE(dump.find("in:2:1,mid:2:1,inf\n"), std::string::npos);
  EXPECT_NE(dump.find("in:2:1,mid:4:1,1\n"), std::string::npos);
  EXPECT_NE(dump.find("mid:4:1,out:4:1,2\n"), std::string::npos);
  EXPECT_NE(dump.find("out:4:1,dc,inf\n"), std::string::npos);
  EXPECT_EQ(g.infinity(), 2 * 4 + 4 + 2 + 2 * 2 + 1);
  EXPECT_EQ(g.collector_nodes(), (std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {4, 1}}));
}

TEST(FlowGraph, Validation) {
  const auto p = make(4, 2, 2, 2, 2, 1, 1);
  const std::vector<unsigned> dc = {2, 4};
  RepairHistory h = four_node_history();
  h.stages[0].helpers[0] = {1, 4};  // helper under repair
  EXPECT_THROW(build_graph(h, dc, p), InvalidArgument);
  h = four_node_history();
  h.stages[0].helpers[0] = {1};
  EXPECT_THROW(build_graph(h, dc, p), InvalidArgument);
  h = four_node_history();
  h.stages[0].regenerated = {2};
  EXPECT_THROW(build_graph(h, dc, p), InvalidArgument);
  const std::vector<unsigned> bad_dc = {2, 2};
  EXPECT_THROW(build_graph(four_node_history(), bad_dc, p), InvalidArgument);
  const std::vector<unsigned> far_dc = {2, 5};
  EXPECT_THROW(build_graph(four_node_history(), far_dc, p), InvalidArgument);
  RepairHistory long_history = four_node_history();
  for (int i = 0; i < 2; ++i) long_history.stages.push_back(long_history.stages[0]);
  EXPECT_THROW(build_graph(long_history, dc, p), InvalidArgument);
}

TEST(MaxFlow, FourNodeExample) {
  const std::vector<unsigned> dc = {2, 4};
  const auto g = build_graph(four_node_history(), dc, make(4, 2, 2, 2, 2, 1, 1));
  EXPECT_EQ(max_flow(g), 4);
  EXPECT_EQ(brute_force_min_cut(g), 4);
  // Below the optimum bandwidth the file no longer fits.
  const auto thin = build_graph(four_node_history(), dc, make(4, 2, 2, 2, 2, Rational(1, 2), 1));
  EXPECT_EQ(max_flow(thin), 2);
  EXPECT_EQ(brute_force_min_cut(thin), 2);
}

TEST(MaxFlow, MatchesBruteForceMinCut) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = make(4, 2, 2, 2, Rational(1 + rng() % 6, 2), Rational(rng() % 5, 3),
                        Rational(rng() % 5, 2));
    std::vector<unsigned> dc = {2, 4};
    if (trial % 3 == 1) dc = {1, 2};
    if (trial % 3 == 2) dc = {3, 4};
    const auto g = build_graph(four_node_history(), dc, p);
    EXPECT_EQ(max_flow(g), brute_force_min_cut(g)) << "trial " << trial;
  }
}

TEST(EvaluateCut, FourNodeCutKinds) {
  const std::vector<unsigned> dc = {2, 4};
  const auto g = build_graph(four_node_history(), dc, make(4, 2, 2, 2, 3, 1, 1));
  ASSERT_EQ(collector_group_count(g), 1u);
  EXPECT_EQ(evaluate_cut(g, std::vector<CutKind>{CutKind::kStorage}), 6);
  EXPECT_EQ(evaluate_cut(g, std::vector<CutKind>{CutKind::kRepairLinks}), 4);
  EXPECT_EQ(max_flow(g), 4);
  EXPECT_THROW(evaluate_cut(g, std::vector<CutKind>{}), InvalidArgument);
}

TEST(Adversarial, ConstructibleForEveryTuple) {
  for (unsigned k = 1; k <= 4; ++k) {
    for (unsigned r = 1; r <= 3; ++r) {
      for (unsigned d = k; d <= k + 1; ++d) {
        const auto p = make(0, k, d, r, 3, 1, 1);
        for (const auto& t : enumerate_cut_types(k, r)) {
          const auto adv = adversarial_history(t, p);
          EXPECT_EQ(adv.n, d + r);
          auto q = p;
          q.n = adv.n;
          const auto g = build_graph(adv.history, adv.dc_nodes, q);
          std::size_t nonzero = 0;
          for (auto part : t.parts) nonzero += part > 0;
          EXPECT_EQ(adv.history.stages.size(), nonzero);
          EXPECT_EQ(collector_group_count(g), nonzero);
        }
      }
    }
  }
  EXPECT_THROW(adversarial_history({{1, 1}}, make(3, 2, 2, 2, 2, 1, 1)), InvalidArgument);
}

TEST(Adversarial, FlowNeverExceedsCutValue) {
  std::mt19937_64 rng(11);
  for (int sample = 0; sample < 24; ++sample) {
    const unsigned k = 1 + rng() % 3;
    const unsigned r = 1 + rng() % 3;
    const auto p = make(0, k, k, r, Rational(1 + rng() % 8, 2), Rational(rng() % 7, 3),
                        Rational(rng() % 7, 4));
    for (const auto& t : enumerate_cut_types(k, r)) {
      const auto adv = adversarial_history(t, p);
      auto q = p;
      q.n = adv.n;
      const auto g = build_graph(adv.history, adv.dc_nodes, q);
      const Rational flow = max_flow(g);
      EXPECT_LE(flow, cut_value(t, q)) << t.to_string();
      EXPECT_LE(flow, min_over_kinds(g));
      if (g.vertices().size() <= 16) EXPECT_EQ(flow, brute_force_min_cut(g));
    }
  }
}

TEST(Adversarial, ConstructionOperatingPointCarriesFile) {
  for (unsigned k = 1; k <= 3; ++k) {
    for (unsigned r = 1; r <= 3; ++r) {
      const auto p = make(0, k, k, r, r, 1, 1);
      for (const auto& t : enumerate_cut_types(k, r)) {
        const auto adv = adversarial_history(t, p);
        auto q = p;
        q.n = adv.n;
        EXPECT_GE(max_flow(build_graph(adv.history, adv.dc_nodes, q)), k * r);
      }
    }
  }
}

}  // namespace
}  // namespace crgc
