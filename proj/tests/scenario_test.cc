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

#include "crgc/scenario.h"

#include "gtest/gtest.h"

#include "json.hpp"

namespace crgc {
namespace {

constexpr std::string_view kSevenNodeScenario = R"(# seven nodes, three simultaneous failures
n = 7
k = 4
r = 3
B_symbols = 84
seed = 17
strategy = all
)";

std::size_t error_line(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.line();
  }
  return 0;
}

TEST(ParseScenario, Fields) {
  const auto sc = parse_scenario(
      "n=9\nk=3\nr=2\nB_symbols=60\nfield=gf256\nseed=5\nepochs=4\n"
      "strategy=individual, cooperative\nfailures=2,7\nhelpers=round-robin\n");
  EXPECT_EQ(sc.n, 9u);
  EXPECT_EQ(sc.k, 3u);
  EXPECT_EQ(sc.r, 2u);
  EXPECT_EQ(sc.file_symbols, 60u);
  EXPECT_EQ(sc.field, FieldMode::kGf256);
  EXPECT_EQ(sc.seed, 5u);
  EXPECT_EQ(sc.epochs, 4u);
  EXPECT_EQ(sc.strategies, (std::vector<Strategy>{Strategy::kIndividual, Strategy::kCooperative}));
  EXPECT_EQ(sc.failures, (std::vector<NodeIndex>{2, 7}));
  EXPECT_EQ(sc.helpers, HelperPolicy::kRoundRobin);

  const auto defaults = parse_scenario(kSevenNodeScenario);
  EXPECT_EQ(defaults.epochs, 1u);
  EXPECT_EQ(defaults.strategies.size(), 3u);
  EXPECT_EQ(defaults.field, FieldMode::kAuto);
}

TEST(ParseScenario, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("n=7\nk=4\nr=three\nB_symbols=84\n"), 3u);
  EXPECT_EQ(error_line("n=7\n\n# comment\nbogus=1\n"), 4u);
  EXPECT_EQ(error_line("n=7\nn=8\n"), 2u);
  EXPECT_EQ(error_line("n=7\nk 4\n"), 2u);
  EXPECT_EQ(error_line("n=7\nk=4\nr=3\nB_symbols=84\nstrategy=fastest\n"), 5u);
  EXPECT_EQ(error_line("n=7\nk=4\nfield=gf3\n"), 3u);
  EXPECT_EQ(error_line("n=7\nk=4\nB_symbols=84\n"), 3u);  // r missing
  EXPECT_EQ(error_line("n=-1\n"), 1u);
}

TEST(RunScenario, ThreeStrategyComparison) {
  const auto report = run_scenario(parse_scenario(kSevenNodeScenario));
  EXPECT_EQ(report.stripes, 7u);
  ASSERT_EQ(report.epochs.size(), 1u);
  const auto& runs = report.epochs[0].runs;
  ASSERT_EQ(runs.size(), 3u);
  EXPECT_EQ(runs[0].report.per_newcomer, 84);
  EXPECT_EQ(runs[1].report.per_newcomer, Rational(154, 3));
  EXPECT_EQ(runs[2].report.per_newcomer, 42);
  EXPECT_TRUE(report.all_verified());

  const auto json = nlohmann::json::parse(report_json(report));
  const auto& seq = json["epochs"][0]["strategies"][1];
  EXPECT_EQ(seq["strategy"], "sequential_with_helpers");
  EXPECT_EQ(seq["per_newcomer_symbols"]["exact"], "154/3");
  EXPECT_EQ(seq["per_newcomer_symbols"]["decimal"], "51.333333");
  EXPECT_EQ(json["all_verified"], true);

  const auto csv = report_csv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "epoch,strategy,newcomer,phase1_symbols,phase2_symbols,total_bytes");
  EXPECT_NE(csv.find(",cooperative,"), std::string::npos);
  EXPECT_NE(csv.find(",28,14,42\n"), std::string::npos);
}

TEST(RunScenario, Reproducible) {
  const auto sc = parse_scenario("n=10\nk=3\nr=3\nB_symbols=200\nseed=8\nepochs=5\n");
  EXPECT_EQ(report_json(run_scenario(sc)), report_json(run_scenario(sc)));
  auto other = sc;
  other.seed = 9;
  EXPECT_NE(report_json(run_scenario(sc)), report_json(run_scenario(other)));
}

TEST(RunScenario, MultipleEpochsStayConsistent) {
  const auto report =
      run_scenario(parse_scenario("n=8\nk=3\nr=2\nB_symbols=97\nseed=3\nepochs=6\nfield=gf65536\n"));
  ASSERT_EQ(report.epochs.size(), 6u);
  EXPECT_EQ(report.symbol_width, 2u);
  for (const auto& e : report.epochs) {
    EXPECT_EQ(e.failed.size(), 2u);
    EXPECT_EQ(e.runs[0].report.per_newcomer, Rational(report.stripes * 4));
  }
  EXPECT_TRUE(report.all_verified());
}

TEST(RunScenario, ZeroEpochs) {
  const auto report = run_scenario(parse_scenario("n=5\nk=2\nr=2\nB_symbols=10\nepochs=0\n"));
  EXPECT_TRUE(report.epochs.empty());
  EXPECT_EQ(report_csv(report), "epoch,strategy,newcomer,phase1_symbols,phase2_symbols,total_bytes\n");
  EXPECT_TRUE(report.all_verified());
}

TEST(RunScenario, ExplicitFailures) {
  const auto report =
      run_scenario(parse_scenario("n=4\nk=2\nr=2\nB_symbols=4\nfailures=2,4\nfield=auto\n"));
  EXPECT_EQ(report.epochs[0].failed, (std::vector<NodeIndex>{2, 4}));
  // One stripe: two helper symbols plus one exchanged symbol each.
  EXPECT_EQ(report.epochs[0].runs[0].report.per_newcomer, 3);
}

}  // namespace
}  // namespace crgc
