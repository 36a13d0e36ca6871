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

#include <charconv>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "crgc/sampling.h"

namespace crgc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::uint64_t parse_uint(std::string_view text, std::size_t line, std::string_view key) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ScenarioError(line, "'" + std::string(key) + "' expects a non-negative integer, got '" +
                                  std::string(text) + "'");
  }
  return value;
}

unsigned parse_small(std::string_view text, std::size_t line, std::string_view key) {
  const auto v = parse_uint(text, line, key);
  if (v > 0xFFFF) throw ScenarioError(line, "'" + std::string(key) + "' is out of range");
  return static_cast<unsigned>(v);
}

nlohmann::json rational_json(const Rational& x) {
  return {{"exact", to_exact_string(x)}, {"decimal", to_decimal_string(x)}};
}

}  // namespace

ScenarioError::ScenarioError(std::size_t line, const std::string& message)
    : InvalidArgument("scenario line " + std::to_string(line) + ": " + message), line_(line) {}

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ScenarioError(line_no, "expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ScenarioError(line_no, "duplicate key '" + key + "'");
    try {
      if (key == "n") {
        sc.n = parse_small(value, line_no, key);
      } else if (key == "k") {
        sc.k = parse_small(value, line_no, key);
      } else if (key == "r") {
        sc.r = parse_small(value, line_no, key);
      } else if (key == "B_symbols") {
        sc.file_symbols = parse_uint(value, line_no, key);
      } else if (key == "field") {
        sc.field = parse_field_mode(value);
      } else if (key == "seed") {
        sc.seed = parse_uint(value, line_no, key);
      } else if (key == "epochs") {
        sc.epochs = parse_uint(value, line_no, key);
      } else if (key == "strategy") {
        sc.strategies.clear();
        if (value == "all") {
          sc.strategies = {Strategy::kIndividual, Strategy::kSequentialWithHelpers,
                           Strategy::kCooperative};
        } else {
          for (auto item : split_commas(value)) sc.strategies.push_back(parse_strategy(item));
        }
      } else if (key == "failures") {
        for (auto item : split_commas(value)) {
          sc.failures.push_back(parse_small(item, line_no, key));
        }
      } else if (key == "helpers") {
        sc.helpers = parse_helper_policy(value);
      } else {
        throw ScenarioError(line_no, "unknown key '" + key + "'");
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const InvalidArgument& e) {
      throw ScenarioError(line_no, e.what());
    }
  }
  for (const char* required : {"n", "k", "r", "B_symbols"}) {
    if (!seen.contains(required)) {
      throw ScenarioError(line_no, std::string("missing required key '") + required + "'");
    }
  }
  return sc;
}

bool SimulationReport::all_verified() const {
  for (const auto& e : epochs) {
    for (const auto& run : e.runs) {
      if (!run.verify.ok()) return false;
    }
  }
  return true;
}

SimulationReport run_scenario(const Scenario& sc) {
  const CodeParams params = CodeParams::create(sc.n, sc.k, sc.r, sc.field);
  const Field& field = *params.field();

  std::mt19937_64 rng(mix_seed(sc.seed));
  std::vector<std::uint8_t> payload(sc.file_symbols * field.symbol_width());
  for (std::uint64_t i = 0; i < sc.file_symbols; ++i) {
    const Symbol sym = uniform_below(rng, field.order());
    field.write_symbol(sym, std::span(payload).subspan(i * field.symbol_width(),
                                                       field.symbol_width()));
  }

  SimulationReport report;
  report.scenario = sc;
  report.symbol_width = field.symbol_width();
  ClusterState state = make_cluster(params, payload);
  report.stripes = state.shares.front()->stripe_count;
  const HelperSelection selection{sc.helpers, sc.seed};

  for (std::uint64_t e = 0; e < sc.epochs; ++e) {
    ClusterState broken = sc.failures.empty() ? inject_failures(state, params.r(), sc.seed)
                                              : inject_failures(state, sc.failures);
    EpochResult result;
    result.epoch = broken.epoch + 1;
    result.failed = broken.failed();
    std::optional<ClusterState> next;
    for (Strategy strategy : sc.strategies) {
      auto [repaired, strategy_report] = run_strategy(broken, strategy, selection);
      result.runs.push_back({std::move(strategy_report), verify_cluster(repaired, 256, sc.seed)});
      if (!next) next = std::move(repaired);
    }
    report.epochs.push_back(std::move(result));
    if (next) state = std::move(*next);
  }
  return report;
}

std::string report_json(const SimulationReport& report) {
  using nlohmann::json;
  const Scenario& sc = report.scenario;
  json out;
  out["scenario"] = {{"n", sc.n},
                     {"k", sc.k},
                     {"r", sc.r},
                     {"B_symbols", sc.file_symbols},
                     {"field", std::string(to_string(sc.field))},
                     {"seed", sc.seed},
                     {"epochs", sc.epochs}};
  out["symbol_width"] = report.symbol_width;
  out["stripes"] = report.stripes;
  out["epochs"] = json::array();
  for (const auto& e : report.epochs) {
    json je{{"epoch", e.epoch}, {"failed", e.failed}, {"strategies", json::array()}};
    for (const auto& run : e.runs) {
      const auto& r = run.report;
      json jr{{"strategy", std::string(to_string(r.strategy))},
              {"measured", r.measured},
              {"per_newcomer_symbols", rational_json(r.per_newcomer)},
              {"formula_symbols", rational_json(r.formula)},
              {"total_symbols", rational_json(r.total_symbols)},
              {"verified", run.verify.ok()},
              {"subsets_checked", run.verify.subsets_checked},
              {"newcomers", json::array()}};
      for (const auto& nb : r.newcomers) {
        jr["newcomers"].push_back({{"node", nb.node},
                                   {"phase1_symbols", to_exact_string(nb.phase1_symbols)},
                                   {"phase2_symbols", to_exact_string(nb.phase2_symbols)},
                                   {"total_symbols", to_exact_string(nb.total_symbols)},
                                   {"total_bytes", to_exact_string(nb.total_bytes)}});
      }
      if (!run.verify.ok()) jr["failing_subsets"] = run.verify.failing_subsets;
      je["strategies"].push_back(std::move(jr));
    }
    out["epochs"].push_back(std::move(je));
  }
  out["all_verified"] = report.all_verified();
  return out.dump(2) + "\n";
}

std::string report_csv(const SimulationReport& report) {
  std::ostringstream os;
  os << "epoch,strategy,newcomer,phase1_symbols,phase2_symbols,total_bytes\n";
  for (const auto& e : report.epochs) {
    for (const auto& run : e.runs) {
      for (const auto& nb : run.report.newcomers) {
        os << e.epoch << ',' << to_string(run.report.strategy) << ',' << nb.node << ','
           << to_exact_string(nb.phase1_symbols) << ',' << to_exact_string(nb.phase2_symbols)
           << ',' << to_exact_string(nb.total_bytes) << '\n';
      }
    }
  }
  return os.str();
}

}  // namespace crgc
