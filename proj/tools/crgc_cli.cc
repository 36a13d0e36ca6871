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

// Command-line front end: encode, reconstruct, repair, bound and simulate.
//
// Exit codes: 0 success, 1 I/O or unexpected failure, 2 usage error,
// 3 data-integrity error, 4 infeasible or unsupported parameters.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crgc/coop_repair.h"
#include "crgc/cutbound.h"
#include "crgc/error.h"
#include "crgc/mscr.h"
#include "crgc/rational.h"
#include "crgc/scenario.h"
#include "crgc/share_format.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIntegrity = 3;
constexpr int kExitParameter = 4;

// Integrity failures that are not exceptions (a failed verification).
struct IntegrityFailure {
  std::string message;
};

std::string share_name(crgc::NodeIndex node) { return "node_" + std::to_string(node) + ".crgc"; }

std::string hex32(std::uint32_t v) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  crgc::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// Writes to `out` when given, stdout otherwise.
void emit(const std::optional<std::string>& out, const std::string& text) {
  if (out) {
    write_text(*out, text);
  } else {
    std::cout << text;
  }
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create directory " + dir.string());
}

std::vector<crgc::NodeIndex> parse_node_list(const std::string& text) {
  std::vector<crgc::NodeIndex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v == 0 || v > 0xFFFF) throw std::invalid_argument(item);
      out.push_back(static_cast<crgc::NodeIndex>(v));
    } catch (const std::logic_error&) {
      throw crgc::InvalidArgument("bad node index '" + item + "'");
    }
  }
  if (out.empty()) throw crgc::InvalidArgument("empty node list");
  return out;
}

// "a,b,c" or "start:stop:step" (inclusive).
std::vector<crgc::Rational> parse_alpha_grid(const std::string& text) {
  std::vector<crgc::Rational> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw crgc::InvalidArgument("alpha grid range must be start:stop:step");
    const auto start = crgc::parse_rational(parts[0]);
    const auto stop = crgc::parse_rational(parts[1]);
    const auto step = crgc::parse_rational(parts[2]);
    if (step <= 0) throw crgc::InvalidArgument("alpha grid step must be positive");
    if (stop < start) throw crgc::InvalidArgument("alpha grid range is empty");
    if ((stop - start) / step > 100000) throw crgc::InvalidArgument("alpha grid is too large");
    for (auto a = start; a <= stop; a += step) out.push_back(a);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(crgc::parse_rational(item));
  }
  if (out.empty()) throw crgc::InvalidArgument("empty alpha grid");
  return out;
}

nlohmann::json rational_json(const crgc::Rational& x) {
  return {{"exact", crgc::to_exact_string(x)}, {"decimal", crgc::to_decimal_string(x)}};
}

std::string exact_and_decimal(const crgc::Rational& x) {
  return crgc::to_exact_string(x) + " (" + crgc::to_decimal_string(x) + ")";
}

// ---------------------------------------------------------------------------

struct EncodeArgs {
  std::string input;
  unsigned n = 0, k = 0, r = 0;
  std::string field = "auto";
  bool lossy = false;
  std::string out;
};

int cmd_encode(const EncodeArgs& a) {
  const auto params = crgc::CodeParams::create(a.n, a.k, a.r, crgc::parse_field_mode(a.field));
  const auto payload = crgc::read_file(a.input);
  const auto file = crgc::stripe(payload, params,
                                 a.lossy ? crgc::ByteMapping::kLossy : crgc::ByteMapping::kStrict);
  const auto shares = crgc::encode(file, params);
  ensure_dir(a.out);
  std::string manifest;
  for (const auto& share : shares) {
    const auto bytes = crgc::serialize_share(share, params);
    const auto name = share_name(share.node_index);
    crgc::write_file(fs::path(a.out) / name, bytes);
    manifest += name + " " + hex32(crgc::crc32(bytes)) + " " + std::to_string(bytes.size()) + "\n";
  }
  write_text(fs::path(a.out) / "manifest.txt", manifest);
  std::cout << "encoded " << payload.size() << " bytes into " << shares.size() << " shares ("
            << file.stripes.size() << " stripes over " << params.field()->spec().to_string()
            << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct ReconstructArgs {
  std::vector<std::string> shares;
  std::string out;
};

// Parses share files and checks they describe the same code and file.
std::pair<crgc::CodeParams, std::vector<crgc::NodeShare>> load_shares(
    const std::vector<fs::path>& paths) {
  std::optional<crgc::CodeParams> params;
  std::vector<crgc::NodeShare> shares;
  for (const auto& path : paths) {
    auto parsed = crgc::parse_share(crgc::read_file(path));
    if (!params) {
      params = parsed.params;
    } else if (!params->same_code(parsed.params)) {
      throw crgc::IntegrityError(path.string() + " was encoded with different code parameters");
    }
    for (const auto& s : shares) {
      if (s.node_index == parsed.share.node_index) {
        throw crgc::InvalidArgument("two shares for node " + std::to_string(s.node_index));
      }
      if (s.stripe_count != parsed.share.stripe_count ||
          s.original_length != parsed.share.original_length) {
        throw crgc::IntegrityError(path.string() + " belongs to a different file");
      }
    }
    shares.push_back(std::move(parsed.share));
  }
  if (!params) throw crgc::InvalidArgument("no shares given");
  return {std::move(*params), std::move(shares)};
}

int cmd_reconstruct(const ReconstructArgs& a) {
  const std::vector<fs::path> paths(a.shares.begin(), a.shares.end());
  const auto [params, shares] = load_shares(paths);
  const auto payload = crgc::decode_payload(shares, params);
  crgc::write_file(a.out, payload);
  std::cout << "reconstructed " << payload.size() << " bytes from nodes";
  for (const auto& s : shares) std::cout << ' ' << s.node_index;
  std::cout << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct RepairArgs {
  std::string dir;
  std::string failed;
  std::string out;
  std::optional<std::string> transcript;
  std::string policy = "lowest";
  std::uint64_t seed = 0;
};

int cmd_repair(const RepairArgs& a) {
  const auto failed = parse_node_list(a.failed);
  const auto policy = crgc::parse_helper_policy(a.policy);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".crgc") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw crgc::InsufficientNodes("no share files in " + a.dir);
  auto [params, all] = load_shares(paths);

  std::vector<crgc::NodeShare> available;
  std::vector<crgc::NodeIndex> alive;
  for (auto& s : all) {
    if (std::find(failed.begin(), failed.end(), s.node_index) != failed.end()) continue;
    alive.push_back(s.node_index);
    available.push_back(std::move(s));
  }
  const auto plan = crgc::plan_repair(alive, failed, params, {policy, a.seed});
  const auto outcome = crgc::cooperative_repair(available, plan, params);

  ensure_dir(a.out);
  for (const auto& share : outcome.repaired) {
    crgc::write_file(fs::path(a.out) / share_name(share.node_index),
                     crgc::serialize_share(share, params));
  }
  if (a.transcript) write_text(*a.transcript, outcome.ledger.transcript(*params.field()));

  const std::uint64_t stripes = available.front().stripe_count;
  for (crgc::NodeIndex node : plan.failed) {
    std::cout << "node " << node << ": phase1=" << outcome.ledger.received(node, 1)
              << " phase2=" << outcome.ledger.received(node, 2)
              << " total=" << outcome.ledger.received(node) << " symbols";
    if (stripes > 0) {
      std::cout << " (" << crgc::to_exact_string(crgc::Rational(outcome.ledger.received(node)) /
                                                 crgc::Rational(stripes))
                << " per stripe)";
    }
    std::cout << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct BoundArgs {
  unsigned k = 0;
  std::optional<unsigned> d;
  unsigned r = 0;
  std::string file_size;
  std::optional<std::string> alpha;
  std::optional<std::string> alpha_grid;
  std::string format = "text";
  std::optional<std::string> out;
};

int cmd_bound(const BoundArgs& a) {
  crgc::BoundParams p;
  p.k = a.k;
  p.d = a.d.value_or(a.k);
  p.r = a.r;
  p.n = p.d + p.r;
  p.file_size = crgc::parse_rational(a.file_size);
  p.validate();
  const auto cooperative = crgc::msr_closed_form(p);
  const auto individual = crgc::non_coop_msr(p);

  if (a.alpha_grid) {
    if (a.format == "text") throw crgc::InvalidArgument("--alpha-grid emits csv or json");
    const auto points = crgc::tradeoff_curve(p, parse_alpha_grid(*a.alpha_grid));
    if (a.format == "csv") {
      emit(a.out, crgc::tradeoff_csv(points));
    } else {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& pt : points) {
        j.push_back({{"alpha", rational_json(pt.alpha)},
                     {"gamma_star", rational_json(pt.gamma_star)},
                     {"beta1", rational_json(pt.beta1)},
                     {"beta2", rational_json(pt.beta2)}});
      }
      emit(a.out, j.dump(2) + "\n");
    }
    return 0;
  }

  p.alpha = crgc::parse_rational(*a.alpha);
  const auto pt = crgc::gamma_star(p);
  auto at_opt = p;
  at_opt.beta1 = pt.beta1;
  at_opt.beta2 = pt.beta2;
  const auto types = crgc::enumerate_cut_types(p.k, p.r);

  if (a.format == "csv") {
    emit(a.out, crgc::tradeoff_csv(std::vector<crgc::TradeoffPoint>{pt}));
  } else if (a.format == "json") {
    nlohmann::json j{{"k", p.k},
                     {"d", p.d},
                     {"r", p.r},
                     {"B", rational_json(p.file_size)},
                     {"alpha", rational_json(p.alpha)},
                     {"gamma_star", rational_json(pt.gamma_star)},
                     {"beta1", rational_json(pt.beta1)},
                     {"beta2", rational_json(pt.beta2)},
                     {"cooperative_msr", rational_json(cooperative)},
                     {"individual_msr", rational_json(individual)},
                     {"cuts", nlohmann::json::array()}};
    for (const auto& t : types) {
      const auto v = crgc::cut_value(t, at_opt);
      j["cuts"].push_back({{"type", t.to_string()},
                           {"value", rational_json(v)},
                           {"tight", v == p.file_size}});
    }
    emit(a.out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "k=" << p.k << " d=" << p.d << " r=" << p.r << " B=" << crgc::to_exact_string(p.file_size)
       << " alpha=" << crgc::to_exact_string(p.alpha) << '\n'
       << "gamma_star      " << exact_and_decimal(pt.gamma_star) << '\n'
       << "beta1           " << exact_and_decimal(pt.beta1) << '\n'
       << "beta2           " << exact_and_decimal(pt.beta2) << '\n'
       << "cooperative_msr " << exact_and_decimal(cooperative) << "  (at alpha = B/k)\n"
       << "individual_msr  " << exact_and_decimal(individual) << "  (at alpha = B/k, r = 1)\n"
       << "cut values at the optimum:\n";
    for (const auto& t : types) {
      const auto v = crgc::cut_value(t, at_opt);
      os << "  " << t.to_string() << "  " << exact_and_decimal(v)
         << (v == p.file_size ? "  tight" : "") << '\n';
    }
    emit(a.out, os.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string scenario;
  std::string format = "json";
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
};

int cmd_simulate(const SimulateArgs& a) {
  const auto bytes = crgc::read_file(a.scenario);
  auto scenario = crgc::parse_scenario(std::string(bytes.begin(), bytes.end()));
  if (a.seed) scenario.seed = *a.seed;
  const auto report = crgc::run_scenario(scenario);
  emit(a.out, a.format == "csv" ? crgc::report_csv(report) : crgc::report_json(report));
  if (!report.all_verified()) throw IntegrityFailure{"post-repair reconstruction check failed"};
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative regenerating codes: encode, repair and bound tools"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Split a file into n share files");
  encode->add_option("file", enc.input, "Input file")->required();
  encode->add_option("--n", enc.n, "Number of storage nodes")->required();
  encode->add_option("--k", enc.k, "Nodes needed to reconstruct (also the helper count)")->required();
  encode->add_option("--r", enc.r, "Newcomers repaired together")->required();
  encode->add_option("--field", enc.field, "auto, gf256 or gf65536")
      ->check(CLI::IsMember({"auto", "gf256", "gf65536"}));
  encode->add_flag("--lossy", enc.lossy, "Reduce byte groups that are not field elements");
  encode->add_option("--out", enc.out, "Output directory")->required();

  ReconstructArgs rec;
  auto* reconstruct = app.add_subcommand("reconstruct", "Rebuild a file from k share files");
  reconstruct->add_option("shares", rec.shares, "Share files")->required();
  reconstruct->add_option("--out", rec.out, "Output file")->required();

  RepairArgs rep;
  auto* repair = app.add_subcommand("repair", "Regenerate failed shares cooperatively");
  repair->add_option("dir", rep.dir, "Directory of surviving share files")->required()
      ->check(CLI::ExistingDirectory);
  repair->add_option("--failed", rep.failed, "Comma-separated failed node indices")->required();
  repair->add_option("--out", rep.out, "Output directory")->required();
  repair->add_option("--transcript", rep.transcript, "Write the transfer transcript here");
  repair->add_option("--policy", rep.policy, "Helper choice: lowest, round-robin or seeded")
      ->check(CLI::IsMember({"lowest", "round-robin", "seeded"}));
  repair->add_option("--seed", rep.seed, "Seed for the seeded helper policy");

  BoundArgs bnd;
  auto* bound = app.add_subcommand("bound", "Minimum repair bandwidth from the cut-set bound");
  bound->add_option("--k", bnd.k, "Reconstruction degree")->required();
  bound->add_option("--d", bnd.d, "Helpers per newcomer (defaults to k)");
  bound->add_option("--r", bnd.r, "Newcomers repaired together")->required();
  bound->add_option("--B", bnd.file_size, "File size (rational)")->required();
  auto* alpha = bound->add_option("--alpha", bnd.alpha, "Storage per node (rational)");
  auto* grid = bound->add_option("--alpha-grid", bnd.alpha_grid,
                                 "Comma list or start:stop:step of alpha values");
  alpha->excludes(grid);
  grid->excludes(alpha);
  bound->add_option("--format", bnd.format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  bound->add_option("--out", bnd.out, "Output file (stdout when omitted)");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a cluster failure scenario");
  simulate->add_option("scenario", sim.scenario, "Scenario file")->required();
  simulate->add_option("--format", sim.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  simulate->add_option("--out", sim.out, "Output file (stdout when omitted)");
  simulate->add_option("--seed", sim.seed, "Override the scenario seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*encode) return cmd_encode(enc);
    if (*reconstruct) return cmd_reconstruct(rec);
    if (*repair) return cmd_repair(rep);
    if (*bound) {
      if (!bnd.alpha && !bnd.alpha_grid) {
        std::cerr << "error: bound needs --alpha or --alpha-grid\n";
        return kExitUsage;
      }
      return cmd_bound(bnd);
    }
    if (*simulate) return cmd_simulate(sim);
  } catch (const IntegrityFailure& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitIntegrity;
  } catch (const crgc::IntegrityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const crgc::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const crgc::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
