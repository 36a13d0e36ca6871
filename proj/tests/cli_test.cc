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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

#include "json.hpp"

#include "crgc/share_format.h"

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("crgc_cli_test_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the tool with stdout captured into `stdout_text`; returns the exit code.
  int run(const std::string& args) {
    const auto out = dir_ / "stdout.txt";
    const std::string cmd = std::string(CRGC_CLI_PATH) + " " + args + " > '" + out.string() +
                            "' 2> '" + (dir_ / "stderr.txt").string() + "'";
    const int status = std::system(cmd.c_str());
    stdout_text = slurp(out);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  fs::path write_random(const std::string& name, std::size_t size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bytes(size);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    crgc::write_file(dir_ / name, bytes);
    return dir_ / name;
  }

  std::string path(const std::string& name) const { return "'" + (dir_ / name).string() + "'"; }

  fs::path dir_;
  std::string stdout_text;
};

TEST_F(CliTest, EncodeReconstructRoundTrip) {
  const auto input = write_random("in.bin", 1024, 1);
  ASSERT_EQ(run("encode " + input.string() + " --n 6 --k 3 --r 2 --field gf256 --out " +
                path("shares")),
            0);
  for (int j = 1; j <= 6; ++j) {
    const auto share = dir_ / "shares" / ("node_" + std::to_string(j) + ".crgc");
    ASSERT_TRUE(fs::exists(share));
    // 1024 bytes in 6-symbol stripes: 171 stripes of 2 symbols per node, plus
    // a 46-byte header (8 modulus bytes), 6 points and the checksum.
    EXPECT_EQ(fs::file_size(share), 46u + 6 + 171 * 2 + 4);
  }
  const auto manifest = slurp(dir_ / "shares" / "manifest.txt");
  EXPECT_NE(manifest.find("node_6.crgc"), std::string::npos);

  ASSERT_EQ(run("reconstruct " + path("shares/node_2.crgc") + " " + path("shares/node_5.crgc") +
                " " + path("shares/node_6.crgc") + " --out " + path("out.bin")),
            0);
  EXPECT_EQ(slurp(dir_ / "out.bin"), slurp(input));
}

TEST_F(CliTest, EncodeIsIdempotent) {
  const auto input = write_random("in.bin", 300, 2);
  ASSERT_EQ(run("encode " + input.string() + " --n 5 --k 2 --r 2 --field gf65536 --out " + path("a")), 0);
  ASSERT_EQ(run("encode " + input.string() + " --n 5 --k 2 --r 2 --field gf65536 --out " + path("b")), 0);
  for (int j = 1; j <= 5; ++j) {
    const std::string name = "node_" + std::to_string(j) + ".crgc";
    EXPECT_EQ(slurp(dir_ / "a" / name), slurp(dir_ / "b" / name));
  }
}

TEST_F(CliTest, EmptyFile) {
  crgc::write_file(dir_ / "empty.bin", {});
  ASSERT_EQ(run("encode " + path("empty.bin") + " --n 4 --k 2 --r 2 --field gf256 --out " + path("s")), 0);
  const auto parsed = crgc::parse_share(crgc::read_file(dir_ / "s" / "node_1.crgc"));
  EXPECT_EQ(parsed.share.stripe_count, 0u);
  ASSERT_EQ(run("reconstruct " + path("s/node_3.crgc") + " " + path("s/node_4.crgc") + " --out " +
                path("out.bin")),
            0);
  EXPECT_EQ(fs::file_size(dir_ / "out.bin"), 0u);
}

TEST_F(CliTest, FourNodeDimensions) {
  const auto input = write_random("in.bin", 4, 3);
  ASSERT_EQ(run("encode " + input.string() + " --n 4 --k 2 --r 2 --field gf256 --out " + path("s")), 0);
  const auto parsed = crgc::parse_share(crgc::read_file(dir_ / "s" / "node_3.crgc"));
  EXPECT_EQ(parsed.share.stripe_count, 1u);
  EXPECT_EQ(parsed.share.symbols.size(), 2u);
}

TEST_F(CliTest, ExitCodes) {
  const auto input = write_random("in.bin", 200, 4);
  // Invalid parameters: k > n - r.
  EXPECT_EQ(run("encode " + input.string() + " --n 4 --k 3 --r 2 --out " + path("s")), 4);
  // Bytes that are not GF(4) elements under strict mapping.
  EXPECT_EQ(run("encode " + input.string() + " --n 4 --k 2 --r 2 --out " + path("s")), 2);
  // Missing required flag.
  EXPECT_EQ(run("encode " + input.string() + " --n 4 --k 2"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  // Missing input file.
  EXPECT_EQ(run("encode " + path("nope.bin") + " --n 4 --k 2 --r 2 --out " + path("s")), 1);

  ASSERT_EQ(run("encode " + input.string() + " --n 5 --k 2 --r 2 --field gf256 --out " + path("s")), 0);
  auto bytes = crgc::read_file(dir_ / "s" / "node_1.crgc");
  bytes[bytes.size() / 2] ^= 0x40;
  crgc::write_file(dir_ / "s" / "node_1.crgc", bytes);
  EXPECT_EQ(run("reconstruct " + path("s/node_1.crgc") + " " + path("s/node_2.crgc") + " --out " +
                path("out.bin")),
            3);
  EXPECT_EQ(run("reconstruct " + path("s/node_2.crgc") + " --out " + path("out.bin")), 4);
  EXPECT_EQ(run("reconstruct " + path("s/node_2.crgc") + " " + path("s/node_3.crgc") + " " +
                path("s/node_4.crgc") + " --out " + path("out.bin")),
            2);
}

TEST_F(CliTest, RepairRestoresSharesAndReportsBandwidth) {
  // 84 symbols over GF(256) with k = 4, r = 3: seven stripes.
  const auto input = write_random("in.bin", 84, 5);
  ASSERT_EQ(run("encode " + input.string() + " --n 7 --k 4 --r 3 --field gf256 --out " + path("s")), 0);
  fs::create_directories(dir_ / "alive");
  for (int j : {1, 3, 5, 7}) {
    const std::string name = "node_" + std::to_string(j) + ".crgc";
    fs::copy_file(dir_ / "s" / name, dir_ / "alive" / name);
  }
  ASSERT_EQ(run("repair " + path("alive") + " --failed 2,4,6 --out " + path("fixed") +
                " --transcript " + path("t.csv")),
            0);
  for (int j : {2, 4, 6}) {
    const std::string name = "node_" + std::to_string(j) + ".crgc";
    EXPECT_EQ(slurp(dir_ / "fixed" / name), slurp(dir_ / "s" / name));
    EXPECT_NE(stdout_text.find("node " + std::to_string(j) + ": phase1=28 phase2=14 total=42"),
              std::string::npos)
        << stdout_text;
  }
  const auto transcript = slurp(dir_ / "t.csv");
  std::istringstream lines(transcript);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "phase,from,to,stripe,symbol_hex");
  std::size_t records = 0;
  while (std::getline(lines, line)) ++records;
  EXPECT_EQ(records, 3u * 42);

  // Too few survivors.
  fs::remove(dir_ / "alive" / "node_1.crgc");
  EXPECT_EQ(run("repair " + path("alive") + " --failed 2,4,6 --out " + path("fixed2")), 4);
  // Too many failures for one batch.
  EXPECT_EQ(run("repair " + path("s") + " --failed 1,2,3,4 --out " + path("fixed3")), 4);
}

TEST_F(CliTest, RepairSingleNode) {
  const auto input = write_random("in.bin", 50, 6);
  ASSERT_EQ(run("encode " + input.string() + " --n 5 --k 2 --r 1 --field gf256 --out " + path("s")), 0);
  fs::remove(dir_ / "s" / "node_3.crgc");
  ASSERT_EQ(run("repair " + path("s") + " --failed 3 --out " + path("fixed")), 0);
  ASSERT_EQ(run("encode " + input.string() + " --n 5 --k 2 --r 1 --field gf256 --out " + path("ref")), 0);
  EXPECT_EQ(slurp(dir_ / "fixed" / "node_3.crgc"), slurp(dir_ / "ref" / "node_3.crgc"));
}

TEST_F(CliTest, Bound) {
  ASSERT_EQ(run("bound --k 2 --r 2 --B 4 --alpha 2"), 0);
  EXPECT_NE(stdout_text.find("gamma_star      3 (3.000000)"), std::string::npos) << stdout_text;
  ASSERT_EQ(run("bound --k 4 --d 4 --r 3 --B 84 --alpha 21 --format json"), 0);
  const auto j = nlohmann::json::parse(stdout_text);
  EXPECT_EQ(j["gamma_star"]["exact"], "42");
  EXPECT_EQ(j["cooperative_msr"]["exact"], "42");
  EXPECT_EQ(j["individual_msr"]["exact"], "84");
  EXPECT_EQ(j["cuts"].size(), 31u);

  ASSERT_EQ(run("bound --k 4 --r 3 --B 84 --alpha-grid 21:24:1 --format csv"), 0);
  EXPECT_EQ(stdout_text.substr(0, stdout_text.find('\n')),
            "alpha,gamma_star,beta1,beta2,gamma_star_decimal");
  EXPECT_NE(stdout_text.find("\n21,42,"), std::string::npos);

  EXPECT_EQ(run("bound --k 4 --r 3 --B 84 --alpha 20"), 4);
  EXPECT_EQ(run("bound --k 4 --r 3 --B 84 --alpha 21 --alpha-grid 21,22"), 2);
  EXPECT_EQ(run("bound --k 4 --r 3 --B 84"), 2);
  EXPECT_EQ(run("bound --k 4 --r 3 --B x --alpha 21"), 2);
}

TEST_F(CliTest, Simulate) {
  {
    std::ofstream sc(dir_ / "seven.scn");
    sc << "n=7\nk=4\nr=3\nB_symbols=84\nseed=1\nstrategy=all\n";
  }
  ASSERT_EQ(run("simulate " + path("seven.scn")), 0);
  const auto j = nlohmann::json::parse(stdout_text);
  const auto& s = j["epochs"][0]["strategies"];
  EXPECT_EQ(s[0]["per_newcomer_symbols"]["exact"], "84");
  EXPECT_EQ(s[1]["per_newcomer_symbols"]["exact"], "154/3");
  EXPECT_EQ(s[2]["per_newcomer_symbols"]["exact"], "42");
  const std::string first = stdout_text;
  ASSERT_EQ(run("simulate " + path("seven.scn")), 0);
  EXPECT_EQ(stdout_text, first);

  ASSERT_EQ(run("simulate " + path("seven.scn") + " --format csv --out " + path("r.csv")), 0);
  EXPECT_EQ(slurp(dir_ / "r.csv").substr(0, 5), "epoch");

  {
    std::ofstream sc(dir_ / "zero.scn");
    sc << "n=5\nk=2\nr=2\nB_symbols=8\nepochs=0\n";
  }
  ASSERT_EQ(run("simulate " + path("zero.scn") + " --format csv"), 0);
  EXPECT_EQ(stdout_text, "epoch,strategy,newcomer,phase1_symbols,phase2_symbols,total_bytes\n");

  {
    std::ofstream sc(dir_ / "bad.scn");
    sc << "n=5\nk=2\nwhat=1\n";
  }
  EXPECT_EQ(run("simulate " + path("bad.scn")), 2);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("line 3"), std::string::npos);
}

}  // namespace
