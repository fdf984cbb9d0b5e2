// Copyright 2026 The rwrs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include "json.hpp"

namespace rwrs::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rwrs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rwrs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

TEST_F(CliTest, RangeWritesOneRowPerTrial) {
  const Result r = invoke({"range", "--alpha", "2", "--laziness", "0.5", "--n", "2000", "--trials",
                           "40", "--seed", "42", "--no-reference", "--out", path("r.csv")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto lines = data_lines(slurp(path("r.csv")));
  ASSERT_EQ(lines.size(), 41U);
  EXPECT_EQ(lines[0], "trial,sample");
  const auto summary = nlohmann::json::parse(r.out);
  for (const char* key : {"mean", "median", "sd", "n_samples", "config_digest", "seed"}) {
    EXPECT_TRUE(summary.contains(key)) << key;
  }
  EXPECT_EQ(summary["n_samples"], 40);
  EXPECT_EQ(summary["seed"], 42);
}

TEST_F(CliTest, ByteIdenticalReruns) {
  const std::vector<std::string> args{"complexity", "--alpha", "1.5", "--n", "3000", "--trials",
                                      "30", "--eps", "0.1,0.3", "--seed", "7"};
  auto a = args;
  a.insert(a.end(), {"--out", path("a.csv")});
  auto b = args;
  b.insert(b.end(), {"--out", path("b.csv")});
  ASSERT_EQ(invoke(a).code, kOk);
  ASSERT_EQ(invoke(b).code, kOk);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, ManifestRoundTrip) {
  const Result r = invoke({"localtime", "--n", "2000", "--trials", "10", "--interval", "-0.5,0.5",
                          "--seed", "3", "--out", path("l.csv"), "--summary", path("l.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::ifstream csv(path("l.csv"));
  const auto m = parse_manifest(csv);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->subcommand, "localtime");
  EXPECT_EQ(m->master_seed, 3U);
  EXPECT_EQ(m->tool_version, tool_version());
  const auto summary = nlohmann::json::parse(slurp(path("l.json")));
  EXPECT_EQ(summary["config_digest"], format_digest(m->config_digest));
  EXPECT_EQ(summary["config"], m->config);
}

TEST(Manifest, RejectsIncompleteHeaders) {
  std::istringstream missing("# rwrs 1.0\n# subcommand: range\n# seed: 4\ntrial,sample\n");
  EXPECT_FALSE(parse_manifest(missing).has_value());
  std::istringstream bad_digest(
      "# rwrs 1.0\n# subcommand: range\n# config: x\n# config_digest: zz\n# seed: 4\n");
  EXPECT_FALSE(parse_manifest(bad_digest).has_value());
  RunManifest m{"1.0", "edim", "a=b", 0xabcULL, 12, {}, 0.0};
  std::istringstream good(csv_header(m) + "n,value\n");
  const auto parsed = parse_manifest(good);
  ASSERT_TRUE(parsed.has_value());
  EXPECT_EQ(parsed->config_digest, 0xabcULL);
  EXPECT_EQ(format_digest(0xabcULL), "0000000000000abc");
}

TEST(Usage, RejectsBadAlpha) {
  EXPECT_EQ(invoke({"range", "--alpha", "1.0", "--n", "100", "--trials", "2"}).code, kUsage);
  EXPECT_EQ(invoke({"range", "--alpha", "2.5", "--n", "100", "--trials", "2"}).code, kUsage);
}

TEST(Usage, RejectsMissingOrUnknownSubcommand) {
  const Result none = invoke({});
  EXPECT_EQ(none.code, kUsage);
  EXPECT_NE(none.err.find("Usage"), std::string::npos);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
  EXPECT_EQ(invoke({"range", "--trials", "0"}).code, kUsage);
  EXPECT_EQ(invoke({"complexity", "--eps", "1.5", "--n", "100", "--trials", "2"}).code, kUsage);
}

TEST(Usage, HelpAndVersion) {
  EXPECT_EQ(invoke({"--help"}).code, kOk);
  const Result v = invoke({"--version"});
  EXPECT_EQ(v.code, kOk);
  EXPECT_EQ(v.out, tool_version() + "\n");
}

TEST_F(CliTest, UnwritableOutputIsIoError) {
  EXPECT_EQ(invoke({"range", "--n", "100", "--trials", "2", "--no-reference", "--out",
                    path("missing/dir/r.csv")})
                .code,
            kIo);
}

TEST_F(CliTest, ConfigFilePrecedence) {
  {
    std::ofstream cfg(path("run.ini"));
    cfg << "# sweep defaults\nn = 1500\ntrials = 12\nseed = 99\n";
  }
  const Result from_file = invoke({"range", "--config", path("run.ini"), "--no-reference"});
  ASSERT_EQ(from_file.code, kOk) << from_file.err;
  auto summary = nlohmann::json::parse(from_file.out);
  EXPECT_EQ(summary["n_samples"], 12);
  EXPECT_EQ(summary["seed"], 99);

  const Result flag_wins =
      invoke({"range", "--config", path("run.ini"), "--trials", "5", "--no-reference"});
  ASSERT_EQ(flag_wins.code, kOk) << flag_wins.err;
  summary = nlohmann::json::parse(flag_wins.out);
  EXPECT_EQ(summary["n_samples"], 5);
  EXPECT_EQ(summary["seed"], 99);
}

TEST_F(CliTest, SmalltestPasses) {
  const Result r = invoke({"smalltest", "--instances", "40", "--seed", "5", "--out", path("s.csv")});
  EXPECT_EQ(r.code, kOk) << r.err;
  const auto summary = nlohmann::json::parse(r.out);
  EXPECT_EQ(summary["failures"], 0);
  EXPECT_EQ(summary["n_samples"], 40);
  EXPECT_EQ(data_lines(slurp(path("s.csv"))).size(), 1U);
}

TEST_F(CliTest, EdimReportsSlope) {
  const Result r = invoke({"edim", "--n-grid", "256,512,1024,2048,8192", "--trials", "20",
                           "--eps", "0.1", "--out", path("e.csv")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto summary = nlohmann::json::parse(r.out);
  EXPECT_TRUE(summary.contains("slope"));
  EXPECT_NEAR(summary["slope"].get<double>(), 0.5, 0.1);
}

TEST_F(CliTest, ReferenceAndLemma4Run) {
  EXPECT_EQ(invoke({"reference", "--steps", "10000", "--trials", "20", "--out", path("ref.csv")}).code,
            kOk);
  EXPECT_EQ(invoke({"reference", "--alpha", "1.5", "--steps", "10000", "--trials", "20"}).code, kOk);
  const Result r = invoke({"lemma4", "--n", "5000", "--trials", "30", "--threshold", "0.5",
                           "--out", path("l4.csv")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto summary = nlohmann::json::parse(r.out);
  EXPECT_GE(summary["coverage"].get<double>(), 0.0);
  EXPECT_LE(summary["coverage"].get<double>(), 1.0);
}

}  // namespace
}  // namespace rwrs::cli
