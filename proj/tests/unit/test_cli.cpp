// Copyright 2026 The combcert Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "combcert/json_io.hpp"
#include "combcert/report.hpp"

namespace combcert {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("combcert_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "combcert");
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& body) const {
    std::ofstream(dir_ / name) << body;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

// Small hard-suite configuration so the in-process runs stay fast.
constexpr const char* kSmallHard = R"({"hard": {
  "comb_cells": [{"d1": 1, "d2": 2}], "n_max": 1, "mc_samples": 1000,
  "domination_d2": [2], "epsilons": [0.05], "domination_n_max": 1,
  "u_samples": 3, "trace_trials": 2, "trace_max_d": 2,
  "span_max_d": 1, "span_max_n": 1, "quadratic_trials": 5}})";

TEST_F(Cli, CombsPassWritesReport) {
  EXPECT_EQ(run({"verify-combs", "--out", dir_.string()}), cli::kPass) << err_.str();
  const Json j = read_json_file(path("combs_report.json"));
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("suite"), "combs");
}

TEST_F(Cli, ImpossibleToleranceFails) {
  EXPECT_EQ(run({"verify", "--suite", "combs", "--tol", "1e-30", "--out", dir_.string()}),
            cli::kCheckFailed);
  EXPECT_NE(out_.str().find("FAIL"), std::string::npos);
}

TEST_F(Cli, MalformedConfigIsBadInput) {
  write("bad.json", "{ not json");
  EXPECT_EQ(run({"verify-combs", "--config", path("bad.json"), "--out", dir_.string()}), cli::kBadInput);
  EXPECT_EQ(run({"verify-combs", "--config", path("missing.json")}), cli::kBadInput);
  EXPECT_EQ(run({"verify", "--suite", "everything"}), cli::kBadInput);
  EXPECT_EQ(run({"verify-combs", "--seed", "minus-one"}), cli::kBadInput);
  EXPECT_EQ(run({}), cli::kBadInput);
}

TEST_F(Cli, TamperedScheduleFailsDomination) {
  write("cfg.json", kSmallHard);
  EXPECT_EQ(run({"verify-hard", "--config", path("cfg.json"), "--out", dir_.string()}), cli::kPass)
      << out_.str() << err_.str();
  EXPECT_EQ(run({"verify-hard", "--config", path("cfg.json"), "--tamper-lambda", "1e-6", "--out",
                 dir_.string()}),
            cli::kCheckFailed);
  EXPECT_NE(out_.str().find("domination/"), std::string::npos);
}

TEST_F(Cli, InadmissibleNetCell) {
  // Explicit odd mode with r(d2−1) ≥ 2d1 is rejected up front.
  EXPECT_EQ(run({"verify-net", "--cell", "2,3,3,odd", "--out", dir_.string()}), cli::kBadInput);
  EXPECT_EQ(run({"verify-net", "--cell", "2,3", "--out", dir_.string()}), cli::kBadInput);
  // In auto mode the same cell resolves to the even construction.
  EXPECT_EQ(run({"verify-net", "--cell", "2,3,3", "--samples", "1000", "--out", dir_.string()}), cli::kPass)
      << out_.str();
}

TEST_F(Cli, StrictTurnsSkipsIntoFailures) {
  // ε = 0.05 is outside the range of the 0.07ε separation bound → skipped.
  const std::vector<std::string> base{"verify-net", "--cell", "2,4,2", "--epsilon", "0.05",
                                      "--out", dir_.string()};
  EXPECT_EQ(run(base), cli::kPass) << out_.str();
  auto strict = base;
  strict.push_back("--strict");
  EXPECT_EQ(run(strict), cli::kCheckFailed);
}

TEST_F(Cli, ReportMerge) {
  ASSERT_EQ(run({"verify-combs", "--out", dir_.string()}), cli::kPass);
  const std::string good = path("combs_report.json");
  EXPECT_EQ(run({"report-merge", good, "--out", dir_.string()}), cli::kPass);
  const Json m = read_json_file(path("merged_report.json"));
  EXPECT_EQ(m.at("suites").size(), 1u);

  ASSERT_EQ(run({"verify-combs", "--tol", "1e-30", "--out", (dir_ / "f").string()}), cli::kCheckFailed);
  EXPECT_EQ(run({"report-merge", good, path("f/combs_report.json"), "--out", dir_.string()}),
            cli::kCheckFailed);

  EXPECT_EQ(run({"report-merge", "--out", dir_.string()}), cli::kBadInput);
  EXPECT_EQ(run({"report-merge", path("nope.json")}), cli::kBadInput);
  write("junk.json", "[1,2,3]");
  EXPECT_EQ(run({"report-merge", path("junk.json")}), cli::kBadInput);
}

TEST_F(Cli, SeedOverrideChangesReport) {
  ASSERT_EQ(run({"verify-combs", "--seed", "5", "--out", (dir_ / "a").string()}), cli::kPass);
  ASSERT_EQ(run({"verify-combs", "--seed", "5", "--jobs", "2", "--out", (dir_ / "b").string()}), cli::kPass);
  ASSERT_EQ(run({"verify-combs", "--seed", "6", "--out", (dir_ / "c").string()}), cli::kPass);
  const auto body = [&](const char* sub) {
    return strip_timing(read_json_file(path(std::string(sub) + "/combs_report.json"))).dump();
  };
  EXPECT_EQ(body("a"), body("b"));
  EXPECT_NE(body("a"), body("c"));
}

}  // namespace
}  // namespace combcert
