// Copyright 2026 The galloc Authors.
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

// Runs the command-line tool as a subprocess.

#include <sys/wait.h>
#include <unistd.h>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "galloc/genrand.h"
#include "galloc/io.h"
#include "test_util.h"

namespace galloc {
namespace {

using ::testing::HasSubstr;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr together.
};

RunResult RunCli(const std::string& args) {
  const std::string command = std::string(GALLOC_CLI_PATH) + " " + args +
                              " 2>&1";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, n);
  }
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("galloc_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Write(const std::string& name, const Json& json) {
    const std::string path = (dir_ / name).string();
    std::ofstream(path) << json.dump(2);
    return path;
  }
  std::string WriteInstance(const std::string& name,
                            const Instance& instance) {
    return Write(name, InstanceToJson(instance));
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, SolveMinimum) {
  const Instance instance = MakeAppendixInstance(4);
  const std::string path = WriteInstance("a4.json", instance);
  const RunResult result = RunCli("solve " + path + " --mode min");
  ASSERT_EQ(result.exit_code, 0) << result.output;
  const Json json = ParseJson(result.output);
  EXPECT_TRUE(json["stable"].get<bool>());
  EXPECT_EQ(AssignmentFromJson(instance, json),
            testing::AlternatingPoint(instance, 4, 0));
  EXPECT_EQ(json["report"]["instance_digest"].get<std::string>(),
            InstanceDigest(instance));
}

TEST_F(CliTest, SolveMaximumWithVerification) {
  const Instance instance = ValidateInstance(testing::CycleRaw());
  const std::string path = WriteInstance("cycle.json", instance);
  const RunResult result = RunCli("solve " + path + " --mode max --verify");
  ASSERT_EQ(result.exit_code, 0) << result.output;
  EXPECT_TRUE(ParseJson(result.output)["stable"].get<bool>());
}

TEST_F(CliTest, PosetRefusesGapViolation) {
  const std::string path = WriteInstance("a4.json", MakeAppendixInstance(4));
  const RunResult refused = RunCli("poset " + path + " --dot");
  EXPECT_EQ(refused.exit_code, 1);
  EXPECT_THAT(refused.output, HasSubstr("gapless"));
  const RunResult general = RunCli("poset " + path + " --dot --general");
  ASSERT_EQ(general.exit_code, 0) << general.output;
  EXPECT_THAT(general.output, HasSubstr("digraph"));
}

TEST_F(CliTest, BruteRefusesOversizedBox) {
  const std::string path = WriteInstance("a4.json", MakeAppendixInstance(4));
  const RunResult result = RunCli("brute " + path + " --limit 100");
  EXPECT_EQ(result.exit_code, 1);
  EXPECT_THAT(result.output, HasSubstr("enumeration limit exceeded"));
  const RunResult ok = RunCli("brute " + path);
  EXPECT_EQ(ok.exit_code, 0) << ok.output;
}

TEST_F(CliTest, GenIsDeterministic) {
  const std::string args =
      "gen --seed 17 --workers 3 --firms 3 --family mixed --opposed";
  const RunResult a = RunCli(args);
  const RunResult b = RunCli(args);
  ASSERT_EQ(a.exit_code, 0) << a.output;
  EXPECT_EQ(a.output, b.output);
  EXPECT_NO_THROW(InstanceFromJson(ParseJson(a.output)));
  EXPECT_EQ(RunCli("gen --appendix 3").exit_code, 1);
}

TEST_F(CliTest, CheckReportsBlockingEdges) {
  const std::string instance =
      WriteInstance("a4.json", MakeAppendixInstance(4));
  const std::string zero = Write("zero.json", Json::object());
  const RunResult result = RunCli("check " + instance + " " + zero);
  ASSERT_EQ(result.exit_code, 0) << result.output;
  const Json json = ParseJson(result.output);
  EXPECT_FALSE(json["stable"].get<bool>());
  EXPECT_EQ(json["blocking_edges"].size(), 9u);
}

TEST_F(CliTest, MinCostAndRoute) {
  const Instance instance = ValidateInstance(testing::TwoSwapsRaw());
  const std::string path = WriteInstance("swaps.json", instance);
  Json costs = Json::object();
  for (EdgeIndex e = 0; e < instance.num_edges(); ++e) {
    costs[instance.edge(e).id] = 0;
  }
  const std::string cost_path = Write("costs.json", costs);
  const RunResult mincost = RunCli("mincost " + path + " " + cost_path);
  ASSERT_EQ(mincost.exit_code, 0) << mincost.output;
  const RunResult route = RunCli("route " + path + " --tie-break largest");
  ASSERT_EQ(route.exit_code, 0) << route.output;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli("").exit_code, 1);
  EXPECT_EQ(RunCli("frobnicate").exit_code, 1);
  EXPECT_EQ(RunCli("solve /nonexistent.json").exit_code, 1);
  const RunResult bad = RunCli("solve " + Write("bad.json", Json::array()));
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_THAT(bad.output, HasSubstr("error"));
}

}  // namespace
}  // namespace galloc
