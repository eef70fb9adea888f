// Copyright 2026 The qscissors Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qscissors::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) v.push_back(line);
  return v;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("qscissors_test_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

}  // namespace

TEST(Cli, BellCheckPrintsResolvedTable) {
  const Outcome o = run({"bell-check"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[0], "bell_state,click_b,click_c,norm,leakage,correction");
  EXPECT_EQ(l[1], "Psi+,1,0,1,0,identity");
  EXPECT_EQ(l[2], "Psi-,0,1,1,0,sigma_z");
  EXPECT_EQ(l[3].substr(0, 9), "Phi+,-,-,");
  EXPECT_EQ(l[4].substr(0, 9), "Phi-,-,-,");
}

TEST(Cli, PipelineWithHardwareFlagsEmitsOneRow) {
  const Outcome o = run({"pipeline", "--eta", "0.7", "--gamma", "0.02", "--drive", "1.0"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0].substr(0, 12), "eta,gamma,ra");
  EXPECT_EQ(l[1].substr(0, 13), "0.7,0.02,1,1,");
  EXPECT_NE(l[1].find("0.830728006588"), std::string::npos);
}

TEST(Cli, PipelineRunsAreByteIdentical) {
  const Outcome a = run({"pipeline", "--eta", "0.7", "--gamma", "0.02", "--ratio", "1"});
  const Outcome b = run({"pipeline", "--eta", "0.7", "--gamma", "0.02", "--ratio", "1"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ScissorsAndTeleportStageRows) {
  const Outcome s = run({"scissors", "--drive", "2"});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(lines(s.out).at(1).substr(0, 9), "scissors,");
  const Outcome t = run({"teleport", "--config-json", R"({"input": {"c0": 0.6, "c1": 0.8}})", "--clicks", "0", "1"});
  EXPECT_EQ(t.code, 0) << t.err;
  // Phase-flipped branch scored against the unflipped input: (0.36 - 0.64)^2.
  EXPECT_NE(lines(t.out).at(1).find(",0,1,0.0784,0.25,"), std::string::npos) << t.out;
}

TEST(Cli, ConfigErrorsExitWithTwo) {
  const Outcome bad_eta = run({"pipeline", "--eta", "1.3"});
  EXPECT_EQ(bad_eta.code, 2);
  EXPECT_NE(bad_eta.err.find("eta"), std::string::npos);
  EXPECT_EQ(run({"pipeline", "--config-json", R"({"bogus": 1})"}).code, 2);
  EXPECT_EQ(run({"sweep", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, SweepWithEmptyGridFileIsSchemaError) {
  const auto empty = temp_file("empty.json", "");
  EXPECT_EQ(run({"sweep", "--config", empty.string()}).code, 2);
  const auto empty_axis = temp_file("empty_axis.json", R"({"sweep": {"eta": []}})");
  const Outcome o = run({"sweep", "--config", empty_axis.string()});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("sweep.eta"), std::string::npos);
  std::filesystem::remove(empty);
  std::filesystem::remove(empty_axis);
}

TEST(Cli, SweepWritesCsvAndJsonFiles) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = dir / "qscissors_test_sweep.csv";
  const auto js = dir / "qscissors_test_sweep.json";
  const auto cfg = temp_file("sweep.json", R"({"sweep": {"eta": [0.7, 1.0], "gamma_bs": [0.02], "ratio": [1]}})");
  const Outcome o = run({"sweep", "--config", cfg.string(), "--out", csv.string(), "--json-out", js.string()});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream c(csv);
  std::stringstream cs;
  cs << c.rdbuf();
  EXPECT_EQ(lines(cs.str()).size(), 3u);
  std::ifstream j(js);
  const auto doc = nlohmann::json::parse(j);
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[1]["eta"], 1.0);
  std::filesystem::remove(csv);
  std::filesystem::remove(js);
  std::filesystem::remove(cfg);
}

TEST(Cli, SweepFlagsPinAxes) {
  const Outcome o = run({"sweep", "--eta", "1", "--gamma", "0.1", "--ratio", "1"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 2u);
  // oracle_out_of_range_16 is the 15th column.
  std::vector<std::string> cells;
  std::stringstream ss(l[1]);
  for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
  ASSERT_EQ(cells.size(), 19u);
  EXPECT_EQ(cells[14], "1");
}

TEST(Cli, ImpossiblePipelineOutcomeFails) {
  const Outcome o = run({"pipeline", "--clicks", "3", "0"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find(",1,0\n"), std::string::npos) << o.out;
}
