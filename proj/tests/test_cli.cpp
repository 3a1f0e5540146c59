// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

using json = nlohmann::json;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(WEYLSG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t k = fread(buf.data(), 1, buf.size(), f)) out.append(buf.data(), k);
  const int status = pclose(f);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json run_json(const std::string& args, int expect = 0) {
  const auto r = run(args);
  EXPECT_EQ(r.code, expect) << args;
  return json::parse(r.out);
}

TEST(Cli, CounterexampleIsAccessible) {
  const auto j = run_json("accessible --n 3 --p 0.875,0.1,0.025,0,0,0,0,0,0");
  EXPECT_TRUE(j["accessible"].get<bool>());
  EXPECT_EQ(j["reason"], "OK");
  EXPECT_EQ(j["t"].size(), 9u);
  // field order is part of the output contract
  const auto raw = run("accessible --n 3 --p 0.875,0.1,0.025,0,0,0,0,0,0").out;
  EXPECT_LT(raw.find("\"accessible\""), raw.find("\"reason\""));
  EXPECT_LT(raw.find("\"reason\""), raw.find("\"t\""));
  EXPECT_LT(raw.find("\"M\""), raw.find("\"residual\""));
}

TEST(Cli, JarlskogOfDilatedTransition) {
  const std::string path = ::testing::TempDir() + "/transition.json";
  std::ofstream(path) << R"({"matrix": [[0.8333333333333333, 0.16666666666666666, 0],
                                        [0.16666666666666666, 0.5, 0.3333333333333333],
                                        [0, 0.3333333333333333, 0.6666666666666666]]})";
  const auto j = run_json("jarlskog --input " + path);
  EXPECT_NEAR(j["Q"].get<double>(), -1.0 / 324, 1e-12);
  const auto flat = run_json("jarlskog --b 0.3333333333333333,0.3333333333333333,0.3333333333333333,0.3333333333333333");
  EXPECT_NEAR(flat["Q"].get<double>(), 1.0 / 27, 1e-12);
}

TEST(Cli, SchurMatrixIsNotEmbeddable) {
  const auto j = run_json("embed --q 0,0.5,0.5");
  EXPECT_FALSE(j["accessible"].get<bool>());
  EXPECT_EQ(j["reason"], "NegativeTime");
}

TEST(Cli, DecohereThenEmbedRoundTrip) {
  // the X face, so the shadow is not trivial
  const auto t = run_json("decohere --n 3 --p 0.875,0,0,0.1,0,0,0.025,0,0");
  ASSERT_NEAR(t["q"][1].get<double>(), 0.1, 1e-15);
  const std::string path = ::testing::TempDir() + "/shadow.json";
  std::ofstream(path) << t.dump();
  const auto e = run_json("embed --input " + path);
  EXPECT_TRUE(e["accessible"].get<bool>());
}

TEST(Cli, StarCounterexample) {
  const auto j = run_json("star --p 0.875,0.1,0.025");
  EXPECT_FALSE(j["hypocycloid"].get<bool>());
  EXPECT_FALSE(j["star"].get<bool>());
  EXPECT_TRUE(j.contains("Q"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("accessible --n 3 --p 0.5,0.5").code, 1);
  EXPECT_EQ(run("accessible --n 2 --p 0.5,0.6,0,0").code, 1);
  EXPECT_EQ(run("nosuch").code, 1);
  // a negative eigenvalue on a self-conjugate index has no real logarithm
  EXPECT_EQ(run("accessible --n 2 --p 0.1,0.9,0,0").code, 2);
  EXPECT_EQ(run("volume --n 2 --samples 10").code, 1);
}

TEST(Cli, VolumeRecordsItsSeed) {
  const auto j = run_json("--seed 5 volume --n 2 --samples 10000");
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["meta"]["seed"], 5);
  EXPECT_EQ(j["meta"]["samples"], 10000);
  EXPECT_TRUE(j["meta"].contains("version"));
  const auto again = run_json("--seed 5 volume --n 2 --samples 10000");
  EXPECT_EQ(j["hits"], again["hits"]);
}

TEST(Cli, EmittersWriteSidecars) {
  const std::string path = ::testing::TempDir() + "/spiral.csv";
  ASSERT_EQ(run("--format csv -o " + path + " spiral --n 3 --points 5").code, 0);
  std::ifstream f(path);
  std::string line;
  int lines = 0;
  while (std::getline(f, line)) ++lines;
  EXPECT_EQ(lines, 11);
  std::ifstream m(path + ".meta.json");
  ASSERT_TRUE(m.good());
  const auto meta = json::parse(m);
  EXPECT_EQ(meta["N"], 3);
  const std::string scan = ::testing::TempDir() + "/scan.csv";
  ASSERT_EQ(run("--format csv -o " + scan + " scan --face x --resolution 4").code, 0);
  std::ifstream s(scan);
  lines = 0;
  while (std::getline(s, line)) ++lines;
  EXPECT_EQ(lines, 17);
}

TEST(Cli, SpectrumOfCirculant) {
  const auto j = run_json("spectrum --q 0,0.5,0.5");
  ASSERT_EQ(j["xi"].size(), 3u);
  EXPECT_NEAR(j["xi"][1][0].get<double>(), -0.5, 1e-12);
}

}  // namespace
