// Copyright 2026 The kuhncheat Authors.
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

// End-to-end tests of the command-line tool.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef KUHNCHEAT_CLI
#error "KUHNCHEAT_CLI must name the command-line binary"
#endif

namespace {

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scratch(const std::string& name) { return testing::TempDir() + "kuhncheat_cli_" + name; }

Invocation run(const std::string& args) {
  const std::string out = scratch("stdout"), err = scratch("stderr");
  const std::string cmd = std::string("'") + KUHNCHEAT_CLI + "' " + args + " >'" + out + "' 2>'" + err + "'";
  const int status = std::system(cmd.c_str());
  Invocation r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

TEST(Cli, SolveDefaultsToClassic) {
  const Invocation r = run("solve");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "variant: classic\n"));
  EXPECT_TRUE(contains(r.out, "value: -1/18 (-0.0555555555556)\n"));
  EXPECT_TRUE(contains(r.out, "exploitability: 0\n"));
}

TEST(Cli, SolveOneSided) {
  const Invocation r = run("solve --p 0 --q 1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "value: -1/9 "));
}

TEST(Cli, SolveMutualCatching) {
  const Invocation r = run("solve --p 1 --q 1 --r1 1 --r2 1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "variant: detection\n"));
  EXPECT_TRUE(contains(r.out, "value: 0 (0)\n"));
}

TEST(Cli, SolveAlgorithmsAgree) {
  const Invocation e = run("solve --p 1 --algo enum");
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_TRUE(contains(e.out, "method: normal-form\n"));
  EXPECT_TRUE(contains(e.out, "value: 1/9 "));
  const Invocation c = run("solve --algo cfr --iterations 20000");
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_TRUE(contains(c.out, "method: cfr\n"));
  EXPECT_TRUE(contains(c.out, "value: ~-0.05"));
}

TEST(Cli, SolveJsonReport) {
  const std::string path = scratch("report.json");
  const Invocation r = run("solve --p 0.9 --q 0.89 --out '" + path + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(slurp(path));
  EXPECT_EQ(doc["variant"], "cheating");
  EXPECT_EQ(doc["config"]["p"], "9/10");
  EXPECT_EQ(doc["config"]["q"], "89/100");
  EXPECT_EQ(doc["method"], "lp");
  EXPECT_EQ(doc["value_exact"], "0");
  EXPECT_EQ(doc["value_decimal"], "0");
  EXPECT_EQ(doc["exploitability"], "0");
  ASSERT_EQ(doc["breakdown"].size(), 6u);
  EXPECT_EQ(doc["breakdown"][0]["deal"], "KJ");
  EXPECT_FALSE(doc.contains("paper_discrepancy"));
  EXPECT_EQ(doc["strategy"].size(), 36u);  // peeking splits the cheater's infosets
}

TEST(Cli, EvalFairProfile) {
  const Invocation r = run("eval --a 1/6");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "value: -1/18 "));
  EXPECT_TRUE(contains(r.out, "exploitability: 0\n"));
  EXPECT_TRUE(contains(r.out, "  KJ p1=7/36 p2=0\n"));
}

TEST(Cli, NaiveReports) {
  Invocation r = run("naive --cheater 1 --a 0");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "value: 1/3 "));
  EXPECT_TRUE(contains(r.out, "published: 7/18 "));
  EXPECT_TRUE(contains(r.out, "paper_discrepancy: value published 7/18 computed 1/3\n"));

  const std::string path = scratch("naive.json");
  r = run("naive --cheater 2 --a 0 --out '" + path + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(slurp(path));
  EXPECT_EQ(doc["value_exact"], "-2/9");
  EXPECT_EQ(doc["published_value"], "-2/3");
  EXPECT_EQ(doc["paper_discrepancy"]["computed_value"], "-2/9");

  r = run("naive --cheater 2 --a 1/3");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "value: -2/9 "));
}

TEST(Cli, SweepCorners) {
  const Invocation r = run("sweep --mode cheat --n 2 --format csv");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "axis1,axis2,value_exact,value_decimal\n"
            "0,0,-1/18,-0.0555555555556\n"
            "0,1,-1/9,-0.111111111111\n"
            "1,0,1/9,0.111111111111\n"
            "1,1,0,0\n");
}

TEST(Cli, SweepToFileWithSummary) {
  const std::string path = scratch("detect.json");
  const Invocation r = run("sweep --mode detect --n 3 --format json --bilinear --out '" + path + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "cells: 9\n"));
  EXPECT_TRUE(contains(r.out, "monotonicity_violations: 0\n"));
  EXPECT_TRUE(contains(r.out, "bilinear_max_midpoint_deviation: "));
  EXPECT_EQ(nlohmann::json::parse(slurp(path)).size(), 9u);
}

TEST(Cli, StatsAndExport) {
  Invocation r = run("stats");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "nodes=55 chance_nodes=1 terminal_nodes=30 decision_nodes=24 infosets=12 "
            "infosets_p1=6 infosets_p2=6\n");

  const std::string efg = scratch("g.efg");
  r = run("export-efg --p 1 --q 1 --r1 0.5 --r2 0.5 --out '" + efg + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "");
  const Invocation from_file = run("stats --from '" + efg + "'");
  const Invocation direct = run("stats --p 1 --q 1 --r1 1/2 --r2 1/2");
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, direct.out);
  const auto nodes = std::stoul(from_file.out.substr(from_file.out.find('=') + 1));
  EXPECT_GE(nodes, 800u);
  EXPECT_LE(nodes, 1100u);

  const Invocation solved = run("solve --from '" + efg + "'");
  ASSERT_EQ(solved.code, 0) << solved.err;
  EXPECT_EQ(solved.out, run("solve --p 1 --q 1 --r1 1/2 --r2 1/2").out);
}

TEST(Cli, ByteDeterministic) {
  for (const std::string args : {"solve --p 1/2 --q 1/3 --r1 1/4", "eval --a 1/4", "naive --cheater 1",
                                 "sweep --n 3 --format json", "export-efg --p 1", "stats --q 1",
                                 "solve --algo cfr --iterations 500 --p 1"}) {
    const Invocation a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << args << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << args;
  }
  const std::string f1 = scratch("d1.json"), f2 = scratch("d2.json");
  run("solve --q 1 --out '" + f1 + "'");
  run("solve --q 1 --out '" + f2 + "'");
  EXPECT_EQ(slurp(f1), slurp(f2));
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const std::string args : {"", "frobnicate", "solve --p 2", "solve --p abc", "solve --algo simplex",
                                 "eval --a 1/2", "naive --cheater 3", "sweep --n 1",
                                 "sweep --mode spiral", "solve --bogus", "stats --r1 -1/2"}) {
    const Invocation r = run(args);
    EXPECT_EQ(r.code, 2) << "'" << args << "': " << r.out << r.err;
  }
}

TEST(Cli, HelpExitsZero) {
  const Invocation r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "solve"));
}

TEST(Cli, RuntimeFailuresExitOne) {
  EXPECT_EQ(run("stats --from /nonexistent/file.efg").code, 1);
  EXPECT_EQ(run("export-efg --out /nonexistent/dir/g.efg").code, 1);
  const std::string bad = scratch("bad.efg");
  std::ofstream(bad) << "EFG 2 R \"broken\" { \"A\" \"B\" }\n\"\"\nt \"\" 1 \"\" { 1 1 }\n";
  EXPECT_EQ(run("solve --from '" + bad + "'").code, 1);
  EXPECT_EQ(run("solve --p 1 --q 1 --r1 1/2 --algo enum").code, 1);
}

}  // namespace
