// Copyright 2026 The wikikg Authors.
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

#include <fstream>

#include "harness.h"
#include "wikikg/graph/tables.h"
#include "wikikg/pipeline/pipeline.h"

namespace wikikg {
namespace {

namespace fs = std::filesystem;
using test::run_cli;

std::string config() { return (test::mini_wiki_dir() / "wikikg.ini").string(); }

std::vector<std::string> args(const std::string& command, const test::ScratchDir& out,
                              std::vector<std::string> extra = {}) {
  std::vector<std::string> a = {command, "--config", config(), "--out", (out / "out").string()};
  a.insert(a.end(), extra.begin(), extra.end());
  return a;
}

TEST(Cli, FixtureRunMatchesGolden) {
  test::ScratchDir dir;
  auto build = run_cli(args("build", dir));
  ASSERT_EQ(build.exit_code, 0) << build.output;
  auto metrics = run_cli(args("metrics", dir));
  ASSERT_EQ(metrics.exit_code, 0) << metrics.output;
  auto files = graph::graph_files();
  files.push_back("metrics.tsv");
  for (const auto& f : files) {
    SCOPED_TRACE(f);
    EXPECT_EQ(test::read_file(dir / "out" / f),
              test::read_file(test::mini_wiki_dir() / "golden" / f));
  }
  auto analyze = run_cli(args("analyze", dir));
  ASSERT_EQ(analyze.exit_code, 0) << analyze.output;
  for (const char* f : {"class_means.tsv", "summary_stats.tsv", "correlations.tsv",
                        "top_views.tsv", "report.txt"}) {
    EXPECT_TRUE(fs::exists(dir / "out" / "analysis" / f)) << f;
  }
  // Every class present in the assessments shows up in the report.
  std::string report = test::read_file(dir / "out" / "analysis" / "report.txt");
  for (const char* label : {"FA", "FL", "GA", "Start", "Stub", "List"}) {
    EXPECT_NE(report.find(label), std::string::npos) << label;
  }

  auto again = run_cli(args("build", dir));
  EXPECT_EQ(again.exit_code, 0);
  EXPECT_NE(again.output.find("all stages current"), std::string::npos) << again.output;

  auto rep = run_cli(args("report", dir));
  EXPECT_EQ(rep.exit_code, 0) << rep.output;
  EXPECT_NE(rep.output.find("links.edges_out=117"), std::string::npos);

  auto verify = run_cli(args("verify", dir));
  EXPECT_EQ(verify.exit_code, 0);
  EXPECT_NE(verify.output.find("violations.total=0"), std::string::npos) << verify.output;
}

TEST(Cli, ChangedParameterReRunsStage) {
  test::ScratchDir dir;
  ASSERT_EQ(run_cli(args("build", dir)).exit_code, 0);
  auto rerun = run_cli(args("build", dir, {"--resolve-redirects"}));
  EXPECT_EQ(rerun.exit_code, 0) << rerun.output;
  EXPECT_NE(rerun.output.find("stage links: running"), std::string::npos) << rerun.output;
  EXPECT_NE(rerun.output.find("stage pages: current"), std::string::npos) << rerun.output;
}

TEST(Cli, ForceReRunsEverything) {
  test::ScratchDir dir;
  ASSERT_EQ(run_cli(args("build", dir)).exit_code, 0);
  auto rerun = run_cli(args("build", dir, {"--force"}));
  EXPECT_EQ(rerun.exit_code, 0);
  EXPECT_EQ(rerun.output.find(": current"), std::string::npos) << rerun.output;
}

TEST(Cli, MissingInputIsAConfigError) {
  test::ScratchDir dir;
  auto r = run_cli(args("build", dir, {"--page-dump", (dir / "nope.sql").string()}));
  EXPECT_EQ(r.exit_code, 2) << r.output;
}

TEST(Cli, UnknownFlagIsAConfigError) {
  test::ScratchDir dir;
  EXPECT_EQ(run_cli(args("build", dir, {"--no-such-flag"})).exit_code, 2);
}

TEST(Cli, MetricsWithoutBuildFails) {
  test::ScratchDir dir;
  auto r = run_cli(args("metrics", dir));
  EXPECT_EQ(r.exit_code, 1) << r.output;
}

TEST(Cli, AnalyzeWithoutMetricsFails) {
  test::ScratchDir dir;
  ASSERT_EQ(run_cli(args("build", dir)).exit_code, 0);
  EXPECT_EQ(run_cli(args("analyze", dir)).exit_code, 1);
}

TEST(Cli, CorruptedEdgeFileBlocksMetrics) {
  test::ScratchDir dir;
  ASSERT_EQ(run_cli(args("build", dir)).exit_code, 0);
  std::ofstream(dir / "out" / "page_link.tsv", std::ios::app) << "11\t424242\n";
  auto r = run_cli(args("metrics", dir));
  EXPECT_EQ(r.exit_code, 3) << r.output;
  EXPECT_FALSE(fs::exists(dir / "out" / "metrics.tsv"));
  EXPECT_EQ(run_cli(args("verify", dir)).exit_code, 3);
}

TEST(Cli, EmptyAssessmentsLeaveOnlyAllArticles) {
  test::ScratchDir dir;
  test::write_file(dir / "empty.tsv", "");
  ASSERT_EQ(run_cli(args("build", dir)).exit_code, 0);
  ASSERT_EQ(run_cli(args("metrics", dir)).exit_code, 0);
  auto r = run_cli(args("analyze", dir, {"--assessments", (dir / "empty.tsv").string()}));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  std::string means = test::read_file(dir / "out" / "analysis" / "class_means.tsv");
  EXPECT_EQ(means.substr(0, means.find('\n')), "metric\tAll articles");
}

TEST(Cli, ExcludingEveryArticleGivesEmptyRankings) {
  test::ScratchDir dir;
  ASSERT_EQ(run_cli(args("build", dir)).exit_code, 0);
  ASSERT_EQ(run_cli(args("metrics", dir)).exit_code, 0);
  std::ifstream pages(dir / "out" / "page.tsv");
  std::string line, exclusions;
  std::getline(pages, line);
  while (std::getline(pages, line)) {
    size_t a = line.find('\t'), b = line.find('\t', a + 1), c = line.find('\t', b + 1);
    exclusions += line.substr(b + 1, c - b - 1) + "\n";
  }
  test::write_file(dir / "all.txt", exclusions);
  auto r = run_cli(args("analyze", dir, {"--exclusions", (dir / "all.txt").string()}));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  std::string top = test::read_file(dir / "out" / "analysis" / "top_views.tsv");
  EXPECT_EQ(top, "rank\tpage_id\ttitle\tvalue\n");
}

TEST(Cli, TwoRunsAreByteIdentical) {
  test::ScratchDir a, b;
  for (const auto* dir : {&a, &b}) {
    for (const char* cmd : {"build", "metrics", "analyze"}) {
      ASSERT_EQ(run_cli(args(cmd, *dir)).exit_code, 0) << cmd;
    }
  }
  auto ha = test::hash_tree(a / "out"), hb = test::hash_tree(b / "out");
  EXPECT_GT(ha.size(), 15u);
  EXPECT_EQ(ha, hb);
}

TEST(RunReport, ReconciliationOnFixture) {
  test::ScratchDir dir;
  ASSERT_EQ(run_cli(args("build", dir)).exit_code, 0);
  ASSERT_EQ(run_cli(args("metrics", dir)).exit_code, 0);
  std::ifstream in(dir / "out" / pipeline::kRunReportFile);
  auto checks = pipeline::reconcile(pipeline::parse_run_report(in));
  EXPECT_GE(checks.size(), 18u);
  for (const auto& c : checks) EXPECT_TRUE(c.ok()) << c.name << " " << c.lhs << " " << c.rhs;
}

TEST(RunReport, MismatchIsDetected) {
  pipeline::RunReport report = {{"links.rows_in", 10}, {"links.edges_out", 9}};
  auto checks = pipeline::reconcile(report);
  bool found = false;
  for (const auto& c : checks) {
    if (c.name == "links.rows") {
      found = true;
      EXPECT_FALSE(c.ok());
    }
  }
  EXPECT_TRUE(found);
}

}  // namespace
}  // namespace wikikg
