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

#include "wikikg/analysis/analysis.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.h"

namespace wikikg::analysis {
namespace {

TEST(Spearman, MatchesMidRankOracleOnTiedVectors) {
  test::Rng rng(23);
  size_t compared = 0;
  for (int i = 0; i < 1000; ++i) {
    size_t n = rng() % 99 + 2;
    auto x = test::random_tied_vector(rng, n);
    auto y = test::random_tied_vector(rng, n);
    auto got = spearman(x, y);
    bool constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }) ||
                    std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
    ASSERT_EQ(got.ok(), !constant);
    if (!got) continue;
    ++compared;
    ASSERT_NEAR(*got, test::spearman_reference(x, y), 1e-12);
  }
  EXPECT_GT(compared, 750u);
}

TEST(Spearman, InvariantUnderMonotoneTransforms) {
  test::Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    size_t n = rng() % 99 + 2;
    auto x = test::random_tied_vector(rng, n);
    auto y = test::random_tied_vector(rng, n);
    auto base = spearman(x, y);
    if (!base) continue;
    std::vector<double> fx, fy;
    for (double v : x) fx.push_back(std::exp(v / 3) + 1000);
    for (double v : y) fy.push_back(v * v * v - 7);
    ASSERT_NEAR(*spearman(fx, fy), *base, 1e-12);
  }
}

TEST(Spearman, HandComputedCase) {
  auto rho = spearman({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5});
  ASSERT_TRUE(rho.ok());
  EXPECT_EQ(*rho, 0.8);
}

TEST(Spearman, Symmetric) {
  test::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    auto x = test::random_tied_vector(rng, 40);
    auto y = test::random_tied_vector(rng, 40);
    auto a = spearman(x, y), b = spearman(y, x);
    ASSERT_EQ(a.ok(), b.ok());
    if (a) {
      ASSERT_EQ(*a, *b);
    }
  }
}

TEST(Spearman, DegenerateInputs) {
  EXPECT_FALSE(spearman({1, 1, 1}, {1, 2, 3}).ok());
  EXPECT_FALSE(spearman({1}, {2}).ok());
  EXPECT_THROW((void)spearman({1, 2}, {1, 2, 3}), Error);
  EXPECT_EQ(*spearman({1, 2, 3}, {3, 2, 1}), -1.0);
}

TEST(Spearman, DoubledMidRanks) {
  EXPECT_EQ(doubled_mid_ranks({10, 20, 20, 30}), (std::vector<uint32_t>{2, 5, 5, 8}));
  EXPECT_EQ(doubled_mid_ranks({3, 3, 3}), (std::vector<uint32_t>{4, 4, 4}));
}

metrics::ArticleMetrics article(PageId id, uint64_t edits) {
  metrics::ArticleMetrics m;
  m.page_id = id;
  m.edits = edits;
  m.editors = edits;
  return m;
}

TEST(QualityClasses, ArticleCountsInEveryClassItWasGiven) {
  std::istringstream in(
      "page_id\twikiproject\tclass\timportance\n"
      "1\tPhysics\tFA\tTop\n"
      "1\tBiography\tB-Class\tMid\n"
      "1\tScience\tfeatured article\tHigh\n"
      "2\tPhysics\tB\tLow\n"
      "4\tPhysics\tMysteryclass\tLow\n");
  AssessmentReader reader(in);
  ClassMap classes = assign_quality_classes([&](QualityAssessment& a) { return reader.next(&a); });
  EXPECT_EQ(reader.counters().get("unknown_class_label"), 1u);
  EXPECT_EQ(classes[1], (std::set<QualityClass>{QualityClass::kFA, QualityClass::kB}));

  std::vector<metrics::ArticleMetrics> rows = {article(1, 10), article(2, 20), article(3, 60)};
  auto columns = aggregate_by_class(rows, classes);
  ASSERT_EQ(columns.size(), 3u);
  EXPECT_EQ(columns[0].label, "All articles");
  EXPECT_EQ(columns[0].n, 3u);
  EXPECT_DOUBLE_EQ(columns[0].mean[1], 30.0);
  EXPECT_EQ(columns[1].label, "FA");
  EXPECT_EQ(columns[1].n, 1u);
  EXPECT_DOUBLE_EQ(columns[1].mean[1], 10.0);
  EXPECT_EQ(columns[2].label, "B");
  EXPECT_EQ(columns[2].n, 2u);
  EXPECT_DOUBLE_EQ(columns[2].mean[1], 15.0);
}

TEST(QualityClasses, EmptyAssessmentsGiveOnlyAllArticles) {
  std::vector<metrics::ArticleMetrics> rows = {article(1, 1)};
  auto columns = aggregate_by_class(rows, {});
  ASSERT_EQ(columns.size(), 1u);
  EXPECT_EQ(columns[0].label, "All articles");
}

TEST(QualityClasses, LabelParsing) {
  EXPECT_EQ(parse_quality_class("ga"), QualityClass::kGA);
  EXPECT_EQ(parse_quality_class("Featured list"), QualityClass::kFL);
  EXPECT_EQ(parse_quality_class("Start-Class"), QualityClass::kStart);
  EXPECT_EQ(parse_quality_class("Mysteryclass"), std::nullopt);
  EXPECT_EQ(parse_importance("Top"), Importance::kTop);
  EXPECT_EQ(parse_importance("whatever"), Importance::kUnknown);
}

TEST(Summary, QuantilesAndWhiskers) {
  std::vector<double> sorted = {1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(quantile(sorted, 0.25), 2);
  EXPECT_DOUBLE_EQ(quantile(sorted, 0.5), 3);
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4}, 0.5), 2.5);
  SummaryStats s = describe("x", {5, 1, 4, 2, 3, 100});
  EXPECT_EQ(s.n, 6u);
  EXPECT_DOUBLE_EQ(s.median, 3.5);
  EXPECT_DOUBLE_EQ(s.whisker_high, 5);
  EXPECT_DOUBLE_EQ(s.whisker_low, 1);
}

TEST(Ranking, TiesByPageIdAndExclusions) {
  std::vector<metrics::ArticleMetrics> rows = {article(3, 5), article(1, 5), article(2, 9),
                                               article(4, 1)};
  std::map<PageId, std::string> titles = {
      {1, "Alpha"}, {2, "Albert_Einstein"}, {3, "Gamma"}, {4, "Delta"}};
  auto top = rank_top_n(rows, titles, "edits", 2, {"Albert Einstein"});
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].page_id, 1);
  EXPECT_EQ(top[0].rank, 1u);
  EXPECT_EQ(top[1].page_id, 3);
  auto none = rank_top_n(rows, titles, "edits", 2, {"Alpha", "Albert_Einstein", "Gamma", "Delta"});
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(top_candidates(rows, "edits", 3), (std::vector<PageId>{2, 1, 3}));
}

TEST(Ranking, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(3), "3");
  EXPECT_EQ(format_number(-2.5), "-2.5");
}

}  // namespace
}  // namespace wikikg::analysis
