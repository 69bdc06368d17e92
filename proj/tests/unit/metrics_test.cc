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

#include "wikikg/metrics/metrics.h"

#include <gtest/gtest.h>

#include "harness.h"

namespace wikikg::metrics {
namespace {

Date day(int y, unsigned m, unsigned d) {
  return std::chrono::sys_days(std::chrono::year(y) / std::chrono::month(m) / std::chrono::day(d));
}

TEST(Age, YearsToTwoDecimals) {
  Date as_of = day(2021, 7, 1);
  EXPECT_EQ(*compute_age(start_of_day(day(2020, 7, 1)), as_of), 1.0);
  EXPECT_EQ(*compute_age(start_of_day(day(2011, 7, 1)), as_of), 10.0);
  EXPECT_EQ(*compute_age(start_of_day(as_of), as_of), 0.0);
  // 182 days / 365.25 = 0.4983
  EXPECT_EQ(*compute_age(start_of_day(day(2020, 12, 31)), as_of), 0.5);
  EXPECT_FALSE(compute_age(start_of_day(as_of) + std::chrono::seconds(1), as_of).ok());
  EXPECT_EQ(format_age(1.0), "1.00");
  EXPECT_EQ(format_age(12.345), "12.35");
}

TEST(TalkPages, ArchivesAndPairing) {
  EXPECT_EQ(strip_talk_archive("Foo/Archive_3"), "Foo");
  EXPECT_EQ(strip_talk_archive("Foo/Archive 12"), "Foo");
  EXPECT_EQ(strip_talk_archive("Foo/Bar"), "Foo/Bar");
  graph::PageIndex index;
  index.add(1, 0, "Foo");
  index.add(2, 1, "Foo");
  graph::PageRecord article;
  article.page_id = 1;
  article.title = "Foo";
  EXPECT_EQ(pair_talk_page(article, index), 2);
  article.title = "Bar";
  EXPECT_EQ(pair_talk_page(article, index), std::nullopt);
}

TEST(MetricNames, TwelveInOrder) {
  EXPECT_EQ(metric_names().size(), kMetricCount);
  EXPECT_EQ(metric_index("editors"), 0);
  EXPECT_EQ(metric_index("urls"), 11);
  EXPECT_EQ(metric_index("nope"), -1);
  ArticleMetrics m;
  m.age = 2.5;
  m.views = 7;
  EXPECT_EQ(metric_value(m, 4), 2.5);
  EXPECT_EQ(metric_value(m, 8), 7.0);
}

TEST(Handshake, OutDegreesSumToInDegrees) {
  test::ScratchDir tmp;
  SortOptions sort;
  sort.memory_budget = 256 << 10;
  sort.temp_dir = tmp.path();
  for (uint64_t seed : {1, 2, 3}) {
    auto r = test::run_link_scale(50000, 3000, sort, seed);
    const Counters& c = r.link_counters;
    EXPECT_EQ(r.sum_links, r.sum_linked);
    EXPECT_EQ(r.sum_links, r.metric_counters.get("edges_in_scope"));
    EXPECT_EQ(c.get("edges_out"),
              r.metric_counters.get("edges_in_scope") + r.metric_counters.get("edges_out_of_scope"));
    EXPECT_EQ(c.get("rows_in"), 50000u);
    EXPECT_EQ(c.get("rows_in"), c.get("edges_out") + c.get("dropped_out_of_scope") +
                                    c.get("dropped_unresolved") + c.get("dropped_orphan_source") +
                                    c.get("deduped"));
    // Pages 10, 20, ... are talk pages and 5, 25, ... are redirects.
    EXPECT_EQ(r.articles, 3000u - 300u - 150u);
  }
}

TEST(MetricsFile, RoundTrip) {
  test::ScratchDir tmp;
  ArticleMetrics m;
  m.page_id = 11;
  m.editors = 4;
  m.edits = 4;
  m.age = 1.38;
  m.length = 41634;
  m.views = 6125;
  {
    MetricsWriter w(tmp / kMetricsFile);
    w.write(m);
    w.close();
  }
  auto rows = read_metrics(tmp / kMetricsFile);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], m);
}

}  // namespace
}  // namespace wikikg::metrics
