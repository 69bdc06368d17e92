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

#include <sstream>

#include "oracles.h"
#include "wikikg/ingest/revision_aggregate.h"
#include "wikikg/ingest/revision_history.h"

namespace wikikg::ingest {
namespace {

std::map<PageId, RevisionAggregate> in_memory(const std::vector<RevisionEvent>& events) {
  RevisionAggregator agg;
  for (const auto& e : events) agg.add(e);
  return agg.result();
}

TEST(RevisionOracle, ThousandRandomFixtures) {
  test::Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    auto events = test::random_revisions(rng, 10000);
    auto expected = test::brute_force_revisions(events);
    ASSERT_EQ(in_memory(events), expected) << "fixture " << i;
    // Every tenth fixture also goes through the disk-backed path with spills.
    if (i % 10 == 0) {
      ASSERT_EQ(test::external_revisions(events, 16 << 10), expected);
    }
  }
}

TEST(RevisionOracle, MergeOfRandomSplits) {
  test::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    auto events = test::random_revisions(rng, 10000);
    std::vector<RevisionEvent> a, b;
    for (auto& e : events) (rng() % 2 ? a : b).push_back(e);
    RevisionAggregator left, right;
    for (const auto& e : a) left.add(e);
    for (const auto& e : b) right.add(e);
    left.merge(right);
    ASSERT_EQ(left.result(), in_memory(events)) << "split " << i;
  }
}

TEST(RevisionAggregate, DeletedContributorsCountOnce) {
  std::vector<RevisionEvent> events(3);
  for (auto& e : events) e.page_id = 5;
  events[0].contributor = {ContributorKind::kDeleted, ""};
  events[1].contributor = {ContributorKind::kDeleted, ""};
  events[2].contributor = {ContributorKind::kAnonymous, "10.0.0.1"};
  auto r = in_memory(events);
  EXPECT_EQ(r[5].edits, 3u);
  EXPECT_EQ(r[5].editors, 2u);
}

TEST(RevisionAggregate, SameKeyDifferentKindIsTwoEditors) {
  std::vector<RevisionEvent> events(2);
  for (auto& e : events) e.page_id = 1;
  events[0].contributor = {ContributorKind::kRegistered, "1"};
  events[1].contributor = {ContributorKind::kAnonymous, "1"};
  EXPECT_EQ(in_memory(events)[1].editors, 2u);
}

constexpr const char* kHistory = R"(<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/">
  <siteinfo><sitename>Wikipedia</sitename></siteinfo>
  <page>
    <title>Talk:Foo</title>
    <ns>1</ns>
    <id>12</id>
    <revision>
      <id>100</id>
      <timestamp>2005-03-01T10:00:00Z</timestamp>
      <contributor><username>Alice</username><id>7</id></contributor>
      <comment>first</comment>
    </revision>
    <revision>
      <id>101</id>
      <parentid>100</parentid>
      <timestamp>2004-01-01T00:00:00Z</timestamp>
      <contributor><ip>192.0.2.1</ip></contributor>
    </revision>
    <revision>
      <id>102</id>
      <timestamp>2006-01-01T00:00:00Z</timestamp>
      <contributor deleted="deleted" />
    </revision>
    <revision>
      <id>103</id>
      <timestamp>2006-01-02T00:00:00Z</timestamp>
      <contributor><username>NoId</username></contributor>
    </revision>
  </page>
</mediawiki>
)";

TEST(RevisionHistory, ParsesContributorKinds) {
  std::istringstream in(kHistory);
  RevisionHistoryParser parser(in);
  std::vector<RevisionEvent> events;
  RevisionEvent e;
  while (parser.next(&e)) events.push_back(e);
  ASSERT_EQ(events.size(), 4u);
  EXPECT_EQ(events[0].page_id, 12);
  EXPECT_EQ(events[0].ns, 1);
  EXPECT_EQ(events[0].title, "Talk:Foo");
  EXPECT_EQ(events[0].contributor, (ContributorIdentity{ContributorKind::kRegistered, "7"}));
  EXPECT_EQ(events[1].contributor,
            (ContributorIdentity{ContributorKind::kAnonymous, "192.0.2.1"}));
  EXPECT_EQ(events[2].contributor.kind, ContributorKind::kDeleted);
  EXPECT_EQ(events[3].contributor,
            (ContributorIdentity{ContributorKind::kRegistered, "NoId"}));
  EXPECT_EQ(parser.pages(), 1u);
  EXPECT_EQ(parser.revisions(), 4u);

  auto agg = in_memory(events);
  EXPECT_EQ(agg[12].edits, 4u);
  EXPECT_EQ(agg[12].editors, 4u);
  EXPECT_EQ(format_timestamp(agg[12].created), "2004-01-01T00:00:00Z");
}

TEST(RevisionHistory, TruncatedDocumentThrows) {
  std::string text = kHistory;
  std::istringstream in(text.substr(0, text.size() / 2));
  RevisionHistoryParser parser(in);
  RevisionEvent e;
  EXPECT_THROW(
      {
        while (parser.next(&e)) {
        }
      },
      XmlStructure);
}

}  // namespace
}  // namespace wikikg::ingest
