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

#include <algorithm>
#include <istream>
#include <random>
#include <streambuf>

#include "harness.h"
#include "wikikg/common/external_sort.h"
#include "wikikg/common/parallel.h"
#include "wikikg/graph/records.h"
#include "wikikg/ingest/dump_tables.h"

namespace wikikg {
namespace {

TEST(ExternalSort, MultiPassMergeMatchesInMemorySort) {
  test::ScratchDir tmp;
  SortOptions sort;
  sort.memory_budget = 64 << 10;
  sort.max_fan_in = 4;
  sort.temp_dir = tmp.path();
  ExternalSorter<uint64_t> sorter(sort);
  std::mt19937_64 rng(41);
  std::vector<uint64_t> expected;
  for (int i = 0; i < 200000; ++i) {
    uint64_t v = rng() % 50000;
    expected.push_back(v);
    sorter.add(v);
  }
  std::sort(expected.begin(), expected.end());
  size_t runs = sorter.spilled_runs();
  Source<uint64_t> out = sorter.finish();
  EXPECT_EQ(drain(out), expected);
  EXPECT_GT(runs, 4u);
  EXPECT_GT(sorter.merge_passes(), 0u);
}

TEST(ExternalSort, MergeIsStableAcrossSources) {
  using P = std::pair<int, int>;
  auto by_first = [](const P& a, const P& b) { return a.first < b.first; };
  std::vector<Source<P>> sources;
  sources.push_back(source_from_vector<P>({{1, 0}, {2, 0}}));
  sources.push_back(source_from_vector<P>({{1, 1}, {2, 1}}));
  Source<P> merged = merge_sources<P>(std::move(sources), by_first);
  EXPECT_EQ(drain(merged), (std::vector<P>{{1, 0}, {1, 1}, {2, 0}, {2, 1}}));
}

TEST(ExternalSort, RunFileRereadable) {
  test::ScratchDir tmp;
  auto run = RunFile<graph::PageLinkEdge>::write(
      tmp.path(), source_from_vector<graph::PageLinkEdge>({{1, 2}, {3, 4}}));
  for (int pass = 0; pass < 2; ++pass) {
    Source<graph::PageLinkEdge> s = run.open();
    EXPECT_EQ(drain(s), (std::vector<graph::PageLinkEdge>{{1, 2}, {3, 4}}));
  }
}

TEST(Parallel, EveryIndexVisitedOnce) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 4, [&](size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

// Produces a pagelinks INSERT of `rows` tuples without materializing it.
class GeneratedDump : public std::streambuf {
 public:
  explicit GeneratedDump(uint64_t rows) : rows_(rows) {}

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    chunk_.clear();
    if (next_ == 0 && rows_ > 0) chunk_ = "INSERT INTO `pagelinks` VALUES ";
    while (chunk_.size() < 60000 && next_ < rows_) {
      ++next_;
      chunk_ += "(" + std::to_string(next_ % 99991 + 1) + ",0,'Target_" +
                std::to_string((next_ * 7919) % 1000003) + "',0)";
      chunk_ += next_ == rows_ ? ";\n" : ",";
    }
    if (chunk_.empty()) return traits_type::eof();
    setg(chunk_.data(), chunk_.data(), chunk_.data() + chunk_.size());
    return traits_type::to_int_type(*gptr());
  }

 private:
  uint64_t rows_;
  uint64_t next_ = 0;
  std::string chunk_;
};

struct RowByTitle {
  bool operator()(const ingest::PageLinkRow& a, const ingest::PageLinkRow& b) const {
    return std::tie(a.to_title, a.from_page_id) < std::tie(b.to_title, b.from_page_id);
  }
};

}  // namespace
}  // namespace wikikg

namespace wikikg::ingest {
template <class Archive>
void serialize(Archive& ar, PageLinkRow& r) {
  ar(r.from_page_id, r.to_namespace, r.to_title);
}
}  // namespace wikikg::ingest

namespace wikikg {
namespace {

// Parse and sort 3M rows (about 150 MB of records) with an 8 MB budget; the
// child's peak RSS must stay far below the data size.
TEST(Streaming, ParseAndSortStayWithinBudget) {
  test::ScratchDir tmp;
  constexpr uint64_t kRows = 3'000'000;
  auto run = test::run_in_child([&] {
    GeneratedDump buf(kRows);
    std::istream in(&buf);
    ingest::PageLinkReader reader(in, ingest::default_pagelinks_schema());
    SortOptions sort;
    sort.memory_budget = 8 << 20;
    sort.temp_dir = tmp.path();
    ExternalSorter<ingest::PageLinkRow, RowByTitle> sorter(sort);
    ingest::PageLinkRow row;
    while (reader.next(&row)) sorter.add(row);
    Source<ingest::PageLinkRow> sorted = sorter.finish();
    uint64_t n = 0;
    ingest::PageLinkRow prev, cur;
    bool ordered = true;
    while (sorted(cur)) {
      if (n > 0 && RowByTitle()(cur, prev)) ordered = false;
      prev = cur;
      ++n;
    }
    return std::to_string(n) + (ordered ? " ordered" : " unordered");
  });
  ASSERT_TRUE(run.ok) << run.output;
  EXPECT_EQ(run.output, std::to_string(kRows) + " ordered");
  EXPECT_LT(run.max_rss_bytes, uint64_t{96} << 20) << "peak RSS " << run.max_rss_bytes;
}

}  // namespace
}  // namespace wikikg
