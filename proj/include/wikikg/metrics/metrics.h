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

#ifndef WIKIKG_METRICS_METRICS_H_
#define WIKIKG_METRICS_METRICS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wikikg/common/expected.h"
#include "wikikg/common/time.h"
#include "wikikg/common/tsv.h"
#include "wikikg/graph/records.h"
#include "wikikg/graph/title_index.h"

namespace wikikg::metrics {

inline constexpr size_t kMetricCount = 12;

struct ArticleMetrics {
  PageId page_id = 0;
  uint64_t editors = 0;
  uint64_t edits = 0;
  uint64_t linked = 0;  // in-degree
  uint64_t links = 0;   // out-degree
  double age = 0;       // years, two decimals
  int64_t length = 0;
  uint64_t talkers = 0;
  uint64_t talks = 0;
  uint64_t views = 0;
  uint64_t references = 0;
  uint64_t pub_referenced = 0;
  uint64_t urls = 0;

  bool operator==(const ArticleMetrics&) const = default;
};

// editors, edits, linked, links, age, length, talkers, talks, views,
// references, pub_referenced, urls.
const std::array<std::string, kMetricCount>& metric_names();
// Index into metric_names(), or -1.
int metric_index(std::string_view name);
double metric_value(const ArticleMetrics& m, size_t index);

struct MetricWindow {
  Date views_start{};
  Date views_end{};
  Date as_of{};
};

struct CreatedAfterAsOf {};

// (as_of - created) in days / 365.25, rounded to two decimals; as_of is
// taken at 00:00 UTC.
Expected<double, CreatedAfterAsOf> compute_age(Timestamp created, Date as_of);

// Talk page of a subject page: same title in namespace ns + 1.
std::optional<PageId> pair_talk_page(const graph::PageRecord& article,
                                     const graph::PageIndex& index);

// "X/Archive_N" (or "X/Archive N") -> "X"; other titles unchanged.
std::string strip_talk_archive(std::string_view title);

struct MetricOptions {
  // Fold talk archive subpages into the base talk page.
  bool include_talk_archives = false;
};

// Metrics for every non-redirect namespace-0 page, ascending page_id.
// Degrees count only edges with both ends in that scope.
void compute_article_metrics(const graph::PageSourceFactory& pages,
                             Source<graph::PageLinkEdge> links,
                             Source<graph::PagePubEdge> pubs,
                             Source<graph::PageUrlEdge> urls, const MetricWindow& window,
                             const MetricOptions& options, const SortOptions& sort,
                             const graph::Sink<ArticleMetrics>& out, Counters* counters);

// Same, reading the graph tables of `dir`.
void compute_metrics_from_graph(const std::filesystem::path& dir, const MetricWindow& window,
                                const MetricOptions& options, const SortOptions& sort,
                                const graph::Sink<ArticleMetrics>& out, Counters* counters);

inline constexpr const char* kMetricsFile = "metrics.tsv";

std::vector<std::string> metrics_header();

class MetricsWriter {
 public:
  explicit MetricsWriter(const std::filesystem::path& path);
  void write(const ArticleMetrics& m);
  uint64_t rows() const { return writer_.rows(); }
  void close() { writer_.close(); }

 private:
  TsvWriter writer_;
};

std::vector<ArticleMetrics> read_metrics(const std::filesystem::path& path);
std::string format_age(double years);

}  // namespace wikikg::metrics

#endif  // WIKIKG_METRICS_METRICS_H_
