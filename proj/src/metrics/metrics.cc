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

#include <algorithm>
#include <charconv>
#include <cmath>

#include "wikikg/common/error.h"
#include "wikikg/common/text.h"
#include "wikikg/graph/tables.h"

namespace wikikg::metrics {
namespace {

struct TalkEntry {
  std::string key;
  int kind = 0;  // 0 article, 1 talk page
  PageId page_id = 0;
  uint64_t edits = 0;
  uint64_t editors = 0;

  auto tie() const { return std::tie(key, kind, page_id, edits, editors); }
  bool operator<(const TalkEntry& o) const { return tie() < o.tie(); }
  size_t heap_bytes() const { return key.capacity(); }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(key, kind, page_id, edits, editors);
  }
};

bool in_scope(const graph::PageRecord& p) { return p.ns == 0 && !p.is_redirect; }

}  // namespace

const std::array<std::string, kMetricCount>& metric_names() {
  static const std::array<std::string, kMetricCount> names = {
      "editors", "edits", "linked", "links",      "age",            "length",
      "talkers", "talks", "views",  "references", "pub_referenced", "urls"};
  return names;
}

int metric_index(std::string_view name) {
  const auto& names = metric_names();
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

double metric_value(const ArticleMetrics& m, size_t index) {
  switch (index) {
    case 0: return static_cast<double>(m.editors);
    case 1: return static_cast<double>(m.edits);
    case 2: return static_cast<double>(m.linked);
    case 3: return static_cast<double>(m.links);
    case 4: return m.age;
    case 5: return static_cast<double>(m.length);
    case 6: return static_cast<double>(m.talkers);
    case 7: return static_cast<double>(m.talks);
    case 8: return static_cast<double>(m.views);
    case 9: return static_cast<double>(m.references);
    case 10: return static_cast<double>(m.pub_referenced);
    case 11: return static_cast<double>(m.urls);
  }
  return 0;
}

Expected<double, CreatedAfterAsOf> compute_age(Timestamp created, Date as_of) {
  auto seconds = (start_of_day(as_of) - created).count();
  if (seconds < 0) return CreatedAfterAsOf{};
  double years = static_cast<double>(seconds) / 86400.0 / 365.25;
  return std::round(years * 100.0) / 100.0;
}

std::optional<PageId> pair_talk_page(const graph::PageRecord& article,
                                     const graph::PageIndex& index) {
  if (article.ns % 2 != 0) return std::nullopt;
  return index.find(article.ns + 1, article.title);
}

std::string strip_talk_archive(std::string_view title) {
  std::string key = graph::title_key(title);
  size_t slash = key.rfind("/Archive_");
  if (slash == std::string::npos || slash == 0) return key;
  std::string_view n = std::string_view(key).substr(slash + 9);
  if (n.empty() || !std::all_of(n.begin(), n.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return key;
  }
  return key.substr(0, slash);
}

void compute_article_metrics(const graph::PageSourceFactory& pages,
                             Source<graph::PageLinkEdge> links,
                             Source<graph::PagePubEdge> pubs,
                             Source<graph::PageUrlEdge> urls, const MetricWindow& window,
                             const MetricOptions& options, const SortOptions& sort,
                             const graph::Sink<ArticleMetrics>& out, Counters* counters) {
  for (const char* name : {"articles", "talk_pages_paired", "edges_in_scope", "edges_out_of_scope",
                           "articles_without_created", "created_after_as_of"}) {
    counters->add(name, 0);
  }
  std::vector<PageId> scope;
  ExternalSorter<TalkEntry> talk(sort);
  {
    Source<graph::PageRecord> source = pages();
    graph::PageRecord p;
    while (source(p)) {
      if (in_scope(p)) {
        scope.push_back(p.page_id);
        talk.add({graph::title_key(p.title), 0, p.page_id, 0, 0});
      } else if (p.ns == 1) {
        std::string key = options.include_talk_archives ? strip_talk_archive(p.title)
                                                        : graph::title_key(p.title);
        talk.add({std::move(key), 1, p.page_id, p.edits, p.editors});
      }
    }
  }
  auto position = [&scope](PageId id) -> int64_t {
    auto it = std::lower_bound(scope.begin(), scope.end(), id);
    return it != scope.end() && *it == id ? it - scope.begin() : -1;
  };
  const size_t n = scope.size();
  std::vector<uint64_t> out_degree(n), in_degree(n), pub_count(n), url_count(n);
  std::vector<uint64_t> talkers(n), talks(n);

  graph::PageLinkEdge link;
  while (links(link)) {
    int64_t i = position(link.from), j = position(link.to);
    if (i < 0 || j < 0) {
      counters->add("edges_out_of_scope");
      continue;
    }
    counters->add("edges_in_scope");
    out_degree[i]++;
    in_degree[j]++;
  }
  graph::PagePubEdge pub;
  while (pubs(pub)) {
    if (int64_t i = position(pub.page_id); i >= 0) pub_count[i]++;
  }
  graph::PageUrlEdge url;
  while (urls(url)) {
    if (int64_t i = position(url.page_id); i >= 0) url_count[i]++;
  }

  {
    Source<TalkEntry> sorted = talk.finish();
    TalkEntry e;
    bool has = sorted(e);
    std::vector<PageId> articles;
    while (has) {
      std::string key = e.key;
      articles.clear();
      uint64_t sum_edits = 0, sum_editors = 0, talk_pages = 0;
      for (; has && e.key == key; has = sorted(e)) {
        if (e.kind == 0) {
          articles.push_back(e.page_id);
        } else {
          sum_edits += e.edits;
          sum_editors += e.editors;
          ++talk_pages;
        }
      }
      if (talk_pages == 0) continue;
      for (PageId a : articles) {
        int64_t i = position(a);
        talks[i] = sum_edits;
        talkers[i] = sum_editors;
        counters->add("talk_pages_paired");
      }
    }
  }

  Source<graph::PageRecord> source = pages();
  graph::PageRecord p;
  size_t i = 0;
  while (source(p)) {
    if (!in_scope(p)) continue;
    ArticleMetrics m;
    m.page_id = p.page_id;
    m.editors = p.editors;
    m.edits = p.edits;
    m.linked = in_degree[i];
    m.links = out_degree[i];
    if (p.has_created()) {
      auto age = compute_age(Timestamp(std::chrono::seconds(p.created)), window.as_of);
      if (age) {
        m.age = *age;
      } else {
        counters->add("created_after_as_of");
      }
    } else {
      counters->add("articles_without_created");
    }
    m.length = p.length;
    m.talkers = talkers[i];
    m.talks = talks[i];
    m.views = p.views;
    m.references = p.references;
    m.pub_referenced = pub_count[i];
    m.urls = url_count[i];
    counters->add("articles");
    out(m);
    ++i;
  }
}

void compute_metrics_from_graph(const std::filesystem::path& dir, const MetricWindow& window,
                                const MetricOptions& options, const SortOptions& sort,
                                const graph::Sink<ArticleMetrics>& out, Counters* counters) {
  graph::PageSourceFactory pages = [dir] {
    return graph::read_table<graph::PageRecord>(dir / graph::kPageFile, graph::page_header());
  };
  compute_article_metrics(
      pages,
      graph::read_table<graph::PageLinkEdge>(dir / graph::kPageLinkFile,
                                             graph::page_link_header()),
      graph::read_table<graph::PagePubEdge>(dir / graph::kPagePubFile, graph::page_pub_header()),
      graph::read_table<graph::PageUrlEdge>(dir / graph::kPageUrlFile, graph::page_url_header()),
      window, options, sort, out, counters);
}

std::vector<std::string> metrics_header() {
  std::vector<std::string> h = {"page_id"};
  for (const auto& name : metric_names()) h.push_back(name);
  return h;
}

std::string format_age(double years) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), years, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

MetricsWriter::MetricsWriter(const std::filesystem::path& path)
    : writer_(path, metrics_header()) {}

void MetricsWriter::write(const ArticleMetrics& m) {
  writer_.write_row(m.page_id, m.editors, m.edits, m.linked, m.links, format_age(m.age),
                    m.length, m.talkers, m.talks, m.views, m.references, m.pub_referenced,
                    m.urls);
}

std::vector<ArticleMetrics> read_metrics(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("missing " + path.string());
  TsvReader reader(path);
  if (reader.read_header() != metrics_header()) {
    throw graph::TableFormatError(path.string() + ": unexpected header");
  }
  std::vector<ArticleMetrics> rows;
  std::vector<std::string> f;
  while (reader.next(&f)) {
    auto bad = [&] {
      return graph::TableFormatError(path.string() + ":" + std::to_string(reader.line_number()) +
                                     ": malformed row");
    };
    if (f.size() != kMetricCount + 1) throw bad();
    std::array<uint64_t, kMetricCount + 1> v{};
    for (size_t i = 0; i < f.size(); ++i) {
      if (i == 5) continue;
      auto x = parse_uint64(f[i]);
      if (!x) throw bad();
      v[i] = *x;
    }
    auto age = parse_double(f[5]);
    if (!age) throw bad();
    ArticleMetrics m;
    m.page_id = static_cast<PageId>(v[0]);
    m.editors = v[1];
    m.edits = v[2];
    m.linked = v[3];
    m.links = v[4];
    m.age = *age;
    m.length = static_cast<int64_t>(v[6]);
    m.talkers = v[7];
    m.talks = v[8];
    m.views = v[9];
    m.references = v[10];
    m.pub_referenced = v[11];
    m.urls = v[12];
    rows.push_back(m);
  }
  return rows;
}

}  // namespace wikikg::metrics
