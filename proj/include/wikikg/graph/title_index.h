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

#ifndef WIKIKG_GRAPH_TITLE_INDEX_H_
#define WIKIKG_GRAPH_TITLE_INDEX_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>

#include "wikikg/graph/records.h"

namespace wikikg::graph {

// Canonical lookup form of a title: spaces become underscores, leading and
// trailing underscores are dropped, runs collapse, and an ASCII lower-case
// first letter is upper-cased (first letter case-insensitive, rest
// case-sensitive).
std::string title_key(std::string_view title);

// In-memory (namespace, title) -> page_id map for small graphs and tests.
class PageIndex {
 public:
  // Keeps the lowest page_id when two pages share a title key.
  void add(PageId page_id, int32_t ns, std::string_view title);
  std::optional<PageId> find(int32_t ns, std::string_view title) const;
  size_t size() const { return index_.size(); }

 private:
  std::map<std::pair<int32_t, std::string>, PageId, std::less<>> index_;
};

// Exact match under title_key(); absent for red links and vanished pages.
std::optional<PageId> resolve_title(int32_t ns, std::string_view title, const PageIndex& index);

struct TitleEntry {
  int32_t ns = 0;
  std::string key;
  PageId page_id = 0;

  auto tie() const { return std::tie(ns, key, page_id); }
  bool operator<(const TitleEntry& o) const { return tie() < o.tie(); }
  size_t heap_bytes() const { return key.capacity(); }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(ns, key, page_id);
  }
};

// Pages re-sorted by (namespace, title key, page_id).
Source<TitleEntry> pages_by_title(const PageSourceFactory& pages, const SortOptions& sort);

// Forward-only lookup into a title-sorted page stream. Probes must come in
// non-decreasing (ns, key) order.
class TitleCursor {
 public:
  explicit TitleCursor(Source<TitleEntry> titles);
  std::optional<PageId> seek(int32_t ns, const std::string& key);

 private:
  Source<TitleEntry> titles_;
  TitleEntry current_;
  bool has_ = false;
};

// Forward-only lookup into an id-sorted page stream. Probes must come in
// non-decreasing page_id order.
class PageCursor {
 public:
  explicit PageCursor(Source<PageRecord> pages);
  const PageRecord* seek(PageId id);

 private:
  Source<PageRecord> pages_;
  PageRecord current_;
  bool has_ = false;
};

}  // namespace wikikg::graph

#endif  // WIKIKG_GRAPH_TITLE_INDEX_H_
