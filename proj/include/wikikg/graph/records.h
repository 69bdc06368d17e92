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

#ifndef WIKIKG_GRAPH_RECORDS_H_
#define WIKIKG_GRAPH_RECORDS_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "wikikg/common/counters.h"
#include "wikikg/common/external_sort.h"
#include "wikikg/ingest/dump_tables.h"

namespace wikikg::ingest {

// Run-file serialization for ingest rows that pass through external sorts.
template <class Archive>
void serialize(Archive& ar, PagePropRow& r) {
  ar(r.page_id, r.prop_name, r.prop_value);
}

}  // namespace wikikg::ingest

namespace wikikg::graph {

template <typename T>
using Sink = std::function<void(const T&)>;

// Marks an absent timestamp (seconds since epoch otherwise).
inline constexpr int64_t kNoTime = std::numeric_limits<int64_t>::min();

struct PageRecord {
  PageId page_id = 0;
  int32_t ns = 0;
  std::string title;
  bool is_redirect = false;
  bool is_new = false;
  std::string restrictions;
  int64_t touched = kNoTime;
  int64_t length = 0;
  uint64_t views = 0;
  uint64_t edits = 0;
  uint64_t editors = 0;
  int64_t created = kNoTime;
  uint64_t references = 0;

  bool has_created() const { return created != kNoTime; }
  bool operator==(const PageRecord&) const = default;
  size_t heap_bytes() const { return title.capacity() + restrictions.capacity(); }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(page_id, ns, title, is_redirect, is_new, restrictions, touched, length, views,
       edits, editors, created, references);
  }
};

struct CategoryRecord {
  int64_t category_id = 0;
  std::string title;
  int64_t pages = 0;
  int64_t subcats = 0;
  int64_t files = 0;
  bool hidden = false;

  bool operator==(const CategoryRecord&) const = default;
};

struct UrlRecord {
  int64_t url_id = 0;
  std::string url;
  std::string domain;

  bool operator==(const UrlRecord&) const = default;
};

struct PubRecord {
  int64_t pub_id = 0;
  std::string key;
  std::vector<std::string> columns;  // one per vocabulary scheme

  bool operator==(const PubRecord&) const = default;
};

struct PageCategoryEdge {
  PageId page_id = 0;
  int64_t category_id = 0;
  ingest::CategoryLinkType link_type = ingest::CategoryLinkType::kPage;

  auto key() const { return std::tie(page_id, category_id, link_type); }
  bool operator<(const PageCategoryEdge& o) const { return key() < o.key(); }
  bool operator==(const PageCategoryEdge& o) const { return key() == o.key(); }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(page_id, category_id, link_type);
  }
};

struct PageLinkEdge {
  PageId from = 0;
  PageId to = 0;

  auto operator<=>(const PageLinkEdge&) const = default;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(from, to);
  }
};

struct PagePubEdge {
  PageId page_id = 0;
  int64_t pub_id = 0;

  auto operator<=>(const PagePubEdge&) const = default;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(page_id, pub_id);
  }
};

struct PageUrlEdge {
  PageId page_id = 0;
  int64_t url_id = 0;
  bool in_reference = false;

  auto operator<=>(const PageUrlEdge&) const = default;

  template <class Archive>
  void serialize(Archive& ar) {
    ar(page_id, url_id, in_reference);
  }
};

// Pages in ascending page_id order; called once per pass that needs them.
using PageSourceFactory = std::function<Source<PageRecord>()>;

}  // namespace wikikg::graph

#endif  // WIKIKG_GRAPH_RECORDS_H_
