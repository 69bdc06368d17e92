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

#ifndef WIKIKG_GRAPH_PAGE_TABLE_H_
#define WIKIKG_GRAPH_PAGE_TABLE_H_

#include <string>
#include <tuple>

#include "wikikg/common/error.h"
#include "wikikg/graph/records.h"
#include "wikikg/ingest/dump_tables.h"
#include "wikikg/ingest/revision_aggregate.h"

namespace wikikg::graph {

class DuplicatePageId : public Error {
 public:
  explicit DuplicatePageId(PageId id)
      : Error("duplicate page_id " + std::to_string(id) + " in page dump"), id_(id) {}
  PageId id() const { return id_; }

 private:
  PageId id_;
};

// View and reference counts for one page, keyed by page_id when the source
// has one and by (namespace, title) otherwise (page_id 0).
struct PageTally {
  PageId page_id = 0;
  int32_t ns = 0;
  std::string title;
  uint64_t views = 0;
  uint64_t references = 0;

  auto tie() const { return std::tie(page_id, ns, title, views, references); }
  bool operator<(const PageTally& o) const { return tie() < o.tie(); }
  size_t heap_bytes() const { return title.capacity(); }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(page_id, ns, title, views, references);
  }
};

// Left join of the page dump with revision aggregates (any order) and
// tallies (any order), emitted in ascending page_id order. Pages without
// revisions get edits = editors = 0 and no creation time; pages without
// tallies get zero views and references. Throws DuplicatePageId.
void build_page_table(Source<ingest::RawPageRow> pages,
                      Source<ingest::RevisionAggregate> revisions, Source<PageTally> tallies,
                      const SortOptions& sort, const Sink<PageRecord>& out, Counters* counters);

}  // namespace wikikg::graph

#endif  // WIKIKG_GRAPH_PAGE_TABLE_H_
