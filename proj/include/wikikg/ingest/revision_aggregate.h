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

#ifndef WIKIKG_INGEST_REVISION_AGGREGATE_H_
#define WIKIKG_INGEST_REVISION_AGGREGATE_H_

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "wikikg/common/external_sort.h"
#include "wikikg/ingest/revision_history.h"

namespace wikikg::ingest {

struct RevisionAggregate {
  PageId page_id = 0;
  uint64_t edits = 0;
  uint64_t editors = 0;
  Timestamp created{};

  bool operator==(const RevisionAggregate&) const = default;
};

// In-memory aggregation: edits, distinct editors and first revision time per
// page. Events may arrive in any order; partial aggregators merge exactly
// (editor sets are united before counting).
class RevisionAggregator {
 public:
  void add(const RevisionEvent& event);
  void merge(const RevisionAggregator& other);
  std::map<PageId, RevisionAggregate> result() const;

 private:
  struct Partial {
    uint64_t edits = 0;
    Timestamp created = Timestamp::max();
    std::unordered_set<std::string> editors;
  };
  std::unordered_map<PageId, Partial> pages_;
};

std::map<PageId, RevisionAggregate> aggregate_revisions(Source<RevisionEvent> events);

// One (page, contributor) pair with its edit count and first edit time.
struct EditorTally {
  PageId page_id = 0;
  std::string identity;
  uint64_t edits = 0;
  int64_t first_edit = 0;  // seconds since epoch

  auto key() const { return std::tie(page_id, identity, edits, first_edit); }
  bool operator<(const EditorTally& o) const { return key() < o.key(); }
  size_t heap_bytes() const { return identity.capacity(); }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(page_id, identity, edits, first_edit);
  }
};

// Disk-backed aggregation for dumps whose editor sets do not fit in memory.
// Revisions of one page are usually contiguous in a history dump, so each
// contiguous group is collapsed to per-contributor tallies before being
// handed to an external sorter; the sorted tallies are then reduced per
// page. Non-contiguous groups for the same page reduce to the same result.
class ExternalRevisionAggregator {
 public:
  explicit ExternalRevisionAggregator(SortOptions options);

  void add(const RevisionEvent& event);

  // Sorted by (page_id, identity). Consumes the aggregator.
  Source<EditorTally> finish();

  uint64_t events() const { return events_; }

 private:
  void flush_group();

  ExternalSorter<EditorTally> sorter_;
  PageId current_page_ = 0;
  std::unordered_map<std::string, std::pair<uint64_t, int64_t>> group_;
  uint64_t events_ = 0;
};

// Reduces tallies sorted by (page_id, identity) into per-page aggregates in
// ascending page_id order.
Source<RevisionAggregate> reduce_editor_tallies(Source<EditorTally> sorted);

}  // namespace wikikg::ingest

#endif  // WIKIKG_INGEST_REVISION_AGGREGATE_H_
