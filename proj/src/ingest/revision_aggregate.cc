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

#include "wikikg/ingest/revision_aggregate.h"

#include <algorithm>

namespace wikikg::ingest {

void RevisionAggregator::add(const RevisionEvent& event) {
  Partial& p = pages_[event.page_id];
  ++p.edits;
  p.created = std::min(p.created, event.timestamp);
  p.editors.insert(event.contributor.identity());
}

void RevisionAggregator::merge(const RevisionAggregator& other) {
  for (const auto& [page, theirs] : other.pages_) {
    Partial& mine = pages_[page];
    mine.edits += theirs.edits;
    mine.created = std::min(mine.created, theirs.created);
    mine.editors.insert(theirs.editors.begin(), theirs.editors.end());
  }
}

std::map<PageId, RevisionAggregate> RevisionAggregator::result() const {
  std::map<PageId, RevisionAggregate> out;
  for (const auto& [page, p] : pages_) {
    out.emplace(page, RevisionAggregate{page, p.edits, p.editors.size(), p.created});
  }
  return out;
}

std::map<PageId, RevisionAggregate> aggregate_revisions(Source<RevisionEvent> events) {
  RevisionAggregator agg;
  RevisionEvent ev;
  while (events(ev)) agg.add(ev);
  return agg.result();
}

ExternalRevisionAggregator::ExternalRevisionAggregator(SortOptions options)
    : sorter_(std::move(options)) {}

void ExternalRevisionAggregator::add(const RevisionEvent& event) {
  if (event.page_id != current_page_) {
    flush_group();
    current_page_ = event.page_id;
  }
  ++events_;
  int64_t ts = event.timestamp.time_since_epoch().count();
  auto [it, inserted] =
      group_.try_emplace(event.contributor.identity(), 0, ts);
  ++it->second.first;
  it->second.second = std::min(it->second.second, ts);
}

void ExternalRevisionAggregator::flush_group() {
  for (auto& [identity, tally] : group_) {
    sorter_.add(EditorTally{current_page_, identity, tally.first, tally.second});
  }
  group_.clear();
}

Source<EditorTally> ExternalRevisionAggregator::finish() {
  flush_group();
  return sorter_.finish();
}

Source<RevisionAggregate> reduce_editor_tallies(Source<EditorTally> sorted) {
  struct State {
    Source<EditorTally> in;
    EditorTally head;
    bool has_head = false;
    bool primed = false;
  };
  auto st = std::make_shared<State>();
  st->in = std::move(sorted);
  return [st](RevisionAggregate& out) {
    if (!st->primed) {
      st->primed = true;
      st->has_head = st->in(st->head);
    }
    if (!st->has_head) return false;
    out = RevisionAggregate{st->head.page_id, 0, 0, Timestamp::max()};
    std::string last_identity;
    bool first = true;
    while (st->has_head && st->head.page_id == out.page_id) {
      out.edits += st->head.edits;
      out.created = std::min(
          out.created, Timestamp(std::chrono::seconds(st->head.first_edit)));
      if (first || st->head.identity != last_identity) {
        ++out.editors;
        last_identity = st->head.identity;
        first = false;
      }
      st->has_head = st->in(st->head);
    }
    return true;
  };
}

}  // namespace wikikg::ingest
