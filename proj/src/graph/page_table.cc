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

#include "wikikg/graph/page_table.h"

#include "wikikg/graph/title_index.h"

namespace wikikg::graph {
namespace {

struct ByPageId {
  bool operator()(const PageRecord& a, const PageRecord& b) const {
    return a.page_id < b.page_id;
  }
};

struct RevisionRow {
  PageId page_id = 0;
  uint64_t edits = 0;
  uint64_t editors = 0;
  int64_t created = 0;

  bool operator<(const RevisionRow& o) const {
    return std::tie(page_id, edits, editors, created) <
           std::tie(o.page_id, o.edits, o.editors, o.created);
  }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(page_id, edits, editors, created);
  }
};

struct TallyIdLess {
  bool operator()(const PageTally& a, const PageTally& b) const { return a.page_id < b.page_id; }
};

PageRecord from_raw(ingest::RawPageRow&& raw) {
  PageRecord p;
  p.page_id = raw.page_id;
  p.ns = raw.ns;
  p.title = std::move(raw.title);
  p.is_redirect = raw.is_redirect;
  p.is_new = raw.is_new;
  p.restrictions = std::move(raw.restrictions);
  p.touched = raw.touched ? raw.touched->time_since_epoch().count() : kNoTime;
  p.length = raw.length_bytes;
  return p;
}

// Sums equal keys of a sorted tally stream.
Source<PageTally> reduce_tallies(Source<PageTally> sorted) {
  auto pending = std::make_shared<PageTally>();
  auto has = std::make_shared<bool>(sorted(*pending));
  return [sorted, pending, has](PageTally& out) mutable {
    if (!*has) return false;
    out = std::move(*pending);
    while ((*has = sorted(*pending))) {
      if (pending->page_id != out.page_id || pending->ns != out.ns ||
          pending->title != out.title) {
        break;
      }
      out.views += pending->views;
      out.references += pending->references;
    }
    return true;
  };
}

}  // namespace

void build_page_table(Source<ingest::RawPageRow> pages,
                      Source<ingest::RevisionAggregate> revisions, Source<PageTally> tallies,
                      const SortOptions& sort, const Sink<PageRecord>& out, Counters* counters) {
  // Report every counter even when it stays zero.
  for (const char* name :
       {"tally_titles_unresolved", "views_unresolved", "references_unresolved",
        "revision_aggregates_without_page", "pages_without_revisions", "views_orphan",
        "references_orphan", "views_joined", "references_joined"}) {
    counters->set(name, 0);
  }
  // Base pages sorted by id; a stable sort keeps duplicates adjacent.
  ExternalSorter<PageRecord, ByPageId> page_sorter(sort);
  ingest::RawPageRow raw;
  while (pages(raw)) page_sorter.add(from_raw(std::move(raw)));
  Source<PageRecord> sorted_pages = page_sorter.finish();
  PageId last = 0;
  auto checked = [&sorted_pages, &last](PageRecord& p) {
    if (!sorted_pages(p)) return false;
    if (p.page_id == last) throw DuplicatePageId(p.page_id);
    last = p.page_id;
    return true;
  };
  auto base = RunFile<PageRecord>::write(sort.temp_dir, checked);
  counters->set("pages", base.count());
  PageSourceFactory base_pages = [&base] { return base.open(); };

  ExternalSorter<RevisionRow> rev_sorter(sort);
  ingest::RevisionAggregate agg;
  while (revisions(agg)) {
    rev_sorter.add({agg.page_id, agg.edits, agg.editors, agg.created.time_since_epoch().count()});
  }
  Source<RevisionRow> revs = rev_sorter.finish();

  ExternalSorter<PageTally> tally_sorter(sort);
  PageTally t;
  while (tallies(t)) {
    if (t.page_id == 0) {
      t.title = title_key(t.title);
    } else {
      t.ns = 0;
      t.title.clear();
    }
    tally_sorter.add(std::move(t));
  }
  Source<PageTally> reduced = reduce_tallies(tally_sorter.finish());

  // Title-keyed tallies sort first (page_id 0), ordered by (ns, title).
  ExternalSorter<PageTally> resolved_sorter(sort);
  TitleCursor titles(pages_by_title(base_pages, sort));
  PageTally tally;
  bool has_tally = reduced(tally);
  while (has_tally && tally.page_id == 0) {
    if (auto id = titles.seek(tally.ns, tally.title)) {
      resolved_sorter.add({*id, 0, {}, tally.views, tally.references});
    } else {
      counters->add("tally_titles_unresolved");
      counters->add("views_unresolved", tally.views);
      counters->add("references_unresolved", tally.references);
    }
    has_tally = reduced(tally);
  }
  auto id_tallies = [&has_tally, &tally, &reduced](PageTally& o) {
    if (!has_tally) return false;
    o = std::move(tally);
    has_tally = reduced(tally);
    return true;
  };
  Source<PageTally> by_id = reduce_tallies(
      merge_sources<PageTally, TallyIdLess>({id_tallies, resolved_sorter.finish()}));

  Source<PageRecord> page_source = base.open();
  PageRecord page;
  RevisionRow rev;
  bool has_rev = revs(rev);
  PageTally sum;
  bool has_sum = by_id(sum);
  while (page_source(page)) {
    while (has_rev && rev.page_id < page.page_id) {
      counters->add("revision_aggregates_without_page");
      has_rev = revs(rev);
    }
    if (has_rev && rev.page_id == page.page_id) {
      page.edits = rev.edits;
      page.editors = rev.editors;
      page.created = rev.created;
      has_rev = revs(rev);
    } else {
      counters->add("pages_without_revisions");
    }
    while (has_sum && sum.page_id < page.page_id) {
      counters->add("views_orphan", sum.views);
      counters->add("references_orphan", sum.references);
      has_sum = by_id(sum);
    }
    if (has_sum && sum.page_id == page.page_id) {
      page.views = sum.views;
      page.references = sum.references;
      counters->add("views_joined", sum.views);
      counters->add("references_joined", sum.references);
      has_sum = by_id(sum);
    }
    out(page);
  }
  for (; has_rev; has_rev = revs(rev)) counters->add("revision_aggregates_without_page");
  for (; has_sum; has_sum = by_id(sum)) {
    counters->add("views_orphan", sum.views);
    counters->add("references_orphan", sum.references);
  }
}

}  // namespace wikikg::graph
