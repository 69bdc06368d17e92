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

#include "wikikg/graph/page_links.h"

#include <algorithm>

#include "wikikg/graph/title_index.h"

namespace wikikg::graph {
namespace {

struct LinkTarget {
  int32_t ns = 0;
  std::string key;
  PageId from = 0;

  auto tie() const { return std::tie(ns, key, from); }
  bool operator<(const LinkTarget& o) const { return tie() < o.tie(); }
  size_t heap_bytes() const { return key.capacity(); }

  template <class Archive>
  void serialize(Archive& ar) {
    ar(ns, key, from);
  }
};

using RedirectMap = std::vector<std::pair<PageId, PageId>>;

// Redirect pages with exactly one distinct outgoing edge, sorted by id.
RedirectMap collect_redirects(Source<PageLinkEdge> edges, Source<PageRecord> pages) {
  RedirectMap map;
  PageCursor cursor(std::move(pages));
  PageLinkEdge e;
  PageId from = 0;
  std::vector<PageId> targets;
  auto close = [&] {
    if (from == 0) return;
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    const PageRecord* p = cursor.seek(from);
    if (p && p->is_redirect && targets.size() == 1) map.emplace_back(from, targets[0]);
    targets.clear();
  };
  while (edges(e)) {
    if (e.from != from) {
      close();
      from = e.from;
    }
    targets.push_back(e.to);
  }
  close();
  return map;
}

}  // namespace

void build_page_links(Source<ingest::PageLinkRow> rows, const PageSourceFactory& pages,
                      const LinkOptions& options, const SortOptions& sort,
                      const Sink<PageLinkEdge>& out, Counters* counters) {
  for (const char* name : {"rows_in", "edges_out", "dropped_out_of_scope", "dropped_unresolved",
                           "dropped_orphan_source", "deduped", "self_links"}) {
    counters->add(name, 0);
  }
  ExternalSorter<LinkTarget> targets(sort);
  ingest::PageLinkRow row;
  while (rows(row)) {
    counters->add("rows_in");
    if (!options.scope.count(row.to_namespace)) {
      counters->add("dropped_out_of_scope");
      continue;
    }
    targets.add({row.to_namespace, title_key(row.to_title), row.from_page_id});
  }

  ExternalSorter<PageLinkEdge> edge_sorter(sort);
  {
    TitleCursor titles(pages_by_title(pages, sort));
    Source<LinkTarget> sorted = targets.finish();
    LinkTarget t;
    while (sorted(t)) {
      if (auto to = titles.seek(t.ns, t.key)) {
        edge_sorter.add({t.from, *to});
      } else {
        counters->add("dropped_unresolved");
      }
    }
  }
  Source<PageLinkEdge> edges = edge_sorter.finish();

  if (options.resolve_redirects) {
    auto run = RunFile<PageLinkEdge>::write(sort.temp_dir, std::move(edges));
    RedirectMap redirects = collect_redirects(run.open(), pages());
    counters->set("redirects_with_single_target", redirects.size());
    ExternalSorter<PageLinkEdge> retargeted(sort);
    Source<PageLinkEdge> again = run.open();
    PageLinkEdge e;
    while (again(e)) {
      auto it = std::lower_bound(redirects.begin(), redirects.end(),
                                 std::make_pair(e.to, PageId{0}));
      if (it != redirects.end() && it->first == e.to && it->second != e.to) {
        e.to = it->second;
        counters->add("redirects_followed");
      }
      retargeted.add(e);
    }
    edges = retargeted.finish();
  }

  PageCursor sources(pages());
  PageLinkEdge e, last{0, 0};
  while (edges(e)) {
    const PageRecord* from = sources.seek(e.from);
    if (!from) {
      counters->add("dropped_orphan_source");
    } else if (!options.scope.count(from->ns)) {
      counters->add("dropped_out_of_scope");
    } else if (e == last) {
      counters->add("deduped");
    } else {
      if (e.from == e.to) counters->add("self_links");
      counters->add("edges_out");
      out(e);
      last = e;
    }
  }
}

}  // namespace wikikg::graph
