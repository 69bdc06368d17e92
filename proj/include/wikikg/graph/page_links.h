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

#ifndef WIKIKG_GRAPH_PAGE_LINKS_H_
#define WIKIKG_GRAPH_PAGE_LINKS_H_

#include <set>

#include "wikikg/graph/records.h"
#include "wikikg/ingest/dump_tables.h"

namespace wikikg::graph {

struct LinkOptions {
  // Namespaces both ends of a link must belong to.
  std::set<int32_t> scope = {0};
  // Retarget links to a redirect page at the redirect's single target.
  bool resolve_redirects = false;
};

// Resolves link targets by title and emits deduplicated (from, to) edges in
// ascending order. Every input row ends up in exactly one of the counters
// edges_out, dropped_out_of_scope, dropped_unresolved, dropped_orphan_source
// or deduped; self_links counts retained edges with from == to.
void build_page_links(Source<ingest::PageLinkRow> rows, const PageSourceFactory& pages,
                      const LinkOptions& options, const SortOptions& sort,
                      const Sink<PageLinkEdge>& out, Counters* counters);

}  // namespace wikikg::graph

#endif  // WIKIKG_GRAPH_PAGE_LINKS_H_
