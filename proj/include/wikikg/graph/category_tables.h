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

#ifndef WIKIKG_GRAPH_CATEGORY_TABLES_H_
#define WIKIKG_GRAPH_CATEGORY_TABLES_H_

#include "wikikg/graph/records.h"
#include "wikikg/ingest/dump_tables.h"

namespace wikikg::graph {

// Category table (hash join, it is small), page_category edges and the
// page_property pass-through.
//  - categories: ascending category_id; hidden iff the namespace-14 page of
//    the same title carries a hiddencat property.
//  - edges: categorylinks whose title names a known category and whose
//    source page exists, deduplicated, ascending (page_id, category_id).
//  - properties: one row per (page_id, name) of an existing page, ascending.
void build_category_tables(Source<ingest::RawCategoryRow> categories,
                           Source<ingest::CategoryLinkRow> links,
                           Source<ingest::PagePropRow> props, const PageSourceFactory& pages,
                           const SortOptions& sort, const Sink<CategoryRecord>& category_out,
                           const Sink<PageCategoryEdge>& edge_out,
                           const Sink<ingest::PagePropRow>& property_out, Counters* counters);

}  // namespace wikikg::graph

#endif  // WIKIKG_GRAPH_CATEGORY_TABLES_H_
