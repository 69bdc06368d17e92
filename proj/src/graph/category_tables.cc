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

#include "wikikg/graph/category_tables.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "wikikg/graph/title_index.h"

namespace wikikg::graph {
namespace {

struct PropLess {
  bool operator()(const ingest::PagePropRow& a, const ingest::PagePropRow& b) const {
    return std::tie(a.page_id, a.prop_name, a.prop_value) <
           std::tie(b.page_id, b.prop_name, b.prop_value);
  }
};

}  // namespace

void build_category_tables(Source<ingest::RawCategoryRow> categories,
                           Source<ingest::CategoryLinkRow> links,
                           Source<ingest::PagePropRow> props, const PageSourceFactory& pages,
                           const SortOptions& sort, const Sink<CategoryRecord>& category_out,
                           const Sink<PageCategoryEdge>& edge_out,
                           const Sink<ingest::PagePropRow>& property_out, Counters* counters) {
  for (const char* name :
       {"categories_in", "categories_out", "category_links_in", "category_links_out",
        "category_links_unresolved", "category_links_orphan_page", "category_links_deduped",
        "properties_in", "properties_out", "properties_orphan_page", "properties_deduped"}) {
    counters->add(name, 0);
  }

  // Properties first: they decide which categories are hidden.
  std::unordered_set<std::string> hidden_titles;
  {
    ExternalSorter<ingest::PagePropRow, PropLess> sorter(sort);
    ingest::PagePropRow prop;
    while (props(prop)) {
      counters->add("properties_in");
      sorter.add(std::move(prop));
    }
    Source<ingest::PagePropRow> sorted = sorter.finish();
    PageCursor cursor(pages());
    PageId last_page = 0;
    std::string last_name;
    while (sorted(prop)) {
      const PageRecord* page = cursor.seek(prop.page_id);
      if (!page) {
        counters->add("properties_orphan_page");
        continue;
      }
      if (prop.page_id == last_page && prop.prop_name == last_name) {
        counters->add("properties_deduped");
        continue;
      }
      last_page = prop.page_id;
      last_name = prop.prop_name;
      if (prop.prop_name == "hiddencat" && page->ns == 14) {
        hidden_titles.insert(title_key(page->title));
      }
      counters->add("properties_out");
      property_out(prop);
    }
  }

  std::vector<CategoryRecord> table;
  ingest::RawCategoryRow raw;
  while (categories(raw)) {
    counters->add("categories_in");
    table.push_back({raw.category_id, std::move(raw.title), raw.pages, raw.subcats, raw.files,
                     false});
  }
  std::sort(table.begin(), table.end(), [](const CategoryRecord& a, const CategoryRecord& b) {
    return std::tie(a.category_id, a.title) < std::tie(b.category_id, b.title);
  });
  std::unordered_map<std::string, int64_t> by_title;
  int64_t last_id = 0;
  for (auto& c : table) {
    if (c.category_id == last_id) {
      counters->add("categories_duplicate_id");
      continue;
    }
    last_id = c.category_id;
    std::string key = title_key(c.title);
    if (!by_title.emplace(key, c.category_id).second) {
      counters->add("categories_duplicate_title");
    }
    c.hidden = hidden_titles.count(key) > 0;
    if (c.hidden) counters->add("categories_hidden");
    counters->add("categories_out");
    category_out(c);
  }

  ExternalSorter<PageCategoryEdge> edges(sort);
  ingest::CategoryLinkRow link;
  while (links(link)) {
    counters->add("category_links_in");
    auto it = by_title.find(title_key(link.to_category_title));
    if (it == by_title.end()) {
      counters->add("category_links_unresolved");
      continue;
    }
    edges.add({link.from_page_id, it->second, link.link_type});
  }
  Source<PageCategoryEdge> sorted = edges.finish();
  PageCursor cursor(pages());
  PageCategoryEdge e, last;
  while (sorted(e)) {
    if (!cursor.seek(e.page_id)) {
      counters->add("category_links_orphan_page");
    } else if (e.page_id == last.page_id && e.category_id == last.category_id) {
      counters->add("category_links_deduped");
    } else {
      counters->add("category_links_out");
      edge_out(e);
      last = e;
    }
  }
}

}  // namespace wikikg::graph
