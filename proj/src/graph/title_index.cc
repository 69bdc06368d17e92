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

#include "wikikg/graph/title_index.h"

namespace wikikg::graph {

std::string title_key(std::string_view title) {
  std::string key;
  key.reserve(title.size());
  for (char c : title) {
    if (c == ' ' || c == '_') {
      if (!key.empty() && key.back() != '_') key.push_back('_');
    } else {
      key.push_back(c);
    }
  }
  if (!key.empty() && key.back() == '_') key.pop_back();
  if (!key.empty() && key[0] >= 'a' && key[0] <= 'z') key[0] = static_cast<char>(key[0] - 32);
  return key;
}

void PageIndex::add(PageId page_id, int32_t ns, std::string_view title) {
  auto [it, inserted] = index_.emplace(std::make_pair(ns, title_key(title)), page_id);
  if (!inserted && page_id < it->second) it->second = page_id;
}

std::optional<PageId> PageIndex::find(int32_t ns, std::string_view title) const {
  auto it = index_.find(std::make_pair(ns, title_key(title)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<PageId> resolve_title(int32_t ns, std::string_view title, const PageIndex& index) {
  return index.find(ns, title);
}

Source<TitleEntry> pages_by_title(const PageSourceFactory& pages, const SortOptions& sort) {
  ExternalSorter<TitleEntry> sorter(sort);
  Source<PageRecord> source = pages();
  PageRecord page;
  while (source(page)) sorter.add({page.ns, title_key(page.title), page.page_id});
  return sorter.finish();
}

TitleCursor::TitleCursor(Source<TitleEntry> titles) : titles_(std::move(titles)) {
  has_ = titles_(current_);
}

std::optional<PageId> TitleCursor::seek(int32_t ns, const std::string& key) {
  while (has_ && std::tie(current_.ns, current_.key) < std::tie(ns, key)) {
    has_ = titles_(current_);
  }
  if (has_ && current_.ns == ns && current_.key == key) return current_.page_id;
  return std::nullopt;
}

PageCursor::PageCursor(Source<PageRecord> pages) : pages_(std::move(pages)) {
  has_ = pages_(current_);
}

const PageRecord* PageCursor::seek(PageId id) {
  while (has_ && current_.page_id < id) has_ = pages_(current_);
  if (has_ && current_.page_id == id) return &current_;
  return nullptr;
}

}  // namespace wikikg::graph
