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

#include "wikikg/ingest/pageviews.h"

#include <algorithm>

#include "wikikg/common/error.h"
#include "wikikg/common/text.h"

namespace wikikg::ingest {

PageviewParser::PageviewParser(std::istream& in, PageviewColumns columns,
                               PageviewFilter filter, std::string source_name)
    : in_(in),
      columns_(columns),
      filter_(std::move(filter)),
      source_name_(std::move(source_name)) {
  if (columns_.title < 0 || columns_.count < 0) {
    throw ConfigError("pageview columns must include title and count");
  }
  if (columns_.date < 0 && !filter_.file_date) {
    throw ConfigError(source_name_ + ": no date column and no date in file name");
  }
  min_fields_ = 1 + std::max({columns_.wiki, columns_.title, columns_.page_id,
                              columns_.ns, columns_.agent, columns_.count,
                              columns_.date});
}

bool PageviewParser::parse_line(std::string_view line, PageViewRecord* rec) {
  auto fields = split(line, columns_.delimiter);
  if (static_cast<int>(fields.size()) < min_fields_) return false;
  auto field = [&](int idx) { return fields[static_cast<size_t>(idx)]; };

  auto count = parse_uint64(field(columns_.count));
  if (!count) return false;
  rec->title = std::string(field(columns_.title));
  if (rec->title.empty()) return false;
  rec->count = *count;

  rec->page_id = 0;
  if (columns_.page_id >= 0) {
    std::string_view id = field(columns_.page_id);
    if (!id.empty() && id != "null" && id != "NULL" && id != "-") {
      auto v = parse_int64(id);
      if (!v || *v < 0) return false;
      rec->page_id = *v;
    }
  }
  rec->ns = 0;
  if (columns_.ns >= 0) {
    auto v = parse_int64(field(columns_.ns));
    if (!v) return false;
    rec->ns = static_cast<int32_t>(*v);
  }
  if (columns_.date >= 0) {
    auto d = parse_date(field(columns_.date));
    if (!d) return false;
    rec->date = *d;
  } else {
    rec->date = *filter_.file_date;
  }
  return true;
}

bool PageviewParser::next(PageViewRecord* record) {
  while (std::getline(in_, line_)) {
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    if (trim(line_).empty()) continue;
    counters_.add("lines");
    if (!parse_line(line_, record)) {
      counters_.add("malformed_lines");
      continue;
    }
    auto fields = split(line_, columns_.delimiter);
    if (!filter_.wiki_code.empty() && columns_.wiki >= 0 &&
        fields[static_cast<size_t>(columns_.wiki)] != filter_.wiki_code) {
      counters_.add("dropped_other_wiki");
      continue;
    }
    if (!filter_.window.contains(record->date)) {
      counters_.add("dropped_outside_window");
      continue;
    }
    if (!filter_.agents.empty()) {
      std::string agent = columns_.agent >= 0
                              ? std::string(fields[static_cast<size_t>(columns_.agent)])
                              : filter_.file_agent;
      if (!filter_.agents.count(agent)) {
        counters_.add("dropped_agent");
        continue;
      }
    }
    counters_.add("records");
    return true;
  }
  uint64_t lines = counters_.get("lines");
  uint64_t bad = counters_.get("malformed_lines");
  if (bad > 0 && static_cast<double>(bad) >
                     filter_.max_malformed_fraction * static_cast<double>(lines)) {
    throw TooManyMalformed(source_name_, bad, lines);
  }
  return false;
}

std::optional<Date> date_from_filename(std::string_view name) {
  for (size_t i = 0; i + 8 <= name.size(); ++i) {
    if (i > 0 && name[i - 1] >= '0' && name[i - 1] <= '9') continue;
    if (i + 8 < name.size() && name[i + 8] >= '0' && name[i + 8] <= '9') continue;
    if (auto d = parse_date(name.substr(i, 8))) return d;
  }
  return std::nullopt;
}

std::string agent_from_filename(std::string_view name) {
  for (const char* agent : {"user", "spider", "automated"}) {
    if (name.find(std::string("-") + agent) != std::string_view::npos) return agent;
  }
  return {};
}

PageKey page_key(const PageViewRecord& record) {
  if (record.page_id > 0) return record.page_id;
  return NsTitle{record.ns, record.title};
}

std::map<PageKey, uint64_t> aggregate_views(Source<PageViewRecord> records) {
  std::map<PageKey, uint64_t> totals;
  PageViewRecord rec;
  while (records(rec)) totals[page_key(rec)] += rec.count;
  return totals;
}

uint64_t views_for(const std::map<PageKey, uint64_t>& totals, const PageKey& key) {
  auto it = totals.find(key);
  return it == totals.end() ? 0 : it->second;
}

}  // namespace wikikg::ingest
