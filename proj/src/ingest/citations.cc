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

#include "wikikg/ingest/citations.h"

#include "wikikg/common/error.h"
#include "wikikg/common/text.h"
#include "wikikg/common/tsv.h"

namespace wikikg::ingest {
namespace {

void split_fields(std::string_view line, char delim, std::vector<std::string>* out) {
  if (delim == '\t') {
    split_tsv_line(line, out);
    return;
  }
  out->clear();
  for (auto f : split(line, delim)) out->emplace_back(f);
}

bool is_scheme_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-';
}

// True when text[pos..] starts with "<scheme>=".
bool starts_pair(std::string_view text, size_t pos) {
  size_t i = pos;
  while (i < text.size() && is_scheme_char(text[i])) ++i;
  return i > pos && i < text.size() && text[i] == '=';
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_identifier_list(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  text = trim(text);
  if (text.size() >= 2 && text.front() == '{' && text.back() == '}') {
    text = text.substr(1, text.size() - 2);
  }
  size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (!starts_pair(text, pos)) break;
    size_t eq = text.find('=', pos);
    std::string scheme = to_lower_ascii(text.substr(pos, eq - pos));
    // Value runs to the next ", <scheme>=" boundary.
    size_t end = eq + 1;
    while (true) {
      size_t comma = text.find(',', end);
      if (comma == std::string_view::npos) {
        end = text.size();
        break;
      }
      size_t next = comma + 1;
      while (next < text.size() && text[next] == ' ') ++next;
      if (starts_pair(text, next)) {
        end = comma;
        break;
      }
      end = comma + 1;
    }
    std::string value(trim(text.substr(eq + 1, end - eq - 1)));
    if (!value.empty()) out.emplace_back(std::move(scheme), std::move(value));
    pos = end + 1;
  }
  return out;
}

CitationParser::CitationParser(std::istream& in, CitationColumns columns,
                               std::string source_name)
    : in_(in), columns_(std::move(columns)), source_name_(std::move(source_name)) {
  if (!std::getline(in_, line_)) return;
  if (!line_.empty() && line_.back() == '\r') line_.pop_back();
  split_fields(line_, columns_.delimiter, &fields_);
  width_ = fields_.size();
  auto find = [&](const std::string& name, bool required) {
    if (name.empty()) return -1;
    for (size_t i = 0; i < fields_.size(); ++i) {
      if (fields_[i] == name) return static_cast<int>(i);
    }
    if (required) {
      throw ConfigError(source_name_ + ": header lacks column '" + name + "'");
    }
    return -1;
  };
  page_id_ = find(columns_.page_id, false);
  page_title_ = find(columns_.page_title, false);
  if (page_id_ < 0 && page_title_ < 0) {
    throw ConfigError(source_name_ + ": neither page id nor page title column found");
  }
  url_ = find(columns_.url, true);
  type_ = find(columns_.resource_type, false);
  id_list_ = find(columns_.id_list, false);
  for (const auto& [scheme, col] : columns_.id_columns) {
    id_columns_.emplace_back(to_lower_ascii(scheme), find(col, true));
  }
  for (const auto& col : columns_.field_columns) {
    field_columns_.emplace_back(col, find(col, true));
  }
}

bool CitationParser::parse_row(const std::vector<std::string>& f, CitationRecord* rec) {
  if (f.size() != width_) return false;
  rec->source_page_id = 0;
  if (page_id_ >= 0 && !trim(f[page_id_]).empty()) {
    auto id = parse_int64(trim(f[page_id_]));
    if (!id || *id < 0) return false;
    rec->source_page_id = *id;
  }
  rec->source_page_title = page_title_ >= 0 ? f[page_title_] : std::string();
  if (rec->source_page_id == 0 && rec->source_page_title.empty()) return false;

  rec->raw_identifiers.clear();
  if (id_list_ >= 0) rec->raw_identifiers = parse_identifier_list(f[id_list_]);
  for (const auto& [scheme, col] : id_columns_) {
    std::string_view v = trim(f[col]);
    if (!v.empty()) rec->raw_identifiers.emplace_back(scheme, std::string(v));
  }
  rec->raw_urls.clear();
  if (url_ >= 0) {
    std::string_view u = trim(f[url_]);
    if (!u.empty()) rec->raw_urls.emplace_back(f[url_]);
  }
  rec->resource_type = type_ >= 0 ? f[type_] : std::string();
  rec->citation_fields.clear();
  for (const auto& [name, col] : field_columns_) rec->citation_fields[name] = f[col];
  return true;
}

bool CitationParser::next(CitationRecord* record) {
  while (width_ > 0 && std::getline(in_, line_)) {
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    if (line_.empty()) continue;
    counters_.add("rows");
    split_fields(line_, columns_.delimiter, &fields_);
    if (!parse_row(fields_, record)) {
      counters_.add("malformed_rows");
      continue;
    }
    counters_.add("records");
    if (record->raw_identifiers.empty() && record->raw_urls.empty()) {
      counters_.add("records_without_ids_or_urls");
    }
    return true;
  }
  uint64_t rows = counters_.get("rows");
  uint64_t bad = counters_.get("malformed_rows");
  if (bad > 0 && static_cast<double>(bad) >
                     columns_.max_malformed_fraction * static_cast<double>(rows)) {
    throw TooManyMalformed(source_name_, bad, rows);
  }
  return false;
}

}  // namespace wikikg::ingest
