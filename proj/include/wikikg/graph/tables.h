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

#ifndef WIKIKG_GRAPH_TABLES_H_
#define WIKIKG_GRAPH_TABLES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "wikikg/common/error.h"
#include "wikikg/common/tsv.h"
#include "wikikg/graph/records.h"

namespace wikikg::graph {

// File names of the nine graph tables.
inline constexpr const char* kPageFile = "page.tsv";
inline constexpr const char* kCategoryFile = "category.tsv";
inline constexpr const char* kPagePropertyFile = "page_property.tsv";
inline constexpr const char* kPubFile = "pub.tsv";
inline constexpr const char* kUrlFile = "url.tsv";
inline constexpr const char* kPageCategoryFile = "page_category.tsv";
inline constexpr const char* kPageLinkFile = "page_link.tsv";
inline constexpr const char* kPagePubFile = "page_pub.tsv";
inline constexpr const char* kPageUrlFile = "page_url.tsv";

std::vector<std::string> graph_files();

std::vector<std::string> page_header();
std::vector<std::string> category_header();
std::vector<std::string> page_property_header();
std::vector<std::string> url_header();
std::vector<std::string> pub_header(const std::vector<std::string>& schemes);
std::vector<std::string> page_category_header();
std::vector<std::string> page_link_header();
std::vector<std::string> page_pub_header();
std::vector<std::string> page_url_header();

// A table file that does not match its documented layout.
class TableFormatError : public Error {
 public:
  using Error::Error;
};

void write_row(TsvWriter& w, const PageRecord& r);
void write_row(TsvWriter& w, const CategoryRecord& r);
void write_row(TsvWriter& w, const ingest::PagePropRow& r);
void write_row(TsvWriter& w, const UrlRecord& r);
void write_row(TsvWriter& w, const PubRecord& r);
void write_row(TsvWriter& w, const PageCategoryEdge& r);
void write_row(TsvWriter& w, const PageLinkEdge& r);
void write_row(TsvWriter& w, const PagePubEdge& r);
void write_row(TsvWriter& w, const PageUrlEdge& r);

// Strict field parsers; false when a field is out of its domain.
bool parse_row(const std::vector<std::string>& f, PageRecord* r);
bool parse_row(const std::vector<std::string>& f, CategoryRecord* r);
bool parse_row(const std::vector<std::string>& f, ingest::PagePropRow* r);
bool parse_row(const std::vector<std::string>& f, UrlRecord* r);
bool parse_row(const std::vector<std::string>& f, PubRecord* r);
bool parse_row(const std::vector<std::string>& f, PageCategoryEdge* r);
bool parse_row(const std::vector<std::string>& f, PageLinkEdge* r);
bool parse_row(const std::vector<std::string>& f, PagePubEdge* r);
bool parse_row(const std::vector<std::string>& f, PageUrlEdge* r);

// Streams a table, checking the header against `header` (only its first
// column for pub.tsv, whose width follows the vocabulary). Unparseable rows
// raise TableFormatError naming the file and line.
template <typename T>
Source<T> read_table(const std::filesystem::path& path, const std::vector<std::string>& header) {
  auto reader = std::make_shared<TsvReader>(path);
  const auto& got = reader->read_header();
  bool pub = path.filename() == kPubFile;
  if (pub ? (got.size() < 2 || got[0] != header[0]) : got != header) {
    throw TableFormatError(path.string() + ": unexpected header");
  }
  auto fields = std::make_shared<std::vector<std::string>>();
  return [reader, fields, path](T& out) {
    if (!reader->next(fields.get())) return false;
    if (!parse_row(*fields, &out)) {
      throw TableFormatError(path.string() + ":" + std::to_string(reader->line_number()) +
                             ": malformed row");
    }
    return true;
  };
}

// Writes every record of `source` under `header`; returns the row count.
template <typename T>
uint64_t write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                     Source<T> source) {
  TsvWriter w(path, header);
  T value;
  while (source(value)) write_row(w, value);
  w.close();
  return w.rows();
}

}  // namespace wikikg::graph

#endif  // WIKIKG_GRAPH_TABLES_H_
