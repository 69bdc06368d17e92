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

#ifndef WIKIKG_INGEST_CITATIONS_H_
#define WIKIKG_INGEST_CITATIONS_H_

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wikikg/common/counters.h"

namespace wikikg::ingest {

struct CitationRecord {
  PageId source_page_id = 0;  // 0 when only the title is known
  std::string source_page_title;
  std::vector<std::pair<std::string, std::string>> raw_identifiers;
  std::vector<std::string> raw_urls;
  std::string resource_type;
  std::map<std::string, std::string> citation_fields;
};

// Binds dataset columns (by header name) to CitationRecord fields. Empty
// names disable a binding.
struct CitationColumns {
  char delimiter = '\t';
  std::string page_id = "page_id";
  std::string page_title = "page_title";
  std::string url = "URL";
  std::string resource_type = "type_of_citation";
  // Column holding "{DOI=10.1/x, ISBN=978...}" style identifier lists.
  std::string id_list = "ID_list";
  // (scheme, column) pairs for datasets with one column per identifier.
  std::vector<std::pair<std::string, std::string>> id_columns;
  std::vector<std::string> field_columns;
  double max_malformed_fraction = 0.01;
};

// Splits "{DOI=10.1/x, ISBN=978-0}" into (scheme, value) pairs. Schemes are
// lower-cased. Values may themselves contain ", " as long as the text that
// follows is not "<word>=".
std::vector<std::pair<std::string, std::string>> parse_identifier_list(std::string_view text);

// Reads one CitationRecord per row of a delimited citations file with a
// header line. Rows carrying neither identifiers nor URLs are still yielded.
class CitationParser {
 public:
  CitationParser(std::istream& in, CitationColumns columns,
                 std::string source_name = "citations");

  bool next(CitationRecord* record);
  const Counters& counters() const { return counters_; }

 private:
  bool parse_row(const std::vector<std::string>& fields, CitationRecord* rec);

  std::istream& in_;
  CitationColumns columns_;
  std::string source_name_;
  std::string line_;
  std::vector<std::string> fields_;
  size_t width_ = 0;
  int page_id_ = -1, page_title_ = -1, url_ = -1, type_ = -1, id_list_ = -1;
  std::vector<std::pair<std::string, int>> id_columns_;
  std::vector<std::pair<std::string, int>> field_columns_;
  Counters counters_;
};

}  // namespace wikikg::ingest

#endif  // WIKIKG_INGEST_CITATIONS_H_
