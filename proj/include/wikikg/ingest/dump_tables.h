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

#ifndef WIKIKG_INGEST_DUMP_TABLES_H_
#define WIKIKG_INGEST_DUMP_TABLES_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "wikikg/common/counters.h"
#include "wikikg/common/time.h"
#include "wikikg/ingest/sql_dump.h"

namespace wikikg::ingest {

struct RawPageRow {
  PageId page_id = 0;
  int32_t ns = 0;
  std::string title;
  bool is_redirect = false;
  bool is_new = false;
  std::string restrictions;
  std::optional<Timestamp> touched;
  int64_t length_bytes = 0;
};

struct RawCategoryRow {
  int64_t category_id = 0;
  std::string title;
  int64_t pages = 0;
  int64_t subcats = 0;
  int64_t files = 0;
};

enum class CategoryLinkType { kPage, kSubcat, kFile };

const char* to_string(CategoryLinkType t);
std::optional<CategoryLinkType> parse_category_link_type(std::string_view s);

struct CategoryLinkRow {
  PageId from_page_id = 0;
  std::string to_category_title;
  CategoryLinkType link_type = CategoryLinkType::kPage;
};

struct PagePropRow {
  PageId page_id = 0;
  std::string prop_name;
  std::string prop_value;
};

struct PageLinkRow {
  PageId from_page_id = 0;
  int32_t to_namespace = 0;
  std::string to_title;
};

struct ExternalLinkRow {
  PageId from_page_id = 0;
  std::string raw_url;
};

// Column layouts of the 2021-era dumps. Each can be replaced from
// configuration when a dump uses a different table revision.
SqlSchema default_page_schema();
SqlSchema default_category_schema();
SqlSchema default_categorylinks_schema();
SqlSchema default_page_props_schema();
SqlSchema default_pagelinks_schema();
SqlSchema default_externallinks_schema();

// Reconstructs a URL from the reversed-host index form used by newer
// externallinks dumps: ("https://org.example.www.", "/path") ->
// "https://www.example.org/path".
std::string url_from_domain_index(std::string_view domain_index,
                                  std::string_view path);

// Reads typed rows from a SQL dump. Rows violating the row invariants (e.g.
// non-positive ids, empty titles) are skipped and counted as "invalid_rows".
template <typename Row>
class DumpTableReader {
 public:
  DumpTableReader(std::istream& in, SqlSchema schema);
  bool next(Row* row);
  const Counters& counters() const { return counters_; }

 private:
  SqlSchema schema_;
  SqlDumpParser parser_;
  std::vector<int> index_;
  SqlRow raw_;
  Counters counters_;
};

using PageTableReader = DumpTableReader<RawPageRow>;
using CategoryTableReader = DumpTableReader<RawCategoryRow>;
using CategoryLinkReader = DumpTableReader<CategoryLinkRow>;
using PagePropReader = DumpTableReader<PagePropRow>;
using PageLinkReader = DumpTableReader<PageLinkRow>;
using ExternalLinkReader = DumpTableReader<ExternalLinkRow>;

}  // namespace wikikg::ingest

#endif  // WIKIKG_INGEST_DUMP_TABLES_H_
