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

#ifndef WIKIKG_INGEST_PAGEVIEWS_H_
#define WIKIKG_INGEST_PAGEVIEWS_H_

#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "wikikg/common/counters.h"
#include "wikikg/common/external_sort.h"
#include "wikikg/common/time.h"

namespace wikikg::ingest {

struct PageViewRecord {
  PageId page_id = 0;  // 0 when the source has none
  std::string title;
  int32_t ns = 0;
  Date date{};
  uint64_t count = 0;
};

// Zero-based column positions; -1 marks an absent column.
struct PageviewColumns {
  char delimiter = '\t';
  int wiki = 0;
  int title = 1;
  int page_id = 2;
  int ns = -1;
  int agent = -1;
  int count = 4;
  int date = -1;
};

struct PageviewFilter {
  std::string wiki_code;  // empty accepts every wiki
  DateRange window{};
  std::set<std::string> agents;  // empty accepts every agent type
  // Used when the file has no date / agent column (one file per day).
  std::optional<Date> file_date;
  std::string file_agent;
  double max_malformed_fraction = 0.01;
};

// Parses delimited pageview lines. Malformed lines are skipped and counted;
// exceeding the malformed tolerance raises TooManyMalformed at end of input.
class PageviewParser {
 public:
  PageviewParser(std::istream& in, PageviewColumns columns,
                 PageviewFilter filter, std::string source_name = "pageviews");

  bool next(PageViewRecord* record);
  const Counters& counters() const { return counters_; }

 private:
  bool parse_line(std::string_view line, PageViewRecord* record);

  std::istream& in_;
  PageviewColumns columns_;
  PageviewFilter filter_;
  std::string source_name_;
  std::string line_;
  int min_fields_ = 0;
  Counters counters_;
};

// First valid YYYYMMDD run in a file name, e.g. "pageviews-20210401-user".
std::optional<Date> date_from_filename(std::string_view name);
// "user", "spider" or "automated" when the file name carries one.
std::string agent_from_filename(std::string_view name);

struct NsTitle {
  int32_t ns = 0;
  std::string title;
  auto operator<=>(const NsTitle&) const = default;
};

// page_id when the source provides one, otherwise (namespace, title).
using PageKey = std::variant<PageId, NsTitle>;

PageKey page_key(const PageViewRecord& record);

std::map<PageKey, uint64_t> aggregate_views(Source<PageViewRecord> records);

// Pages absent from the views stream have zero views.
uint64_t views_for(const std::map<PageKey, uint64_t>& totals, const PageKey& key);

}  // namespace wikikg::ingest

#endif  // WIKIKG_INGEST_PAGEVIEWS_H_
