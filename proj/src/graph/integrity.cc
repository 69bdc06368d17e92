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

#include "wikikg/graph/integrity.h"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

#include "wikikg/graph/tables.h"

namespace wikikg::graph {
namespace {

constexpr size_t kMaxSamples = 20;

class Checker {
 public:
  Checker(const std::filesystem::path& dir, IntegrityReport* report)
      : dir_(dir), report_(report) {}

  void fail(const std::string& table, const std::string& check, uint64_t line,
            const std::string& detail = {}) {
    report_->violations[table + "." + check]++;
    if (report_->samples.size() < kMaxSamples) {
      std::string s = table + ".tsv:" + std::to_string(line) + ": " + check;
      if (!detail.empty()) s += " (" + detail + ")";
      report_->samples.push_back(s);
    }
  }

  // Streams one table through `check`; false when it could not be read.
  template <typename T>
  bool scan(const std::string& file, const std::vector<std::string>& header,
            const std::function<void(const T&, uint64_t)>& check) {
    std::string table = file.substr(0, file.find('.'));
    std::filesystem::path path = dir_ / file;
    report_->rows[file] = 0;
    if (!std::filesystem::exists(path)) {
      fail(table, "missing", 0);
      return false;
    }
    TsvReader reader(path);
    if (reader.read_header() != header) {
      fail(table, "header", 1);
      return false;
    }
    std::vector<std::string> fields;
    T row;
    while (reader.next(&fields)) {
      report_->rows[file]++;
      if (!parse_row(fields, &row)) {
        fail(table, "malformed_row", reader.line_number());
        continue;
      }
      check(row, reader.line_number());
    }
    return true;
  }

 private:
  std::filesystem::path dir_;
  IntegrityReport* report_;
};

bool contains(const std::vector<int64_t>& sorted, int64_t id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

}  // namespace

uint64_t IntegrityReport::total_violations() const {
  uint64_t total = 0;
  for (const auto& [k, v] : violations) total += v;
  return total;
}

std::string IntegrityReport::render() const {
  std::ostringstream out;
  for (const auto& [file, n] : rows) out << "rows." << file << "=" << n << "\n";
  for (const auto& [check, n] : violations) out << "violations." << check << "=" << n << "\n";
  out << "violations.total=" << total_violations() << "\n";
  for (const auto& s : samples) out << "# " << s << "\n";
  return out.str();
}

IntegrityReport verify_integrity(const std::filesystem::path& dir,
                                 const std::vector<std::string>& schemes) {
  IntegrityReport report;
  Checker c(dir, &report);

  std::vector<int64_t> pages;
  c.scan<PageRecord>(kPageFile, page_header(), [&](const PageRecord& p, uint64_t line) {
    if (!pages.empty() && p.page_id <= pages.back()) {
      c.fail("page", p.page_id == pages.back() ? "duplicate_page_id" : "sort_order", line,
             std::to_string(p.page_id));
      if (p.page_id == pages.back()) return;
    }
    if (p.editors > p.edits) c.fail("page", "editors_exceed_edits", line);
    if (p.has_created() && p.edits == 0) c.fail("page", "created_without_edits", line);
    if (!p.has_created() && p.edits > 0) c.fail("page", "edits_without_created", line);
    pages.push_back(p.page_id);
  });
  std::sort(pages.begin(), pages.end());

  std::vector<int64_t> categories;
  std::vector<std::string> category_titles;
  c.scan<CategoryRecord>(kCategoryFile, category_header(),
                         [&](const CategoryRecord& r, uint64_t line) {
                           if (!categories.empty() && r.category_id <= categories.back()) {
                             c.fail("category", "sort_order", line);
                           }
                           if (r.pages < 0 || r.subcats < 0 || r.files < 0) {
                             c.fail("category", "negative_count", line);
                           }
                           categories.push_back(r.category_id);
                           category_titles.push_back(r.title);
                         });
  std::sort(categories.begin(), categories.end());
  if (std::adjacent_find(categories.begin(), categories.end()) != categories.end()) {
    c.fail("category", "duplicate_category_id", 0);
  }
  std::sort(category_titles.begin(), category_titles.end());
  if (std::adjacent_find(category_titles.begin(), category_titles.end()) !=
      category_titles.end()) {
    c.fail("category", "duplicate_title", 0);
  }

  {
    std::pair<PageId, std::string> last{0, ""};
    c.scan<ingest::PagePropRow>(
        kPagePropertyFile, page_property_header(),
        [&](const ingest::PagePropRow& r, uint64_t line) {
          std::pair<PageId, std::string> key{r.page_id, r.prop_name};
          if (key <= last) c.fail("page_property", "sort_order_or_duplicate", line);
          last = std::move(key);
          if (!contains(pages, r.page_id)) c.fail("page_property", "page_id", line);
        });
  }

  int64_t urls = 0;
  {
    std::string last;
    c.scan<UrlRecord>(kUrlFile, url_header(), [&](const UrlRecord& r, uint64_t line) {
      if (r.url_id != urls + 1) c.fail("url", "non_dense_id", line);
      if (urls > 0 && r.url <= last) c.fail("url", "sort_order_or_duplicate", line);
      urls = std::max(urls, r.url_id);
      last = r.url;
    });
  }

  int64_t pubs = 0;
  {
    std::string last;
    c.scan<PubRecord>(kPubFile, pub_header(schemes), [&](const PubRecord& r, uint64_t line) {
      if (r.pub_id != pubs + 1) c.fail("pub", "non_dense_id", line);
      if (pubs > 0 && r.key <= last) c.fail("pub", "sort_order_or_duplicate", line);
      if (r.columns.size() != schemes.size()) c.fail("pub", "width", line);
      if (std::all_of(r.columns.begin(), r.columns.end(),
                      [](const std::string& v) { return v.empty(); })) {
        c.fail("pub", "no_identifier", line);
      }
      pubs = std::max(pubs, r.pub_id);
      last = r.key;
    });
  }

  {
    std::tuple<PageId, int64_t> last{0, 0};
    c.scan<PageCategoryEdge>(kPageCategoryFile, page_category_header(),
                             [&](const PageCategoryEdge& e, uint64_t line) {
                               std::tuple<PageId, int64_t> key{e.page_id, e.category_id};
                               if (key <= last) {
                                 c.fail("page_category", "sort_order_or_duplicate", line);
                               }
                               last = key;
                               if (!contains(pages, e.page_id)) {
                                 c.fail("page_category", "page_id", line);
                               }
                               if (!contains(categories, e.category_id)) {
                                 c.fail("page_category", "category_id", line);
                               }
                             });
  }
  {
    PageLinkEdge last{0, 0};
    c.scan<PageLinkEdge>(kPageLinkFile, page_link_header(),
                         [&](const PageLinkEdge& e, uint64_t line) {
                           if (e <= last) c.fail("page_link", "sort_order_or_duplicate", line);
                           last = e;
                           if (!contains(pages, e.from)) c.fail("page_link", "from_page_id", line);
                           if (!contains(pages, e.to)) c.fail("page_link", "to_page_id", line);
                         });
  }
  {
    PagePubEdge last{0, 0};
    c.scan<PagePubEdge>(kPagePubFile, page_pub_header(), [&](const PagePubEdge& e, uint64_t line) {
      if (e <= last) c.fail("page_pub", "sort_order_or_duplicate", line);
      last = e;
      if (!contains(pages, e.page_id)) c.fail("page_pub", "page_id", line);
      if (e.pub_id > pubs) c.fail("page_pub", "pub_id", line, std::to_string(e.pub_id));
    });
  }
  {
    std::pair<PageId, int64_t> last{0, 0};
    c.scan<PageUrlEdge>(kPageUrlFile, page_url_header(), [&](const PageUrlEdge& e, uint64_t line) {
      std::pair<PageId, int64_t> key{e.page_id, e.url_id};
      if (key <= last) c.fail("page_url", "sort_order_or_duplicate", line);
      last = key;
      if (!contains(pages, e.page_id)) c.fail("page_url", "page_id", line);
      if (e.url_id > urls) c.fail("page_url", "url_id", line, std::to_string(e.url_id));
    });
  }
  return report;
}

}  // namespace wikikg::graph
