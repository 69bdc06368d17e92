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

#include "wikikg/ingest/dump_tables.h"

#include <algorithm>

#include "wikikg/common/text.h"

namespace wikikg::ingest {
namespace {

std::optional<int64_t> as_int(const SqlValue& v) {
  if (auto* i = std::get_if<int64_t>(&v)) return *i;
  if (auto* s = std::get_if<std::string>(&v)) return parse_int64(*s);
  return std::nullopt;
}

std::string as_text(const SqlValue& v) {
  if (auto* s = std::get_if<std::string>(&v)) return *s;
  if (auto* i = std::get_if<int64_t>(&v)) return std::to_string(*i);
  return {};
}

int find_column(const SqlSchema& schema, std::string_view name) {
  for (size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int require_column(const SqlSchema& schema, std::string_view name) {
  int idx = find_column(schema, name);
  if (idx < 0) {
    throw ConfigError("dump schema lacks required column " + std::string(name));
  }
  return idx;
}

template <typename Row>
struct RowTraits;

template <>
struct RowTraits<RawPageRow> {
  // id, ns, title, redirect, new, restrictions (optional), touched, len
  static std::vector<int> columns(const SqlSchema& s) {
    return {require_column(s, "page_id"),          require_column(s, "page_namespace"),
            require_column(s, "page_title"),       require_column(s, "page_is_redirect"),
            require_column(s, "page_is_new"),      find_column(s, "page_restrictions"),
            require_column(s, "page_touched"),     require_column(s, "page_len")};
  }
  static bool convert(const SqlRow& r, const std::vector<int>& c, RawPageRow* out) {
    auto id = as_int(r[c[0]]);
    auto ns = as_int(r[c[1]]);
    auto len = as_int(r[c[7]]);
    if (!id || *id <= 0 || !ns || *ns < 0) return false;
    out->page_id = *id;
    out->ns = static_cast<int32_t>(*ns);
    out->title = as_text(r[c[2]]);
    if (out->title.empty()) return false;
    out->is_redirect = as_int(r[c[3]]).value_or(0) != 0;
    out->is_new = as_int(r[c[4]]).value_or(0) != 0;
    out->restrictions = c[5] >= 0 ? as_text(r[c[5]]) : std::string();
    out->touched = parse_timestamp(as_text(r[c[6]]));
    out->length_bytes = len.value_or(0);
    return out->length_bytes >= 0;
  }
};

template <>
struct RowTraits<RawCategoryRow> {
  static std::vector<int> columns(const SqlSchema& s) {
    return {require_column(s, "cat_id"), require_column(s, "cat_title"),
            require_column(s, "cat_pages"), require_column(s, "cat_subcats"),
            require_column(s, "cat_files")};
  }
  static bool convert(const SqlRow& r, const std::vector<int>& c, RawCategoryRow* out) {
    auto id = as_int(r[c[0]]);
    if (!id || *id <= 0) return false;
    out->category_id = *id;
    out->title = as_text(r[c[1]]);
    out->pages = as_int(r[c[2]]).value_or(0);
    out->subcats = as_int(r[c[3]]).value_or(0);
    out->files = as_int(r[c[4]]).value_or(0);
    return !out->title.empty() && out->pages >= 0 && out->subcats >= 0 &&
           out->files >= 0;
  }
};

template <>
struct RowTraits<CategoryLinkRow> {
  static std::vector<int> columns(const SqlSchema& s) {
    return {require_column(s, "cl_from"), require_column(s, "cl_to"),
            require_column(s, "cl_type")};
  }
  static bool convert(const SqlRow& r, const std::vector<int>& c, CategoryLinkRow* out) {
    auto from = as_int(r[c[0]]);
    auto type = parse_category_link_type(as_text(r[c[2]]));
    if (!from || *from <= 0 || !type) return false;
    out->from_page_id = *from;
    out->to_category_title = as_text(r[c[1]]);
    out->link_type = *type;
    return !out->to_category_title.empty();
  }
};

template <>
struct RowTraits<PagePropRow> {
  static std::vector<int> columns(const SqlSchema& s) {
    return {require_column(s, "pp_page"), require_column(s, "pp_propname"),
            require_column(s, "pp_value")};
  }
  static bool convert(const SqlRow& r, const std::vector<int>& c, PagePropRow* out) {
    auto page = as_int(r[c[0]]);
    if (!page || *page <= 0) return false;
    out->page_id = *page;
    out->prop_name = as_text(r[c[1]]);
    out->prop_value = as_text(r[c[2]]);
    return !out->prop_name.empty();
  }
};

template <>
struct RowTraits<PageLinkRow> {
  static std::vector<int> columns(const SqlSchema& s) {
    return {require_column(s, "pl_from"), require_column(s, "pl_namespace"),
            require_column(s, "pl_title")};
  }
  static bool convert(const SqlRow& r, const std::vector<int>& c, PageLinkRow* out) {
    auto from = as_int(r[c[0]]);
    auto ns = as_int(r[c[1]]);
    if (!from || *from <= 0 || !ns) return false;
    out->from_page_id = *from;
    out->to_namespace = static_cast<int32_t>(*ns);
    out->to_title = as_text(r[c[2]]);
    return !out->to_title.empty();
  }
};

template <>
struct RowTraits<ExternalLinkRow> {
  // Either el_to, or the split (el_to_domain_index, el_to_path) layout.
  static std::vector<int> columns(const SqlSchema& s) {
    int to = find_column(s, "el_to");
    if (to >= 0) return {require_column(s, "el_from"), to, -1};
    return {require_column(s, "el_from"), require_column(s, "el_to_domain_index"),
            require_column(s, "el_to_path")};
  }
  static bool convert(const SqlRow& r, const std::vector<int>& c, ExternalLinkRow* out) {
    auto from = as_int(r[c[0]]);
    if (!from || *from <= 0) return false;
    out->from_page_id = *from;
    out->raw_url = c[2] < 0 ? as_text(r[c[1]])
                            : url_from_domain_index(as_text(r[c[1]]),
                                                    as_text(r[c[2]]));
    return !out->raw_url.empty();
  }
};

}  // namespace

const char* to_string(CategoryLinkType t) {
  switch (t) {
    case CategoryLinkType::kPage:
      return "page";
    case CategoryLinkType::kSubcat:
      return "subcat";
    case CategoryLinkType::kFile:
      return "file";
  }
  return "page";
}

std::optional<CategoryLinkType> parse_category_link_type(std::string_view s) {
  if (s == "page") return CategoryLinkType::kPage;
  if (s == "subcat") return CategoryLinkType::kSubcat;
  if (s == "file") return CategoryLinkType::kFile;
  return std::nullopt;
}

SqlSchema default_page_schema() {
  return parse_schema_spec(
      "page_id:int,page_namespace:int,page_title:text,page_restrictions:text,"
      "page_is_redirect:int,page_is_new:int,page_random:float,"
      "page_touched:text,page_links_updated:text,page_latest:int,page_len:int,"
      "page_content_model:text,page_lang:text");
}

SqlSchema default_category_schema() {
  return parse_schema_spec(
      "cat_id:int,cat_title:text,cat_pages:int,cat_subcats:int,cat_files:int");
}

SqlSchema default_categorylinks_schema() {
  return parse_schema_spec(
      "cl_from:int,cl_to:text,cl_sortkey:text,cl_timestamp:text,"
      "cl_sortkey_prefix:text,cl_collation:text,cl_type:text");
}

SqlSchema default_page_props_schema() {
  return parse_schema_spec(
      "pp_page:int,pp_propname:text,pp_value:text,pp_sortkey:float");
}

SqlSchema default_pagelinks_schema() {
  return parse_schema_spec(
      "pl_from:int,pl_namespace:int,pl_title:text,pl_from_namespace:int");
}

SqlSchema default_externallinks_schema() {
  return parse_schema_spec(
      "el_id:int,el_from:int,el_to:text,el_index:text,el_index_60:text");
}

std::string url_from_domain_index(std::string_view domain_index,
                                  std::string_view path) {
  size_t sep = domain_index.find("://");
  if (sep == std::string_view::npos) return std::string(domain_index) + std::string(path);
  std::string_view scheme = domain_index.substr(0, sep + 3);
  std::string_view rest = domain_index.substr(sep + 3);
  std::string_view port;
  if (size_t colon = rest.find(':'); colon != std::string_view::npos) {
    port = rest.substr(colon);
    rest = rest.substr(0, colon);
  }
  if (!rest.empty() && rest.back() == '.') rest.remove_suffix(1);
  auto labels = split(rest, '.');
  std::reverse(labels.begin(), labels.end());
  std::string host;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i) host.push_back('.');
    host.append(labels[i]);
  }
  return std::string(scheme) + host + std::string(port) + std::string(path);
}

template <typename Row>
DumpTableReader<Row>::DumpTableReader(std::istream& in, SqlSchema schema)
    : schema_(schema),
      parser_(in, std::move(schema)),
      index_(RowTraits<Row>::columns(schema_)) {}

template <typename Row>
bool DumpTableReader<Row>::next(Row* row) {
  while (parser_.next(&raw_)) {
    counters_.add("rows_in");
    if (RowTraits<Row>::convert(raw_, index_, row)) return true;
    counters_.add("invalid_rows");
  }
  return false;
}

template class DumpTableReader<RawPageRow>;
template class DumpTableReader<RawCategoryRow>;
template class DumpTableReader<CategoryLinkRow>;
template class DumpTableReader<PagePropRow>;
template class DumpTableReader<PageLinkRow>;
template class DumpTableReader<ExternalLinkRow>;

}  // namespace wikikg::ingest
