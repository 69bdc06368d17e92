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

#include "wikikg/graph/tables.h"

#include "wikikg/common/text.h"
#include "wikikg/common/time.h"

namespace wikikg::graph {
namespace {

std::string time_field(int64_t t) {
  if (t == kNoTime) return {};
  return format_timestamp(Timestamp(std::chrono::seconds(t)));
}

bool parse_time(const std::string& s, int64_t* out) {
  if (s.empty()) {
    *out = kNoTime;
    return true;
  }
  auto ts = parse_iso_timestamp(s);
  if (!ts) return false;
  *out = ts->time_since_epoch().count();
  return true;
}

template <typename Int>
bool parse_int(const std::string& s, Int* out) {
  auto v = parse_int64(s);
  if (!v) return false;
  *out = static_cast<Int>(*v);
  return true;
}

bool parse_count(const std::string& s, uint64_t* out) {
  auto v = parse_uint64(s);
  if (!v) return false;
  *out = *v;
  return true;
}

bool parse_flag(const std::string& s, bool* out) {
  if (s != "0" && s != "1") return false;
  *out = s == "1";
  return true;
}

bool positive(int64_t v) { return v > 0; }

}  // namespace

std::vector<std::string> graph_files() {
  return {kPageFile,         kCategoryFile, kPagePropertyFile, kPubFile,    kUrlFile,
          kPageCategoryFile, kPageLinkFile, kPagePubFile,      kPageUrlFile};
}

std::vector<std::string> page_header() {
  return {"page_id", "namespace", "title",  "is_redirect", "is_new",  "restrictions", "touched",
          "length",  "views",     "edits",  "editors",     "created", "references"};
}

std::vector<std::string> category_header() {
  return {"category_id", "title", "pages", "subcats", "files", "hidden"};
}

std::vector<std::string> page_property_header() { return {"page_id", "name", "value"}; }

std::vector<std::string> url_header() { return {"url_id", "url", "domain"}; }

std::vector<std::string> pub_header(const std::vector<std::string>& schemes) {
  std::vector<std::string> h = {"pub_id", "key"};
  h.insert(h.end(), schemes.begin(), schemes.end());
  return h;
}

std::vector<std::string> page_category_header() {
  return {"page_id", "category_id", "link_type"};
}

std::vector<std::string> page_link_header() { return {"from_page_id", "to_page_id"}; }

std::vector<std::string> page_pub_header() { return {"page_id", "pub_id"}; }

std::vector<std::string> page_url_header() { return {"page_id", "url_id", "in_reference"}; }

void write_row(TsvWriter& w, const PageRecord& r) {
  w.write_row(r.page_id, r.ns, r.title, r.is_redirect, r.is_new, r.restrictions,
              time_field(r.touched), r.length, r.views, r.edits, r.editors,
              time_field(r.created), r.references);
}

void write_row(TsvWriter& w, const CategoryRecord& r) {
  w.write_row(r.category_id, r.title, r.pages, r.subcats, r.files, r.hidden);
}

void write_row(TsvWriter& w, const ingest::PagePropRow& r) {
  w.write_row(r.page_id, r.prop_name, r.prop_value);
}

void write_row(TsvWriter& w, const UrlRecord& r) { w.write_row(r.url_id, r.url, r.domain); }

void write_row(TsvWriter& w, const PubRecord& r) {
  std::vector<std::string> fields = {std::to_string(r.pub_id), r.key};
  fields.insert(fields.end(), r.columns.begin(), r.columns.end());
  w.write_fields(fields);
}

void write_row(TsvWriter& w, const PageCategoryEdge& r) {
  w.write_row(r.page_id, r.category_id, ingest::to_string(r.link_type));
}

void write_row(TsvWriter& w, const PageLinkEdge& r) { w.write_row(r.from, r.to); }

void write_row(TsvWriter& w, const PagePubEdge& r) { w.write_row(r.page_id, r.pub_id); }

void write_row(TsvWriter& w, const PageUrlEdge& r) {
  w.write_row(r.page_id, r.url_id, r.in_reference);
}

bool parse_row(const std::vector<std::string>& f, PageRecord* r) {
  return f.size() == 13 && parse_int(f[0], &r->page_id) && positive(r->page_id) &&
         parse_int(f[1], &r->ns) && r->ns >= 0 && !(r->title = f[2]).empty() &&
         parse_flag(f[3], &r->is_redirect) && parse_flag(f[4], &r->is_new) &&
         (r->restrictions = f[5], true) && parse_time(f[6], &r->touched) &&
         parse_int(f[7], &r->length) && r->length >= 0 && parse_count(f[8], &r->views) &&
         parse_count(f[9], &r->edits) && parse_count(f[10], &r->editors) &&
         parse_time(f[11], &r->created) && parse_count(f[12], &r->references);
}

bool parse_row(const std::vector<std::string>& f, CategoryRecord* r) {
  return f.size() == 6 && parse_int(f[0], &r->category_id) && positive(r->category_id) &&
         !(r->title = f[1]).empty() && parse_int(f[2], &r->pages) &&
         parse_int(f[3], &r->subcats) && parse_int(f[4], &r->files) &&
         parse_flag(f[5], &r->hidden);
}

bool parse_row(const std::vector<std::string>& f, ingest::PagePropRow* r) {
  if (f.size() != 3 || !parse_int(f[0], &r->page_id) || !positive(r->page_id)) return false;
  r->prop_name = f[1];
  r->prop_value = f[2];
  return !r->prop_name.empty();
}

bool parse_row(const std::vector<std::string>& f, UrlRecord* r) {
  if (f.size() != 3 || !parse_int(f[0], &r->url_id) || !positive(r->url_id)) return false;
  r->url = f[1];
  r->domain = f[2];
  return !r->url.empty() && !r->domain.empty();
}

bool parse_row(const std::vector<std::string>& f, PubRecord* r) {
  if (f.size() < 2 || !parse_int(f[0], &r->pub_id) || !positive(r->pub_id)) return false;
  r->key = f[1];
  r->columns.assign(f.begin() + 2, f.end());
  return !r->key.empty();
}

bool parse_row(const std::vector<std::string>& f, PageCategoryEdge* r) {
  if (f.size() != 3 || !parse_int(f[0], &r->page_id) || !parse_int(f[1], &r->category_id)) {
    return false;
  }
  auto type = ingest::parse_category_link_type(f[2]);
  if (!type) return false;
  r->link_type = *type;
  return positive(r->page_id) && positive(r->category_id);
}

bool parse_row(const std::vector<std::string>& f, PageLinkEdge* r) {
  return f.size() == 2 && parse_int(f[0], &r->from) && parse_int(f[1], &r->to) &&
         positive(r->from) && positive(r->to);
}

bool parse_row(const std::vector<std::string>& f, PagePubEdge* r) {
  return f.size() == 2 && parse_int(f[0], &r->page_id) && parse_int(f[1], &r->pub_id) &&
         positive(r->page_id) && positive(r->pub_id);
}

bool parse_row(const std::vector<std::string>& f, PageUrlEdge* r) {
  return f.size() == 3 && parse_int(f[0], &r->page_id) && parse_int(f[1], &r->url_id) &&
         parse_flag(f[2], &r->in_reference) && positive(r->page_id) && positive(r->url_id);
}

}  // namespace wikikg::graph
