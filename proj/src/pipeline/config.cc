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

#include "wikikg/pipeline/config.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "wikikg/common/input.h"
#include "wikikg/common/text.h"
#include "wikikg/ingest/dump_tables.h"
#include "wikikg/metrics/metrics.h"
#include "wikikg/normalize/identifiers.h"

namespace wikikg::pipeline {

namespace fs = std::filesystem;

const std::vector<ConfigKey>& config_keys() {
  using K = KeyKind;
  static const std::vector<ConfigKey> keys = {
      {"input", "page_dump", "", "page table SQL dump", K::kPath},
      {"input", "category_dump", "", "category table SQL dump", K::kPath},
      {"input", "categorylinks_dump", "", "categorylinks table SQL dump", K::kPath},
      {"input", "page_props_dump", "", "page_props table SQL dump", K::kPath},
      {"input", "pagelinks_dump", "", "pagelinks table SQL dump", K::kPath},
      {"input", "externallinks_dump", "", "externallinks table SQL dump", K::kPath},
      {"input", "history", "", "stub-meta-history XML files", K::kPath},
      {"input", "pageviews", "", "pageview count files", K::kPath},
      {"input", "citations", "", "extracted citations files", K::kPath},
      {"input", "assessments", "", "quality assessments TSV", K::kPath},
      {"input", "exclusions", "", "titles excluded from rankings", K::kPath},
      {"input", "domain_rules", "", "URL domain rule file", K::kPath},

      {"wiki", "wiki_code", "en.wikipedia", "wiki code in pageview files"},
      {"wiki", "views_start", "2021-04-01", "first day of the views window"},
      {"wiki", "views_end", "2021-06-30", "last day of the views window"},
      {"wiki", "as_of", "2021-07-01", "reference date for article age"},

      {"schema", "page_schema", "", "page dump column layout"},
      {"schema", "category_schema", "", "category dump column layout"},
      {"schema", "categorylinks_schema", "", "categorylinks dump column layout"},
      {"schema", "page_props_schema", "", "page_props dump column layout"},
      {"schema", "pagelinks_schema", "", "pagelinks dump column layout"},
      {"schema", "externallinks_schema", "", "externallinks dump column layout"},

      {"graph", "scope_namespaces", "0", "namespaces kept in the link graph"},
      {"graph", "resolve_redirects", "false", "follow one redirect hop on link targets",
       K::kSwitch},

      {"metrics", "include_talk_archives", "false", "fold talk archive subpages into talk metrics",
       K::kSwitch},

      {"pageviews", "views_delimiter", "tab", "field delimiter: tab, space, comma or a character"},
      {"pageviews", "views_col_wiki", "0", "wiki code column, -1 if absent"},
      {"pageviews", "views_col_title", "1", "title column"},
      {"pageviews", "views_col_page_id", "2", "page id column, -1 if absent"},
      {"pageviews", "views_col_namespace", "-1", "namespace column, -1 if absent"},
      {"pageviews", "views_col_agent", "-1", "agent type column, -1 if absent"},
      {"pageviews", "views_col_count", "4", "view count column"},
      {"pageviews", "views_col_date", "-1", "date column, -1 for one file per day"},
      {"pageviews", "agent_types", "", "agent types counted, empty for all"},
      {"pageviews", "views_max_malformed", "0.01", "tolerated malformed line fraction"},

      {"citations", "citations_delimiter", "tab", "field delimiter"},
      {"citations", "citations_col_page_id", "page_id", "page id column header"},
      {"citations", "citations_col_page_title", "page_title", "page title column header"},
      {"citations", "citations_col_url", "URL", "URL column header"},
      {"citations", "citations_col_type", "type_of_citation", "resource type column header"},
      {"citations", "citations_col_id_list", "ID_list", "identifier list column header"},
      {"citations", "citations_id_columns", "", "scheme:column pairs for per-scheme columns"},
      {"citations", "citations_fields", "", "extra columns kept as citation fields"},
      {"citations", "citations_max_malformed", "0.01", "tolerated malformed row fraction"},

      {"identifiers", "identifier_schemes", "", "identifier vocabulary, empty for the default 20"},

      {"analysis", "rank_metrics", "views,talks,pub_referenced", "metrics ranked"},
      {"analysis", "top_n", "20", "ranking length"},
      {"analysis", "correlation_metrics", "", "metrics correlated, empty for all"},

      {"run", "out", "out", "output directory", K::kPath},
      {"run", "temp_dir", "", "spill directory, default <out>/.tmp", K::kPath},
      {"run", "threads", "1", "worker threads"},
      {"run", "memory_ceiling", "2G", "memory ceiling in bytes (K, M, G suffixes)"},
  };
  return keys;
}

const ConfigKey* find_config_key(std::string_view name) {
  for (const auto& k : config_keys()) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

RawConfig::RawConfig(fs::path base_dir) : base_dir_(std::move(base_dir)) {
  for (const auto& k : config_keys()) values_[k.name] = k.default_value;
}

RawConfig RawConfig::load(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  RawConfig config(fs::absolute(path).parent_path());
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(path.string() + ": key '" + section + "' outside a section");
    }
    for (const auto& [name, value] : body) {
      const ConfigKey* key = find_config_key(name);
      if (!key) throw ConfigError(path.string() + ": unknown key '" + name + "'");
      if (section != key->section) {
        throw ConfigError(path.string() + ": key '" + name + "' belongs in [" + key->section +
                          "], found in [" + section + "]");
      }
      config.set(name, std::string(trim(value.data())));
    }
  }
  return config;
}

void RawConfig::set(const std::string& name, const std::string& value) {
  if (!find_config_key(name)) throw ConfigError("unknown config key '" + name + "'");
  values_[name] = value;
}

void RawConfig::override_value(const std::string& name, const std::string& value) {
  const ConfigKey* key = find_config_key(name);
  if (!key) throw ConfigError("unknown config key '" + name + "'");
  if (key->kind != KeyKind::kPath) {
    values_[name] = value;
    return;
  }
  std::string joined;
  for (std::string_view item : split(value, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (!joined.empty()) joined += ',';
    joined += fs::absolute(fs::path(std::string(item))).string();
  }
  values_[name] = joined;
}

const std::string& RawConfig::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw ConfigError("unknown config key '" + name + "'");
  return it->second;
}

std::optional<uint64_t> parse_byte_size(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  uint64_t scale = 1;
  switch (text.back()) {
    case 'K': case 'k': scale = uint64_t{1} << 10; break;
    case 'M': case 'm': scale = uint64_t{1} << 20; break;
    case 'G': case 'g': scale = uint64_t{1} << 30; break;
    default: break;
  }
  if (scale != 1) text.remove_suffix(1);
  auto n = parse_uint64(text);
  if (!n || *n > UINT64_MAX / scale) return std::nullopt;
  return *n * scale;
}

namespace {

std::vector<std::string> list(const std::string& value) {
  std::vector<std::string> out;
  for (std::string_view item : split(value, ',')) {
    item = trim(item);
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

char delimiter(const std::string& name, const std::string& value) {
  std::string v = to_lower_ascii(value);
  if (v == "tab" || v == "\\t") return '\t';
  if (v == "space") return ' ';
  if (v == "comma") return ',';
  if (value.size() == 1) return value[0];
  throw ConfigError(name + ": unrecognized delimiter '" + value + "'");
}

bool boolean(const std::string& name, const std::string& value) {
  std::string v = to_lower_ascii(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off" || v.empty()) return false;
  throw ConfigError(name + ": expected a boolean, got '" + value + "'");
}

int64_t integer(const std::string& name, const std::string& value, int64_t min) {
  auto n = parse_int64(trim(value));
  if (!n || *n < min) throw ConfigError(name + ": invalid integer '" + value + "'");
  return *n;
}

double fraction(const std::string& name, const std::string& value) {
  auto x = parse_double(trim(value));
  if (!x || *x < 0 || *x > 1) throw ConfigError(name + ": expected a fraction in [0, 1]");
  return *x;
}

Date date(const std::string& name, const std::string& value) {
  auto d = parse_date(trim(value));
  if (!d) throw ConfigError(name + ": invalid date '" + value + "'");
  return *d;
}

ingest::SqlSchema schema(const std::string& name, const std::string& value,
                         ingest::SqlSchema fallback) {
  if (trim(value).empty()) return fallback;
  try {
    return ingest::parse_schema_spec(value);
  } catch (const Error& e) {
    throw ConfigError(name + ": " + e.what());
  }
}

std::vector<std::string> metric_list(const std::string& name, const std::string& value) {
  std::vector<std::string> out = list(value);
  if (out.empty()) {
    const auto& all = metrics::metric_names();
    return {all.begin(), all.end()};
  }
  for (const auto& m : out) {
    if (metrics::metric_index(m) < 0) throw ConfigError(name + ": unknown metric '" + m + "'");
  }
  return out;
}

}  // namespace

PipelineConfig PipelineConfig::from(const RawConfig& raw) {
  PipelineConfig c;
  for (const auto& k : config_keys()) c.raw[k.name] = raw.get(k.name);
  auto get = [&raw](const char* name) -> const std::string& { return raw.get(name); };
  auto paths = [&](const char* name) { return expand_paths(get(name), raw.base_dir()); };
  auto single = [&](const char* name) -> std::optional<fs::path> {
    auto p = paths(name);
    if (p.empty()) return std::nullopt;
    if (p.size() > 1) throw ConfigError(std::string(name) + ": expected a single file");
    return p.front();
  };

  c.page_dump = paths("page_dump");
  c.category_dump = paths("category_dump");
  c.categorylinks_dump = paths("categorylinks_dump");
  c.page_props_dump = paths("page_props_dump");
  c.pagelinks_dump = paths("pagelinks_dump");
  c.externallinks_dump = paths("externallinks_dump");
  c.history = paths("history");
  c.pageviews = paths("pageviews");
  c.citations = paths("citations");
  c.assessments = single("assessments");
  c.exclusions = single("exclusions");
  c.domain_rules = single("domain_rules");

  c.wiki_code = std::string(trim(get("wiki_code")));
  c.views_window = {date("views_start", get("views_start")), date("views_end", get("views_end"))};
  if (c.views_window.end < c.views_window.start) {
    throw ConfigError("views_end is before views_start");
  }
  c.as_of = date("as_of", get("as_of"));

  c.schemas.page = schema("page_schema", get("page_schema"), ingest::default_page_schema());
  c.schemas.category =
      schema("category_schema", get("category_schema"), ingest::default_category_schema());
  c.schemas.categorylinks = schema("categorylinks_schema", get("categorylinks_schema"),
                                   ingest::default_categorylinks_schema());
  c.schemas.page_props =
      schema("page_props_schema", get("page_props_schema"), ingest::default_page_props_schema());
  c.schemas.pagelinks =
      schema("pagelinks_schema", get("pagelinks_schema"), ingest::default_pagelinks_schema());
  c.schemas.externallinks = schema("externallinks_schema", get("externallinks_schema"),
                                   ingest::default_externallinks_schema());

  for (const auto& ns : list(get("scope_namespaces"))) {
    c.scope_namespaces.insert(static_cast<int32_t>(integer("scope_namespaces", ns, INT32_MIN)));
  }
  if (c.scope_namespaces.empty()) throw ConfigError("scope_namespaces is empty");
  c.resolve_redirects = boolean("resolve_redirects", get("resolve_redirects"));
  c.include_talk_archives = boolean("include_talk_archives", get("include_talk_archives"));

  auto& v = c.view_columns;
  v.delimiter = delimiter("views_delimiter", get("views_delimiter"));
  v.wiki = static_cast<int>(integer("views_col_wiki", get("views_col_wiki"), -1));
  v.title = static_cast<int>(integer("views_col_title", get("views_col_title"), 0));
  v.page_id = static_cast<int>(integer("views_col_page_id", get("views_col_page_id"), -1));
  v.ns = static_cast<int>(integer("views_col_namespace", get("views_col_namespace"), -1));
  v.agent = static_cast<int>(integer("views_col_agent", get("views_col_agent"), -1));
  v.count = static_cast<int>(integer("views_col_count", get("views_col_count"), 0));
  v.date = static_cast<int>(integer("views_col_date", get("views_col_date"), -1));
  for (const auto& a : list(get("agent_types"))) c.agent_types.insert(to_lower_ascii(a));
  c.views_max_malformed = fraction("views_max_malformed", get("views_max_malformed"));

  auto& cc = c.citation_columns;
  cc.delimiter = delimiter("citations_delimiter", get("citations_delimiter"));
  cc.page_id = get("citations_col_page_id");
  cc.page_title = get("citations_col_page_title");
  cc.url = get("citations_col_url");
  cc.resource_type = get("citations_col_type");
  cc.id_list = get("citations_col_id_list");
  for (const auto& pair : list(get("citations_id_columns"))) {
    size_t colon = pair.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == pair.size()) {
      throw ConfigError("citations_id_columns: expected scheme:column, got '" + pair + "'");
    }
    cc.id_columns.emplace_back(pair.substr(0, colon), pair.substr(colon + 1));
  }
  cc.field_columns = list(get("citations_fields"));
  cc.max_malformed_fraction = fraction("citations_max_malformed", get("citations_max_malformed"));

  c.identifier_schemes = list(get("identifier_schemes"));
  for (auto& s : c.identifier_schemes) s = to_lower_ascii(s);
  if (c.identifier_schemes.empty()) {
    c.identifier_schemes = normalize::IdentifierVocabulary::defaults().schemes();
  }

  c.rank_metrics = metric_list("rank_metrics", get("rank_metrics"));
  c.top_n = static_cast<size_t>(integer("top_n", get("top_n"), 0));
  c.correlation_metrics = metric_list("correlation_metrics", get("correlation_metrics"));

  auto out = paths("out");
  if (out.size() != 1) throw ConfigError("out: expected a single directory");
  c.out = out.front();
  auto temp = paths("temp_dir");
  c.temp_dir = temp.empty() ? c.out / ".tmp" : temp.front();
  c.threads = static_cast<int>(integer("threads", get("threads"), 1));
  auto ceiling = parse_byte_size(get("memory_ceiling"));
  if (!ceiling || *ceiling < (uint64_t{16} << 20)) {
    throw ConfigError("memory_ceiling: expected at least 16M, got '" + get("memory_ceiling") + "'");
  }
  c.memory_ceiling = *ceiling;
  return c;
}

uint64_t PipelineConfig::sort_budget() const {
  // Up to four sorters can be live in one stage, and record footprints are
  // estimates, so each gets an eighth of the ceiling.
  return memory_ceiling / 8;
}

std::string PipelineConfig::render(const std::vector<std::string>& keys) const {
  std::string out;
  for (const auto& k : keys) {
    auto it = raw.find(k);
    if (it == raw.end()) throw ConfigError("unknown config key '" + k + "'");
    if (!out.empty()) out += ';';
    out += k + ":" + it->second;
  }
  return out;
}

void check_inputs(const std::vector<InputFamily>& families) {
  for (const auto& [name, files, required] : families) {
    if (files.empty() && required) {
      throw ConfigError("missing input: " + name + " is not configured");
    }
    for (const auto& f : files) {
      if (!fs::is_regular_file(f)) {
        throw ConfigError("missing input: " + name + " file " + f.string() + " does not exist");
      }
    }
  }
}

}  // namespace wikikg::pipeline
