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

#ifndef WIKIKG_PIPELINE_CONFIG_H_
#define WIKIKG_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wikikg/common/error.h"
#include "wikikg/common/time.h"
#include "wikikg/ingest/citations.h"
#include "wikikg/ingest/pageviews.h"
#include "wikikg/ingest/sql_dump.h"

namespace wikikg::pipeline {

enum class KeyKind {
  kValue,
  kSwitch,  // boolean; a bare flag sets it to true
  kPath,    // path or comma list of paths, wildcards allowed
};

struct ConfigKey {
  const char* section;
  const char* name;
  const char* default_value;
  const char* help;
  KeyKind kind = KeyKind::kValue;
};

// Every recognized key. Names are unique across sections so that each one
// maps to the command-line flag "--" + name with '_' replaced by '-'.
const std::vector<ConfigKey>& config_keys();
const ConfigKey* find_config_key(std::string_view name);

// Untyped key/value view of an INI file plus overrides.
class RawConfig {
 public:
  // Defaults only; relative paths resolve against `base_dir`.
  explicit RawConfig(std::filesystem::path base_dir = std::filesystem::current_path());

  // Throws ConfigError on syntax errors and unknown sections or keys.
  static RawConfig load(const std::filesystem::path& path);

  // Throws ConfigError for unknown keys. Relative paths given as overrides
  // resolve against the working directory rather than the config file.
  void set(const std::string& name, const std::string& value);
  void override_value(const std::string& name, const std::string& value);
  const std::string& get(const std::string& name) const;
  const std::filesystem::path& base_dir() const { return base_dir_; }

 private:
  std::filesystem::path base_dir_;
  std::map<std::string, std::string> values_;
};

struct DumpSchemas {
  ingest::SqlSchema page, category, categorylinks, page_props, pagelinks, externallinks;
};

struct PipelineConfig {
  // Inputs. Each family may name several files (comma list, wildcards).
  std::vector<std::filesystem::path> page_dump;
  std::vector<std::filesystem::path> category_dump;
  std::vector<std::filesystem::path> categorylinks_dump;
  std::vector<std::filesystem::path> page_props_dump;
  std::vector<std::filesystem::path> pagelinks_dump;
  std::vector<std::filesystem::path> externallinks_dump;
  std::vector<std::filesystem::path> history;
  std::vector<std::filesystem::path> pageviews;
  std::vector<std::filesystem::path> citations;
  std::optional<std::filesystem::path> assessments;
  std::optional<std::filesystem::path> exclusions;
  std::optional<std::filesystem::path> domain_rules;

  std::string wiki_code;
  DateRange views_window{};
  Date as_of{};

  DumpSchemas schemas;
  std::set<int32_t> scope_namespaces;
  bool resolve_redirects = false;
  bool include_talk_archives = false;

  ingest::PageviewColumns view_columns;
  std::set<std::string> agent_types;
  double views_max_malformed = 0.01;
  ingest::CitationColumns citation_columns;
  std::vector<std::string> identifier_schemes;

  std::vector<std::string> rank_metrics;
  size_t top_n = 20;
  std::vector<std::string> correlation_metrics;

  std::filesystem::path out;
  std::filesystem::path temp_dir;
  int threads = 1;
  uint64_t memory_ceiling = 0;

  // Raw values, used to render per-stage parameters for checkpoints.
  std::map<std::string, std::string> raw;

  // Parses and type-checks every value. Throws ConfigError.
  static PipelineConfig from(const RawConfig& raw);

  // Budget handed to each external sorter; several may be live at once.
  uint64_t sort_budget() const;

  // "name:value;..." for the named keys, in the given order.
  std::string render(const std::vector<std::string>& keys) const;
};

struct InputFamily {
  std::string name;
  std::vector<std::filesystem::path> files;
  bool required = true;
};

// Every listed file must exist and required families must be configured;
// throws ConfigError naming the first offender.
void check_inputs(const std::vector<InputFamily>& families);

// "2147483648", "2G", "512M", "64K".
std::optional<uint64_t> parse_byte_size(std::string_view text);

}  // namespace wikikg::pipeline

#endif  // WIKIKG_PIPELINE_CONFIG_H_
