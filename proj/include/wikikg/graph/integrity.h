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

#ifndef WIKIKG_GRAPH_INTEGRITY_H_
#define WIKIKG_GRAPH_INTEGRITY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace wikikg::graph {

struct IntegrityReport {
  std::map<std::string, uint64_t> rows;        // per table file
  std::map<std::string, uint64_t> violations;  // per check, e.g. "page_link.to_page_id"
  std::vector<std::string> samples;            // first violations, human readable

  uint64_t total_violations() const;
  // key=value lines, sorted, followed by the samples as comments.
  std::string render() const;
};

// Checks the nine tables in `dir`: headers, field domains, key uniqueness,
// documented sort order, dense surrogate ids, every foreign key, and
// editors <= edits. `schemes` is the expected pub.tsv scheme column list.
IntegrityReport verify_integrity(const std::filesystem::path& dir,
                                 const std::vector<std::string>& schemes);

}  // namespace wikikg::graph

#endif  // WIKIKG_GRAPH_INTEGRITY_H_
