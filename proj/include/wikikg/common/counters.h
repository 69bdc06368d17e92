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

#ifndef WIKIKG_COMMON_COUNTERS_H_
#define WIKIKG_COMMON_COUNTERS_H_

#include <cstdint>
#include <map>
#include <string>

namespace wikikg {

using PageId = int64_t;

// Named reconciliation counters reported in run reports. Ordered so that
// rendering is deterministic.
class Counters {
 public:
  void add(const std::string& name, uint64_t delta = 1) { values_[name] += delta; }
  void set(const std::string& name, uint64_t value) { values_[name] = value; }
  uint64_t get(const std::string& name) const {
    auto it = values_.find(name);
    return it == values_.end() ? 0 : it->second;
  }
  void merge(const Counters& other, const std::string& prefix = "") {
    for (const auto& [k, v] : other.values_) values_[prefix + k] += v;
  }
  const std::map<std::string, uint64_t>& values() const { return values_; }

 private:
  std::map<std::string, uint64_t> values_;
};

}  // namespace wikikg

#endif  // WIKIKG_COMMON_COUNTERS_H_
