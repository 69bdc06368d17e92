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

#ifndef WIKIKG_COMMON_INPUT_H_
#define WIKIKG_COMMON_INPUT_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <string>
#include <vector>

namespace wikikg {

// Opens a dump file for reading. Decompression is chosen by extension:
// ".gz" (gzip), ".bz2" (bzip2), anything else is read as-is.
std::unique_ptr<std::istream> open_input(const std::filesystem::path& path);

// Expands a comma-separated list of paths; the file-name component of each
// entry may contain shell wildcards. Matches are sorted for determinism.
std::vector<std::filesystem::path> expand_paths(const std::string& spec,
                                                const std::filesystem::path& base);

// Content fingerprint (CRC-32 and byte length) used by stage checkpoints.
struct FileFingerprint {
  uint64_t size = 0;
  uint32_t crc32 = 0;

  std::string to_string() const;
  bool operator==(const FileFingerprint&) const = default;
};

FileFingerprint fingerprint_file(const std::filesystem::path& path);

}  // namespace wikikg

#endif  // WIKIKG_COMMON_INPUT_H_
