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

#include "wikikg/common/external_sort.h"

#include <unistd.h>

namespace wikikg {
namespace {
std::atomic<uint64_t> g_temp_counter{0};
}  // namespace

TempFile::TempFile(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  path_ = dir / ("run-" + std::to_string(::getpid()) + "-" +
                 std::to_string(g_temp_counter.fetch_add(1)) + ".bin");
}

TempFile::~TempFile() {
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

}  // namespace wikikg
