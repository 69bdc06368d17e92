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

#ifndef WIKIKG_COMMON_ERROR_H_
#define WIKIKG_COMMON_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wikikg {

// Base class for every fatal error raised by the pipeline.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Raised by line-oriented parsers when the share of malformed lines exceeds
// the configured tolerance.
class TooManyMalformed : public Error {
 public:
  TooManyMalformed(std::string source, uint64_t malformed, uint64_t total)
      : Error(source + ": " + std::to_string(malformed) + " of " +
              std::to_string(total) + " lines malformed"),
        malformed_(malformed),
        total_(total) {}

  uint64_t malformed() const { return malformed_; }
  uint64_t total() const { return total_; }

 private:
  uint64_t malformed_;
  uint64_t total_;
};

}  // namespace wikikg

#endif  // WIKIKG_COMMON_ERROR_H_
