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

#ifndef WIKIKG_COMMON_TSV_H_
#define WIKIKG_COMMON_TSV_H_

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace wikikg {

// Field escaping used by every TSV file the pipeline writes:
//   backslash -> "\\", tab -> "\t", line feed -> "\n".
// Nothing else is escaped; unescape() maps any other "\x" pair to "\x".
std::string tsv_escape(std::string_view field);
std::string tsv_unescape(std::string_view field);

// Buffered TSV writer with a fixed header. Rows are written with LF endings.
class TsvWriter {
 public:
  TsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& header);
  TsvWriter(const TsvWriter&) = delete;
  TsvWriter& operator=(const TsvWriter&) = delete;
  ~TsvWriter();

  template <typename... Fields>
  void write_row(const Fields&... fields) {
    bool first = true;
    (append_field(fields, &first), ...);
    buffer_.push_back('\n');
    ++rows_;
    if (buffer_.size() >= kFlushThreshold) flush_buffer();
  }

  void write_fields(const std::vector<std::string>& fields);

  uint64_t rows() const { return rows_; }
  void close();

 private:
  static constexpr size_t kFlushThreshold = 1 << 20;

  void separator(bool* first) {
    if (!*first) buffer_.push_back('\t');
    *first = false;
  }
  void append_field(std::string_view s, bool* first);
  void append_field(const std::string& s, bool* first) {
    append_field(std::string_view(s), first);
  }
  void append_field(const char* s, bool* first) {
    append_field(std::string_view(s), first);
  }
  void append_field(bool b, bool* first) {
    separator(first);
    buffer_.push_back(b ? '1' : '0');
  }
  template <typename Int,
            typename = std::enable_if_t<std::is_integral_v<Int> &&
                                        !std::is_same_v<Int, bool>>>
  void append_field(Int v, bool* first) {
    separator(first);
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    buffer_.append(buf, res.ptr);
  }
  void flush_buffer();

  std::filesystem::path path_;
  std::ofstream out_;
  std::string buffer_;
  uint64_t rows_ = 0;
};

// Reads a TSV file written by TsvWriter. Fields are unescaped.
class TsvReader {
 public:
  explicit TsvReader(const std::filesystem::path& path);
  explicit TsvReader(std::istream& in);

  // Consumes the first line as header.
  const std::vector<std::string>& read_header();
  const std::vector<std::string>& header() const { return header_; }

  // False at end of input.
  bool next(std::vector<std::string>* fields);

  // Raw, still-escaped line of the last row returned by next().
  const std::string& raw_line() const { return line_; }
  uint64_t line_number() const { return line_number_; }

 private:
  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_;
  std::string line_;
  std::vector<std::string> header_;
  uint64_t line_number_ = 0;
};

void split_tsv_line(std::string_view line, std::vector<std::string>* fields);

}  // namespace wikikg

#endif  // WIKIKG_COMMON_TSV_H_
