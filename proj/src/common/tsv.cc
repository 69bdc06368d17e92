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

#include "wikikg/common/tsv.h"

#include "wikikg/common/error.h"

namespace wikikg {

std::string tsv_escape(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string tsv_unescape(std::string_view field) {
  if (field.find('\\') == std::string_view::npos) return std::string(field);
  std::string out;
  out.reserve(field.size());
  for (size_t i = 0; i < field.size(); ++i) {
    char c = field[i];
    if (c != '\\' || i + 1 == field.size()) {
      out.push_back(c);
      continue;
    }
    char n = field[++i];
    switch (n) {
      case '\\':
        out.push_back('\\');
        break;
      case 't':
        out.push_back('\t');
        break;
      case 'n':
        out.push_back('\n');
        break;
      default:
        out.push_back('\\');
        out.push_back(n);
    }
  }
  return out;
}

void split_tsv_line(std::string_view line, std::vector<std::string>* fields) {
  fields->clear();
  size_t start = 0;
  while (true) {
    size_t pos = line.find('\t', start);
    std::string_view raw = pos == std::string_view::npos
                               ? line.substr(start)
                               : line.substr(start, pos - start);
    fields->push_back(tsv_unescape(raw));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
}

TsvWriter::TsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw IoError("cannot open for writing: " + path.string());
  buffer_.reserve(kFlushThreshold + 4096);
  write_fields(header);
  rows_ = 0;
}

TsvWriter::~TsvWriter() {
  if (out_.is_open()) {
    flush_buffer();
    out_.close();
  }
}

void TsvWriter::write_fields(const std::vector<std::string>& fields) {
  bool first = true;
  for (const auto& f : fields) append_field(std::string_view(f), &first);
  buffer_.push_back('\n');
  ++rows_;
  if (buffer_.size() >= kFlushThreshold) flush_buffer();
}

void TsvWriter::append_field(std::string_view s, bool* first) {
  separator(first);
  for (char c : s) {
    switch (c) {
      case '\\':
        buffer_ += "\\\\";
        break;
      case '\t':
        buffer_ += "\\t";
        break;
      case '\n':
        buffer_ += "\\n";
        break;
      default:
        buffer_.push_back(c);
    }
  }
}

void TsvWriter::flush_buffer() {
  out_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
  buffer_.clear();
  if (!out_) throw IoError("write failed: " + path_.string());
}

void TsvWriter::close() {
  if (!out_.is_open()) return;
  flush_buffer();
  out_.close();
  if (out_.fail()) throw IoError("close failed: " + path_.string());
}

TsvReader::TsvReader(const std::filesystem::path& path)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)),
      in_(owned_.get()) {
  if (!*owned_) throw IoError("cannot open for reading: " + path.string());
}

TsvReader::TsvReader(std::istream& in) : in_(&in) {}

const std::vector<std::string>& TsvReader::read_header() {
  if (!next(&header_)) header_.clear();
  line_number_ = 1;
  return header_;
}

bool TsvReader::next(std::vector<std::string>* fields) {
  if (!std::getline(*in_, line_)) return false;
  ++line_number_;
  split_tsv_line(line_, fields);
  return true;
}

}  // namespace wikikg
