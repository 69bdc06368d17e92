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

#ifndef WIKIKG_INGEST_SQL_DUMP_H_
#define WIKIKG_INGEST_SQL_DUMP_H_

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wikikg/common/error.h"

namespace wikikg::ingest {

// A decoded SQL literal: NULL, integer, float or text. Hex blobs decode to
// text (bytes interpreted as UTF-8 with lossy replacement).
using SqlValue = std::variant<std::monostate, int64_t, double, std::string>;
using SqlRow = std::vector<SqlValue>;

enum class SqlType { kAny, kInteger, kFloat, kText };

struct SqlColumn {
  std::string name;
  SqlType type = SqlType::kAny;
};
using SqlSchema = std::vector<SqlColumn>;

// "name:int,name:text,..." with types int, float, text or any.
SqlSchema parse_schema_spec(std::string_view spec);

class MalformedStatement : public Error {
 public:
  MalformedStatement(const std::string& what, uint64_t offset)
      : Error("malformed SQL at byte " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  uint64_t offset() const { return offset_; }

 private:
  uint64_t offset_;
};

class ColumnCountMismatch : public Error {
 public:
  ColumnCountMismatch(uint64_t statement, size_t expected, size_t actual)
      : Error("statement " + std::to_string(statement) + ": expected " +
              std::to_string(expected) + " columns, got " +
              std::to_string(actual)),
        statement_(statement) {}
  uint64_t statement() const { return statement_; }

 private:
  uint64_t statement_;
};

class ColumnTypeMismatch : public Error {
 public:
  ColumnTypeMismatch(uint64_t statement, const std::string& column)
      : Error("statement " + std::to_string(statement) +
              ": unexpected literal type in column " + column),
        statement_(statement) {}
  uint64_t statement() const { return statement_; }

 private:
  uint64_t statement_;
};

// Streams the rows of every multi-row INSERT statement in a MediaWiki SQL
// dump. All other statements and comments are skipped. Memory use is bounded
// by the longest single row.
class SqlDumpParser {
 public:
  SqlDumpParser(std::istream& in, SqlSchema schema);

  // False at end of stream.
  bool next(SqlRow* row);

  // 1-based index of the statement the last row came from.
  uint64_t statement_index() const { return statement_index_; }
  uint64_t insert_statements() const { return insert_statements_; }
  uint64_t rows() const { return rows_; }
  uint64_t offset() const { return consumed_ + pos_; }

 private:
  static constexpr int kEof = -1;

  int peek() {
    if (pos_ == len_ && !refill()) return kEof;
    return static_cast<unsigned char>(buf_[pos_]);
  }
  int get() {
    int c = peek();
    if (c != kEof) ++pos_;
    return c;
  }
  bool refill();

  void skip_whitespace();
  void skip_line();
  void skip_block_comment();
  void skip_statement();
  void skip_quoted(int quote);
  std::string read_word();
  void parse_insert_header();
  void parse_tuple(SqlRow* row);
  SqlValue parse_value();
  std::string parse_string(int quote);
  std::string parse_hex();
  SqlValue parse_number(std::string prefix);
  void check_row(const SqlRow& row) const;

  std::istream& in_;
  SqlSchema schema_;
  std::vector<char> buf_;
  size_t pos_ = 0;
  size_t len_ = 0;
  uint64_t consumed_ = 0;
  bool in_values_ = false;
  uint64_t statement_index_ = 0;
  uint64_t insert_statements_ = 0;
  uint64_t rows_ = 0;
};

// Writer side, used to produce fixtures and by round-trip tests.
std::string sql_quote(std::string_view text);
std::string format_sql_value(const SqlValue& value);
std::string format_insert(std::string_view table, const std::vector<SqlRow>& rows);

}  // namespace wikikg::ingest

#endif  // WIKIKG_INGEST_SQL_DUMP_H_
