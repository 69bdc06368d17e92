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

#include "wikikg/ingest/sql_dump.h"

#include <charconv>

#include "wikikg/common/text.h"

namespace wikikg::ingest {
namespace {

bool is_space(int c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_word_char(int c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

int hex_value(int c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

const char* type_name(SqlType t) {
  switch (t) {
    case SqlType::kInteger:
      return "int";
    case SqlType::kFloat:
      return "float";
    case SqlType::kText:
      return "text";
    case SqlType::kAny:
      break;
  }
  return "any";
}

}  // namespace

SqlSchema parse_schema_spec(std::string_view spec) {
  SqlSchema schema;
  for (std::string_view item : split(spec, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    SqlColumn col;
    size_t colon = item.find(':');
    col.name = std::string(trim(item.substr(0, colon)));
    std::string type = colon == std::string_view::npos
                           ? "any"
                           : to_lower_ascii(trim(item.substr(colon + 1)));
    if (type == "int" || type == "integer") {
      col.type = SqlType::kInteger;
    } else if (type == "float" || type == "double") {
      col.type = SqlType::kFloat;
    } else if (type == "text" || type == "string") {
      col.type = SqlType::kText;
    } else if (type == "any") {
      col.type = SqlType::kAny;
    } else {
      throw ConfigError("unknown column type '" + type + "' in schema spec");
    }
    if (col.name.empty()) throw ConfigError("empty column name in schema spec");
    schema.push_back(std::move(col));
  }
  return schema;
}

SqlDumpParser::SqlDumpParser(std::istream& in, SqlSchema schema)
    : in_(in), schema_(std::move(schema)), buf_(1 << 16) {}

bool SqlDumpParser::refill() {
  consumed_ += len_;
  pos_ = 0;
  len_ = 0;
  if (!in_) return false;
  in_.read(buf_.data(), static_cast<std::streamsize>(buf_.size()));
  len_ = static_cast<size_t>(in_.gcount());
  return len_ > 0;
}

void SqlDumpParser::skip_whitespace() {
  while (is_space(peek())) get();
}

void SqlDumpParser::skip_line() {
  int c;
  while ((c = get()) != kEof && c != '\n') {
  }
}

void SqlDumpParser::skip_block_comment() {
  // Opening "/*" already consumed.
  uint64_t start = offset() - 2;
  int prev = 0;
  while (true) {
    int c = get();
    if (c == kEof) throw MalformedStatement("unterminated comment", start);
    if (prev == '*' && c == '/') return;
    prev = c;
  }
}

void SqlDumpParser::skip_quoted(int quote) {
  uint64_t start = offset() - 1;
  while (true) {
    int c = get();
    if (c == kEof) throw MalformedStatement("unterminated string", start);
    if (c == '\\' && quote != '`') {
      if (get() == kEof) throw MalformedStatement("unterminated string", start);
      continue;
    }
    if (c == quote) {
      if (peek() == quote) {
        get();
        continue;
      }
      return;
    }
  }
}

void SqlDumpParser::skip_statement() {
  while (true) {
    int c = get();
    if (c == kEof || c == ';') return;
    if (c == '\'' || c == '"' || c == '`') {
      skip_quoted(c);
    } else if (c == '/' && peek() == '*') {
      get();
      skip_block_comment();
    }
  }
}

std::string SqlDumpParser::read_word() {
  std::string word;
  while (is_word_char(peek())) word.push_back(static_cast<char>(get()));
  return word;
}

void SqlDumpParser::parse_insert_header() {
  uint64_t start = offset();
  while (true) {
    skip_whitespace();
    int c = peek();
    if (c == kEof || c == ';') {
      throw MalformedStatement("INSERT without VALUES", start);
    }
    if (c == '`' || c == '"' || c == '\'') {
      get();
      skip_quoted(c);
    } else if (c == '(') {
      // Column list.
      get();
      while ((c = get()) != ')') {
        if (c == kEof) throw MalformedStatement("unterminated column list", start);
        if (c == '`') skip_quoted(c);
      }
    } else if (is_word_char(c)) {
      if (iequals_ascii(read_word(), "VALUES")) return;
    } else {
      get();
    }
  }
}

std::string SqlDumpParser::parse_string(int quote) {
  // Opening quote already consumed.
  uint64_t start = offset() - 1;
  std::string out;
  while (true) {
    int c = get();
    if (c == kEof) throw MalformedStatement("unterminated string", start);
    if (c == quote) {
      if (peek() == quote) {
        out.push_back(static_cast<char>(get()));
        continue;
      }
      break;
    }
    if (c != '\\') {
      out.push_back(static_cast<char>(c));
      continue;
    }
    int e = get();
    switch (e) {
      case kEof:
        throw MalformedStatement("unterminated string", start);
      case '0':
        out.push_back('\0');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case 'r':
        out.push_back('\r');
        break;
      case 't':
        out.push_back('\t');
        break;
      case 'b':
        out.push_back('\b');
        break;
      case 'Z':
        out.push_back('\x1A');
        break;
      case '%':
      case '_':
        // MySQL keeps the backslash for LIKE wildcards.
        out.push_back('\\');
        out.push_back(static_cast<char>(e));
        break;
      default:
        out.push_back(static_cast<char>(e));
    }
  }
  return to_valid_utf8(out);
}

std::string SqlDumpParser::parse_hex() {
  // "0x" already consumed.
  uint64_t start = offset() - 2;
  std::string bytes;
  while (true) {
    int hi = hex_value(peek());
    if (hi < 0) break;
    get();
    int lo = hex_value(peek());
    if (lo < 0) throw MalformedStatement("odd-length hex literal", start);
    get();
    bytes.push_back(static_cast<char>(hi * 16 + lo));
  }
  if (is_word_char(peek())) throw MalformedStatement("bad hex literal", start);
  return to_valid_utf8(bytes);
}

SqlValue SqlDumpParser::parse_number(std::string text) {
  uint64_t start = offset() - text.size();
  bool integral = true;
  while (true) {
    int c = peek();
    if ((c >= '0' && c <= '9') || c == '-' || c == '+') {
      text.push_back(static_cast<char>(get()));
    } else if (c == '.' || c == 'e' || c == 'E') {
      integral = false;
      text.push_back(static_cast<char>(get()));
    } else {
      break;
    }
  }
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  if (integral) {
    if (auto v = parse_int64(digits)) return *v;
  }
  if (auto v = parse_double(digits)) return *v;
  throw MalformedStatement("bad numeric literal '" + text + "'", start);
}

SqlValue SqlDumpParser::parse_value() {
  int c = peek();
  if (c == '\'' || c == '"') {
    get();
    return parse_string(c);
  }
  if (c == '0') {
    get();
    if (peek() == 'x' || peek() == 'X') {
      get();
      return parse_hex();
    }
    return parse_number("0");
  }
  if ((c >= '1' && c <= '9') || c == '-' || c == '+' || c == '.') {
    return parse_number({});
  }
  if (c == 'N' || c == 'n') {
    uint64_t start = offset();
    if (iequals_ascii(read_word(), "NULL")) return std::monostate{};
    throw MalformedStatement("unexpected identifier in VALUES", start);
  }
  if (c == kEof) throw MalformedStatement("unterminated parenthesis", offset());
  throw MalformedStatement(
      std::string("unexpected character '") + static_cast<char>(c) + "'",
      offset());
}

void SqlDumpParser::parse_tuple(SqlRow* row) {
  // Opening parenthesis already consumed.
  uint64_t start = offset() - 1;
  row->clear();
  skip_whitespace();
  if (peek() == ')') {
    get();
    return;
  }
  while (true) {
    skip_whitespace();
    row->push_back(parse_value());
    skip_whitespace();
    int c = get();
    if (c == ',') continue;
    if (c == ')') return;
    if (c == kEof) throw MalformedStatement("unterminated parenthesis", start);
    throw MalformedStatement(
        std::string("unexpected character '") + static_cast<char>(c) +
            "' in tuple",
        offset() - 1);
  }
}

void SqlDumpParser::check_row(const SqlRow& row) const {
  if (schema_.empty()) return;
  if (row.size() != schema_.size()) {
    throw ColumnCountMismatch(statement_index_, schema_.size(), row.size());
  }
  for (size_t i = 0; i < row.size(); ++i) {
    const SqlValue& v = row[i];
    bool ok = true;
    switch (schema_[i].type) {
      case SqlType::kAny:
        break;
      case SqlType::kInteger:
        ok = !std::holds_alternative<double>(v) &&
             !std::holds_alternative<std::string>(v);
        break;
      case SqlType::kFloat:
        ok = !std::holds_alternative<std::string>(v);
        break;
      case SqlType::kText:
        ok = std::holds_alternative<std::monostate>(v) ||
             std::holds_alternative<std::string>(v);
        break;
    }
    if (!ok) {
      throw ColumnTypeMismatch(statement_index_, schema_[i].name + " (" +
                                                     type_name(schema_[i].type) +
                                                     ")");
    }
  }
}

bool SqlDumpParser::next(SqlRow* row) {
  while (true) {
    if (in_values_) {
      skip_whitespace();
      uint64_t at = offset();
      int c = get();
      if (c != '(') {
        if (c == kEof) throw MalformedStatement("unterminated INSERT", at);
        throw MalformedStatement("expected '(' in VALUES list", at);
      }
      parse_tuple(row);
      check_row(*row);
      skip_whitespace();
      at = offset();
      c = get();
      if (c == ';') {
        in_values_ = false;
      } else if (c != ',') {
        if (c == kEof) throw MalformedStatement("unterminated INSERT", at);
        throw MalformedStatement("expected ',' or ';' after tuple", at);
      }
      ++rows_;
      return true;
    }
    skip_whitespace();
    int c = get();
    if (c == kEof) return false;
    if (c == ';') continue;
    if (c == '#') {
      skip_line();
      continue;
    }
    if (c == '-' && peek() == '-') {
      skip_line();
      continue;
    }
    if (c == '/' && peek() == '*') {
      get();
      skip_block_comment();
      continue;
    }
    ++statement_index_;
    if (c == 'I' || c == 'i') {
      std::string word = static_cast<char>(c) + read_word();
      if (iequals_ascii(word, "INSERT")) {
        parse_insert_header();
        in_values_ = true;
        ++insert_statements_;
        continue;
      }
    }
    if (c == '\'' || c == '"' || c == '`') skip_quoted(c);
    skip_statement();
  }
}

std::string sql_quote(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('\'');
  for (char c : text) {
    switch (c) {
      case '\0':
        out += "\\0";
        break;
      case '\'':
        out += "\\'";
        break;
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\x1A':
        out += "\\Z";
        break;
      default:
        out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

std::string format_sql_value(const SqlValue& value) {
  if (std::holds_alternative<std::monostate>(value)) return "NULL";
  if (auto* i = std::get_if<int64_t>(&value)) return std::to_string(*i);
  if (auto* d = std::get_if<double>(&value)) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), *d);
    std::string s(buf, res.ptr);
    // Keep floats distinguishable from integers on re-parse.
    if (s.find_first_of(".eE") == std::string::npos &&
        s.find_first_of("ni") == std::string::npos) {
      s += ".0";
    }
    return s;
  }
  return sql_quote(std::get<std::string>(value));
}

std::string format_insert(std::string_view table, const std::vector<SqlRow>& rows) {
  std::string out = "INSERT INTO `" + std::string(table) + "` VALUES ";
  for (size_t r = 0; r < rows.size(); ++r) {
    if (r) out.push_back(',');
    out.push_back('(');
    for (size_t i = 0; i < rows[r].size(); ++i) {
      if (i) out.push_back(',');
      out += format_sql_value(rows[r][i]);
    }
    out.push_back(')');
  }
  out += ";\n";
  return out;
}

}  // namespace wikikg::ingest
