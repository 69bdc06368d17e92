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

#include <gtest/gtest.h>

#include <sstream>

#include "golden.h"
#include "oracles.h"
#include "wikikg/ingest/dump_tables.h"

namespace wikikg::ingest {
namespace {

using test::parse_sql;

TEST(SqlDumpGolden, CorpusIsLargeEnough) { EXPECT_GE(test::sql_cases().size(), 20u); }

TEST(SqlDumpGolden, HandDecodedStatements) {
  for (const auto& c : test::sql_cases()) {
    SCOPED_TRACE(c.name);
    EXPECT_EQ(parse_sql(c.text), c.rows);
  }
}

TEST(SqlDumpFuzz, RandomStatementsRoundTrip) {
  test::Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    auto rows = test::random_sql_rows(rng);
    std::string text = format_insert("t", rows);
    auto parsed = parse_sql(text);
    ASSERT_EQ(parsed, rows) << text;
    ASSERT_EQ(format_insert("t", parsed), text);
  }
}

TEST(SqlDump, StatementIndexTracksInserts) {
  std::istringstream in("INSERT INTO `t` VALUES (1);\nINSERT INTO `t` VALUES (2),(3);\n");
  SqlDumpParser parser(in, {});
  SqlRow row;
  std::vector<uint64_t> index;
  while (parser.next(&row)) index.push_back(parser.statement_index());
  EXPECT_EQ(index, (std::vector<uint64_t>{1, 2, 2}));
  EXPECT_EQ(parser.insert_statements(), 2u);
  EXPECT_EQ(parser.rows(), 3u);
}

TEST(SqlDump, RowsSpanningBufferRefills) {
  std::vector<SqlRow> rows;
  for (int64_t i = 0; i < 50000; ++i) rows.push_back({i, std::string(i % 37, 'x')});
  EXPECT_EQ(parse_sql(format_insert("t", rows)), rows);
}

TEST(SqlDump, UnterminatedStringReportsOffset) {
  try {
    parse_sql("INSERT INTO `t` VALUES (1,'abc");
    FAIL() << "expected MalformedStatement";
  } catch (const MalformedStatement& e) {
    EXPECT_EQ(e.offset(), 26u);
  }
}

TEST(SqlDump, MalformedInputThrows) {
  EXPECT_THROW(parse_sql("INSERT INTO `t` VALUES (1,2"), MalformedStatement);
  EXPECT_THROW(parse_sql("INSERT INTO `t` VALUES (1) (2);"), MalformedStatement);
  EXPECT_THROW(parse_sql("INSERT INTO `t` VALUES (bogus);"), MalformedStatement);
  EXPECT_THROW(parse_sql("INSERT INTO `t` VALUES (0x123);"), MalformedStatement);
  EXPECT_THROW(parse_sql("INSERT INTO `t` VALUES (1)"), MalformedStatement);
}

TEST(SqlDump, SchemaChecksColumnCountAndTypes) {
  SqlSchema schema = parse_schema_spec("id:int,name:text");
  {
    std::istringstream in("INSERT INTO `t` VALUES (1,'a'),(2);");
    SqlDumpParser parser(in, schema);
    SqlRow row;
    EXPECT_TRUE(parser.next(&row));
    EXPECT_THROW(parser.next(&row), ColumnCountMismatch);
  }
  {
    std::istringstream in("INSERT INTO `t` VALUES ('a','b');");
    SqlDumpParser parser(in, schema);
    SqlRow row;
    EXPECT_THROW(parser.next(&row), ColumnTypeMismatch);
  }
  {
    std::istringstream in("INSERT INTO `t` VALUES (NULL,NULL);");
    SqlDumpParser parser(in, schema);
    SqlRow row;
    EXPECT_TRUE(parser.next(&row));
  }
}

TEST(SqlDump, FloatsStayFloatsOnReparse) {
  EXPECT_EQ(format_sql_value(2.0), "2.0");
  EXPECT_EQ(format_sql_value(int64_t{2}), "2");
  EXPECT_EQ(format_sql_value(std::monostate{}), "NULL");
  EXPECT_EQ(sql_quote("a'b\\c"), "'a\\'b\\\\c'");
}

TEST(DumpTables, PageLinkRowsAndInvalidRows) {
  std::istringstream in(
      "INSERT INTO `pagelinks` VALUES (1,0,'Foo',0),(0,0,'Bar',0),(2,0,'',0),(3,14,'Baz',0);");
  PageLinkReader reader(in, default_pagelinks_schema());
  PageLinkRow row;
  std::vector<std::string> titles;
  while (reader.next(&row)) titles.push_back(row.to_title);
  EXPECT_EQ(titles, (std::vector<std::string>{"Foo", "Baz"}));
  EXPECT_EQ(reader.counters().get("rows_in"), 4u);
  EXPECT_EQ(reader.counters().get("invalid_rows"), 2u);
}

TEST(DumpTables, DomainIndexReconstruction) {
  EXPECT_EQ(url_from_domain_index("https://org.example.www.", "/path"),
            "https://www.example.org/path");
}

}  // namespace
}  // namespace wikikg::ingest
