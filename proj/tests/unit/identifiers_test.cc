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

#include "wikikg/normalize/identifiers.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "golden.h"
#include "oracles.h"
#include "wikikg/graph/reference_tables.h"

namespace wikikg::normalize {
namespace {

TEST(Isbn, TenThousandIsbn10Conversions) {
  test::Rng rng(13);
  for (int i = 0; i < 10000; ++i) {
    std::string ten = test::random_isbn10(rng);
    std::string expected = test::isbn10_to_13_reference(ten);
    ASSERT_TRUE(isbn10_valid(ten)) << ten;
    auto got = normalize_isbn(test::decorate_isbn(rng, ten));
    ASSERT_TRUE(got.ok()) << ten;
    ASSERT_EQ(*got, expected) << ten;
    ASSERT_TRUE(isbn13_valid(*got));
  }
}

TEST(Isbn, CorruptedCheckDigitIsRejected) {
  test::Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    std::string ten = test::random_isbn10(rng);
    char wrong = ten[9] == '0' ? '1' : '0';
    ten[9] = wrong;
    EXPECT_FALSE(normalize_isbn(ten).ok()) << ten;
  }
}

TEST(Isbn, KnownValues) {
  EXPECT_EQ(*normalize_isbn("0-306-40615-2"), "9780306406157");
  EXPECT_EQ(*normalize_isbn("ISBN-13: 978-0-306-40615-7"), "9780306406157");
  EXPECT_EQ(*normalize_isbn("080442957X"), "9780804429573");
  EXPECT_EQ(*normalize_isbn("979-10-90636-07-1"), "9791090636071");
  EXPECT_FALSE(normalize_isbn("978-0-306-40615-8").ok());
  EXPECT_FALSE(normalize_isbn("12345").ok());
  EXPECT_EQ(isbn13_check_digit("978030640615"), '7');
}

TEST(Doi, GoldenCases) {
  for (const auto& c : test::doi_cases()) {
    SCOPED_TRACE(c.raw);
    auto got = normalize_doi(c.raw);
    if (c.doi) {
      ASSERT_TRUE(got.ok());
      EXPECT_EQ(*got, *c.doi);
    } else {
      EXPECT_FALSE(got.ok());
    }
  }
}

TEST(Identifier, DispatchAndAliases) {
  auto vocab = IdentifierVocabulary::defaults();
  EXPECT_EQ(vocab.schemes().size(), 20u);
  EXPECT_EQ(*normalize_identifier("OL", " OL7353617M ", vocab),
            (IdentifierPair{"olid", "ol7353617m"}));
  EXPECT_EQ(*normalize_identifier("handle", "20.500/ABC", vocab),
            (IdentifierPair{"hdl", "20.500/abc"}));
  EXPECT_EQ(*normalize_identifier("bibcode", "1974AJ.....79..819H", vocab),
            (IdentifierPair{"bibcode", "1974AJ.....79..819H"}));
  EXPECT_EQ(normalize_identifier("FOO", "1", vocab).error().kind,
            IdentifierErrorKind::kUnknownScheme);
  EXPECT_EQ(normalize_identifier("pmid", "  ", vocab).error().kind,
            IdentifierErrorKind::kEmptyValue);
  EXPECT_EQ(normalize_identifier("doi", "nope", vocab).error().kind,
            IdentifierErrorKind::kInvalidDoi);
  EXPECT_EQ(normalize_identifier("isbn", "123", vocab).error().kind,
            IdentifierErrorKind::kInvalidIsbn);
}

TEST(PubKey, PermutationInvariant) {
  test::Rng rng(19);
  std::vector<IdentifierPair> ids = {{"doi", "10.1000/182"}, {"isbn", "9780306406157"},
                                     {"pmid", "123"},        {"arxiv", "1234.5678"},
                                     {"oclc", "42"},         {"doi", "10.1000/182"}};
  std::string key = *pub_identity_key(ids);
  for (int i = 0; i < 1000; ++i) {
    std::shuffle(ids.begin(), ids.end(), rng);
    size_t n = ids.size();
    ASSERT_EQ(*pub_identity_key(ids), key);
    ASSERT_EQ(n, ids.size());
  }
  auto parsed = parse_identity_key(key);
  EXPECT_EQ(parsed.size(), 5u);
  EXPECT_EQ(*pub_identity_key(parsed), key);
  EXPECT_FALSE(pub_identity_key({}).ok());
}

TEST(PubKey, ChapterAndBookStayDistinct) {
  auto vocab = IdentifierVocabulary::defaults();
  DomainRuleSet rules;
  ingest::CitationRecord chapter;
  chapter.source_page_id = 1;
  chapter.raw_identifiers = {{"DOI", "10.1007/978-3-540-12345-6_7"},
                             {"ISBN", "978-3-540-12345-3"}};
  ingest::CitationRecord book;
  book.source_page_id = 1;
  book.raw_identifiers = {{"ISBN", "3-540-12345-8"}};
  Counters counters;
  auto a = graph::normalize_citation(chapter, rules, vocab, &counters);
  auto b = graph::normalize_citation(book, rules, vocab, &counters);
  ASSERT_TRUE(a.pub_key && b.pub_key);
  EXPECT_NE(*a.pub_key, *b.pub_key);
  // The book's ISBN appears in both keys, yet the keys are not merged.
  EXPECT_NE(a.pub_key->find("isbn:9783540123453"), std::string::npos);
  EXPECT_EQ(*b.pub_key, "isbn:9783540123453");
}

}  // namespace
}  // namespace wikikg::normalize
