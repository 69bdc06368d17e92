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

#include "wikikg/normalize/url.h"

#include <gtest/gtest.h>

#include <sstream>

#include "golden.h"
#include "harness.h"
#include "oracles.h"
#include "wikikg/common/error.h"

namespace wikikg::normalize {
namespace {

TEST(UrlGolden, CorpusIsLargeEnough) { EXPECT_GE(test::url_cases().size(), 30u); }

TEST(UrlGolden, Cases) {
  DomainRuleSet rules = test::url_case_rules();
  for (const auto& c : test::url_cases()) {
    SCOPED_TRACE(c.name);
    auto got = normalize_url(c.raw, rules);
    if (!c.url) {
      EXPECT_FALSE(got.ok()) << got->url;
      continue;
    }
    ASSERT_TRUE(got.ok()) << got.error().reason;
    EXPECT_EQ(got->url, *c.url);
    EXPECT_EQ(got->domain, c.domain);
  }
}

TEST(UrlProperty, IdempotentOnFuzzedUrls) {
  DomainRuleSet rules = test::url_case_rules();
  test::Rng rng(3);
  size_t accepted = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string raw = test::random_url(rng);
    auto once = normalize_url(raw, rules);
    if (!once) continue;
    ++accepted;
    auto twice = normalize_url(once->url, rules);
    ASSERT_TRUE(twice.ok()) << raw;
    ASSERT_EQ(twice->url, once->url) << raw;
    ASSERT_EQ(twice->domain, once->domain) << raw;
  }
  EXPECT_GT(accepted, 5000u);
}

TEST(UrlProperty, ArbitraryBytesNeverThrow) {
  DomainRuleSet rules = test::url_case_rules();
  test::Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    std::string raw = test::random_bytes(rng, 64);
    EXPECT_NO_THROW((void)normalize_url(raw, rules));
  }
}

TEST(Url, DeepArchiveNestingUnwrapsFully) {
  DomainRuleSet rules = DomainRuleSet::builtin();
  std::string url = "example.com/x";
  for (int i = 0; i < 6; ++i) url = "web.archive.org/web/2020/" + url;
  EXPECT_EQ(unarchive_url(url, rules), "example.com/x");
  EXPECT_EQ(normalize_url("https://" + url, rules)->url, "example.com/x");
}

TEST(Url, StripHttpScheme) {
  EXPECT_EQ(strip_http_scheme("HtTp://x.org"), "x.org");
  EXPECT_EQ(strip_http_scheme("https:////x.org"), "x.org");
  EXPECT_EQ(strip_http_scheme("ftp://x.org"), "ftp://x.org");
}

TEST(DomainRules, LongestSuffixWins) {
  std::istringstream in(
      "example.com strip-fragment\n"
      "docs.example.com keep-params page\n");
  DomainRuleSet rules = DomainRuleSet::parse(in, "inline");
  ASSERT_NE(rules.match("a.docs.example.com"), nullptr);
  EXPECT_EQ(rules.match("a.docs.example.com")->kind, RuleKind::kKeepParams);
  EXPECT_EQ(rules.match("www.example.com")->kind, RuleKind::kStripFragment);
  EXPECT_EQ(rules.match("notexample.com"), nullptr);
  EXPECT_EQ(rules.match("web.archive.org"), nullptr);
  EXPECT_NE(rules.archive_match("web.archive.org"), nullptr);
}

TEST(DomainRules, DuplicateDomainIsAConfigError) {
  std::istringstream in("example.com identity\nexample.com strip-fragment\n");
  EXPECT_THROW(DomainRuleSet::parse(in, "inline"), ConfigError);
}

TEST(DomainRules, ShippedRuleFileLoads) {
  DomainRuleSet rules = DomainRuleSet::load(test::source_dir() / "data" / "domain_rules.txt");
  EXPECT_EQ(rules.match("books.google.de")->kind, RuleKind::kKeepParams);
}

}  // namespace
}  // namespace wikikg::normalize
