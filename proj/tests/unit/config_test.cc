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

#include "wikikg/pipeline/config.h"

#include <gtest/gtest.h>

#include <set>

#include "harness.h"
#include "wikikg/common/error.h"

namespace wikikg::pipeline {
namespace {

TEST(Config, LoadsFixtureAndResolvesPaths) {
  auto raw = RawConfig::load(test::mini_wiki_dir() / "wikikg.ini");
  auto c = PipelineConfig::from(raw);
  ASSERT_EQ(c.history.size(), 2u);
  EXPECT_TRUE(c.history[0].is_absolute());
  EXPECT_EQ(c.history[0].filename(), "stub-meta-history1.xml");
  EXPECT_EQ(c.threads, 2);
  EXPECT_EQ(c.memory_ceiling, uint64_t{64} << 20);
  EXPECT_EQ(c.sort_budget(), uint64_t{8} << 20);
}

TEST(Config, UnknownKeyAndWrongSection) {
  test::ScratchDir dir;
  test::write_file(dir / "a.ini", "[input]\nbogus = 1\n");
  EXPECT_THROW(RawConfig::load(dir / "a.ini"), ConfigError);
  test::write_file(dir / "b.ini", "[run]\npage_dump = x.sql\n");
  EXPECT_THROW(RawConfig::load(dir / "b.ini"), ConfigError);
}

TEST(Config, Validation) {
  RawConfig raw(std::filesystem::temp_directory_path());
  raw.set("views_start", "2021-07-01");
  raw.set("views_end", "2021-06-30");
  EXPECT_THROW(PipelineConfig::from(raw), ConfigError);
  RawConfig small(std::filesystem::temp_directory_path());
  small.set("memory_ceiling", "1M");
  EXPECT_THROW(PipelineConfig::from(small), ConfigError);
  EXPECT_THROW(small.set("nope", "1"), ConfigError);
}

TEST(Config, ByteSizes) {
  EXPECT_EQ(parse_byte_size("2G"), uint64_t{2} << 30);
  EXPECT_EQ(parse_byte_size("512M"), uint64_t{512} << 20);
  EXPECT_EQ(parse_byte_size("64k"), uint64_t{64} << 10);
  EXPECT_EQ(parse_byte_size("1000"), 1000u);
  EXPECT_EQ(parse_byte_size("lots"), std::nullopt);
}

TEST(Config, EveryKeyHasAUniqueName) {
  std::set<std::string> names;
  for (const auto& k : config_keys()) EXPECT_TRUE(names.insert(k.name).second) << k.name;
  EXPECT_NE(find_config_key("memory_ceiling"), nullptr);
  EXPECT_EQ(find_config_key("nope"), nullptr);
}

}  // namespace
}  // namespace wikikg::pipeline
