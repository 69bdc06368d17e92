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

#ifndef WIKIKG_NORMALIZE_DOMAIN_RULES_H_
#define WIKIKG_NORMALIZE_DOMAIN_RULES_H_

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wikikg::normalize {

enum class RuleKind {
  kIdentity,       // placeholder, no change
  kKeepParams,     // drop query parameters not listed, drop fragment
  kPathTemplate,   // truncate path to the template's segments, drop query
  kStripFragment,  // drop "#..."
  kWayback,        // host serves Wayback-style "/web/<ts>/<original>" URLs
  kArchiveToday,   // host serves archive.today-style "/<ts>/<original>" URLs
};

const char* to_string(RuleKind kind);

struct DomainRule {
  std::string domain;
  RuleKind kind = RuleKind::kIdentity;
  std::vector<std::string> args;
};

// Rule table keyed by domain. One rule per domain; a host matches the rule
// of the longest domain that equals it or is a dot-separated suffix of it.
//
// File format, one rule per line ('#' starts a comment):
//   <domain> <rule-kind> <args>
// where rule-kind is identity, keep-params <p1,p2,...>,
// path-template </seg/*/seg>, strip-fragment, wayback or archive-today.
class DomainRuleSet {
 public:
  // Archive hosts only (web.archive.org, archive.today and its mirrors).
  static DomainRuleSet builtin();
  static DomainRuleSet load(const std::filesystem::path& path);
  // Rules from `in` layered over builtin().
  static DomainRuleSet parse(std::istream& in, const std::string& source);

  // Throws ConfigError when the domain already has a rule.
  void add(DomainRule rule);

  // Rewrite rule for a host (archive kinds excluded), or nullptr.
  const DomainRule* match(std::string_view host) const;
  // Archive rule for a host, or nullptr.
  const DomainRule* archive_match(std::string_view host) const;

  size_t size() const { return rules_.size(); }
  const std::string& version() const { return version_; }

 private:
  const DomainRule* longest_suffix(std::string_view host, bool archive) const;

  std::map<std::string, DomainRule, std::less<>> rules_;
  std::string version_;
};

}  // namespace wikikg::normalize

#endif  // WIKIKG_NORMALIZE_DOMAIN_RULES_H_
