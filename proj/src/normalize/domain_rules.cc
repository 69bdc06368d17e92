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

#include "wikikg/normalize/domain_rules.h"

#include <fstream>
#include <sstream>

#include "wikikg/common/error.h"
#include "wikikg/common/text.h"

namespace wikikg::normalize {
namespace {

bool is_archive(RuleKind k) {
  return k == RuleKind::kWayback || k == RuleKind::kArchiveToday;
}

}  // namespace

const char* to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::kIdentity:
      return "identity";
    case RuleKind::kKeepParams:
      return "keep-params";
    case RuleKind::kPathTemplate:
      return "path-template";
    case RuleKind::kStripFragment:
      return "strip-fragment";
    case RuleKind::kWayback:
      return "wayback";
    case RuleKind::kArchiveToday:
      return "archive-today";
  }
  return "identity";
}

DomainRuleSet DomainRuleSet::builtin() {
  DomainRuleSet set;
  for (const char* host : {"web.archive.org", "wayback.archive.org"}) {
    set.add({host, RuleKind::kWayback, {}});
  }
  for (const char* host : {"archive.today", "archive.is", "archive.ph",
                           "archive.li", "archive.vn", "archive.fo",
                           "archive.md"}) {
    set.add({host, RuleKind::kArchiveToday, {}});
  }
  return set;
}

DomainRuleSet DomainRuleSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open domain rule file: " + path.string());
  return parse(in, path.string());
}

DomainRuleSet DomainRuleSet::parse(std::istream& in, const std::string& source) {
  DomainRuleSet set = builtin();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.starts_with("# version:")) {
      set.version_ = std::string(trim(text.substr(10)));
      continue;
    }
    if (text.empty() || text.front() == '#') continue;
    std::istringstream fields{std::string(text)};
    std::string domain, kind, args;
    fields >> domain >> kind;
    std::getline(fields, args);
    auto fail = [&](const std::string& what) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": " + what);
    };
    if (domain.empty() || kind.empty()) fail("expected '<domain> <rule-kind> <args>'");
    DomainRule rule;
    rule.domain = to_lower_ascii(domain);
    std::string_view a = trim(args);
    if (kind == "identity") {
      rule.kind = RuleKind::kIdentity;
    } else if (kind == "keep-params") {
      rule.kind = RuleKind::kKeepParams;
      for (auto p : split(a, ',')) {
        if (!trim(p).empty()) rule.args.emplace_back(trim(p));
      }
      if (rule.args.empty()) fail("keep-params needs at least one parameter");
    } else if (kind == "path-template") {
      rule.kind = RuleKind::kPathTemplate;
      if (a.empty() || a.front() != '/') fail("path-template must start with '/'");
      for (auto seg : split(a.substr(1), '/')) {
        if (seg.empty()) fail("empty segment in path-template");
        rule.args.emplace_back(seg);
      }
    } else if (kind == "strip-fragment") {
      rule.kind = RuleKind::kStripFragment;
    } else if (kind == "wayback") {
      rule.kind = RuleKind::kWayback;
    } else if (kind == "archive-today") {
      rule.kind = RuleKind::kArchiveToday;
    } else {
      fail("unknown rule kind '" + kind + "'");
    }
    if (set.rules_.count(rule.domain) && is_archive(rule.kind) &&
        set.rules_.at(rule.domain).kind == rule.kind) {
      continue;  // restating a builtin archive host
    }
    try {
      set.add(std::move(rule));
    } catch (const ConfigError& e) {
      fail(e.what());
    }
  }
  return set;
}

void DomainRuleSet::add(DomainRule rule) {
  std::string key = rule.domain;
  if (!rules_.emplace(key, std::move(rule)).second) {
    throw ConfigError("duplicate rule for domain " + key);
  }
}

const DomainRule* DomainRuleSet::longest_suffix(std::string_view host,
                                                bool archive) const {
  // Walk from the full host to ever shorter dot-suffixes; the first hit is
  // the longest matching domain.
  std::string_view candidate = host;
  while (!candidate.empty()) {
    auto it = rules_.find(candidate);
    if (it != rules_.end() && is_archive(it->second.kind) == archive) {
      return &it->second;
    }
    size_t dot = candidate.find('.');
    if (dot == std::string_view::npos) break;
    candidate.remove_prefix(dot + 1);
  }
  return nullptr;
}

const DomainRule* DomainRuleSet::match(std::string_view host) const {
  return longest_suffix(host, false);
}

const DomainRule* DomainRuleSet::archive_match(std::string_view host) const {
  return longest_suffix(host, true);
}

}  // namespace wikikg::normalize
