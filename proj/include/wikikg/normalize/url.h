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

#ifndef WIKIKG_NORMALIZE_URL_H_
#define WIKIKG_NORMALIZE_URL_H_

#include <string>
#include <string_view>

#include "wikikg/common/expected.h"
#include "wikikg/normalize/domain_rules.h"

namespace wikikg::normalize {

// A canonical external link: no http(s) scheme, lower-case authority, no
// trailing slash. `domain` is the lower-case host without user info or port.
struct CanonicalUrl {
  std::string url;
  std::string domain;

  bool operator==(const CanonicalUrl&) const = default;
};

struct UrlReject {
  std::string reason;
};

// Full canonicalization: whitespace repair, scheme removal, authority
// lower-casing, archive unwrapping, per-domain rules, trailing-slash removal.
// Inputs without a recognizable host are rejected, never thrown.
Expected<CanonicalUrl, UrlReject> normalize_url(std::string_view raw,
                                                const DomainRuleSet& rules);

// Returns the original URL embedded in an archive-service URL. Nested
// wrappers are unwrapped until the result is no longer an archive URL; each
// level is strictly shorter, so this terminates. The input is expected to be
// scheme-stripped; the result keeps whatever scheme the embedded URL carried.
std::string unarchive_url(std::string_view url, const DomainRuleSet& rules);

// Applies the rule of the longest matching domain; identity when none.
CanonicalUrl apply_domain_rules(const CanonicalUrl& url, const DomainRuleSet& rules);

// Removes a leading "http://", "https://" (any case, any number of slashes)
// or protocol-relative "//".
std::string_view strip_http_scheme(std::string_view url);

}  // namespace wikikg::normalize

#endif  // WIKIKG_NORMALIZE_URL_H_
