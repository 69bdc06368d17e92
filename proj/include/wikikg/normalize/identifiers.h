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

#ifndef WIKIKG_NORMALIZE_IDENTIFIERS_H_
#define WIKIKG_NORMALIZE_IDENTIFIERS_H_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wikikg/common/expected.h"

namespace wikikg::normalize {

struct IdentifierPair {
  std::string scheme;
  std::string value;

  auto operator<=>(const IdentifierPair&) const = default;
};

enum class IdentifierErrorKind {
  kUnknownScheme,
  kInvalidDoi,
  kInvalidIsbn,
  kInvalidValue,
  kEmptyValue,
  kEmptyIdentifierSet,
};

const char* to_string(IdentifierErrorKind kind);

struct IdentifierError {
  IdentifierErrorKind kind;
  std::string detail;
};

// Separator between "scheme:value" items of an identity key (ASCII unit
// separator, which never survives value normalization).
inline constexpr char kKeySeparator = '\x1F';

// The configured identifier schemes, in column order, plus aliases.
class IdentifierVocabulary {
 public:
  // doi, isbn, pmid, pmc, arxiv, bibcode, issn, oclc, jstor, mr, zbl, ssrn,
  // hdl, lccn, olid, osti, rfc, s2cid, citeseerx, asin.
  static IdentifierVocabulary defaults();

  explicit IdentifierVocabulary(std::vector<std::string> schemes,
                                std::map<std::string, std::string> aliases = {});

  // Canonical scheme for a raw scheme name or alias (any case).
  std::optional<std::string> canonical(std::string_view scheme) const;
  // Column index of a canonical scheme, or -1.
  int index_of(std::string_view scheme) const;

  const std::vector<std::string>& schemes() const { return schemes_; }

 private:
  std::vector<std::string> schemes_;
  std::map<std::string, std::string, std::less<>> lookup_;
};

// "10.<registrant>/<suffix>", lower-cased, with resolver prefixes and trailing
// wikitext punctuation removed. A trailing ')' is only removed when it has no
// matching '(' in the DOI.
Expected<std::string, IdentifierError> normalize_doi(std::string_view raw);

// 13 digits with a valid check digit; valid ISBN-10s are converted.
Expected<std::string, IdentifierError> normalize_isbn(std::string_view raw);

bool isbn10_valid(std::string_view ten);
bool isbn13_valid(std::string_view thirteen);
// Check digit for the first 12 digits of an ISBN-13.
char isbn13_check_digit(std::string_view twelve);

// Dispatches on the scheme: doi and isbn get their full rules, every other
// scheme is trimmed and case-folded (bibcode keeps its case).
Expected<IdentifierPair, IdentifierError> normalize_identifier(
    std::string_view scheme, std::string_view value, const IdentifierVocabulary& vocab);

// Sorted, deduplicated "scheme:value" items joined by kKeySeparator.
Expected<std::string, IdentifierError> pub_identity_key(std::vector<IdentifierPair> ids);

// Inverse of pub_identity_key.
std::vector<IdentifierPair> parse_identity_key(std::string_view key);

}  // namespace wikikg::normalize

#endif  // WIKIKG_NORMALIZE_IDENTIFIERS_H_
