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

#include <algorithm>

#include "wikikg/common/text.h"

namespace wikikg::normalize {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool has_control(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return static_cast<unsigned char>(c) < 0x20 || c == 0x7f; });
}

IdentifierError fail(IdentifierErrorKind kind, std::string_view raw) {
  return {kind, to_valid_utf8(raw)};
}

bool strip_prefix_icase(std::string_view* s, std::string_view prefix) {
  if (!istarts_with_ascii(*s, prefix)) return false;
  s->remove_prefix(prefix.size());
  return true;
}

// 10.<digits>(.<digits>)*/<suffix without whitespace>
bool doi_shape(std::string_view doi) {
  if (!doi.starts_with("10.")) return false;
  size_t slash = doi.find('/');
  if (slash == std::string_view::npos || slash + 1 == doi.size()) return false;
  std::string_view registrant = doi.substr(3, slash - 3);
  if (registrant.empty()) return false;
  for (auto part : split(registrant, '.')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), is_digit)) return false;
  }
  std::string_view suffix = doi.substr(slash + 1);
  return std::none_of(suffix.begin(), suffix.end(), is_space) && !has_control(suffix);
}

}  // namespace

const char* to_string(IdentifierErrorKind kind) {
  switch (kind) {
    case IdentifierErrorKind::kUnknownScheme:
      return "unknown_scheme";
    case IdentifierErrorKind::kInvalidDoi:
      return "invalid_doi";
    case IdentifierErrorKind::kInvalidIsbn:
      return "invalid_isbn";
    case IdentifierErrorKind::kInvalidValue:
      return "invalid_value";
    case IdentifierErrorKind::kEmptyValue:
      return "empty_value";
    case IdentifierErrorKind::kEmptyIdentifierSet:
      return "empty_identifier_set";
  }
  return "invalid_value";
}

IdentifierVocabulary IdentifierVocabulary::defaults() {
  return IdentifierVocabulary(
      {"doi", "isbn", "pmid", "pmc", "arxiv", "bibcode", "issn", "oclc", "jstor", "mr",
       "zbl", "ssrn", "hdl", "lccn", "olid", "osti", "rfc", "s2cid", "citeseerx", "asin"},
      {{"ol", "olid"}, {"handle", "hdl"}});
}

IdentifierVocabulary::IdentifierVocabulary(std::vector<std::string> schemes,
                                           std::map<std::string, std::string> aliases)
    : schemes_(std::move(schemes)) {
  for (auto& s : schemes_) {
    s = to_lower_ascii(s);
    lookup_[s] = s;
  }
  for (const auto& [alias, target] : aliases) {
    std::string t = to_lower_ascii(target);
    if (index_of(t) >= 0) lookup_.emplace(to_lower_ascii(alias), t);
  }
}

std::optional<std::string> IdentifierVocabulary::canonical(std::string_view scheme) const {
  auto it = lookup_.find(to_lower_ascii(trim(scheme)));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int IdentifierVocabulary::index_of(std::string_view scheme) const {
  auto it = std::find(schemes_.begin(), schemes_.end(), scheme);
  return it == schemes_.end() ? -1 : static_cast<int>(it - schemes_.begin());
}

Expected<std::string, IdentifierError> normalize_doi(std::string_view raw) {
  std::string_view s = trim(raw);
  // Resolver prefixes may be stacked ("doi:https://doi.org/...").
  bool stripped = true;
  while (stripped) {
    stripped = false;
    for (std::string_view p : {"https://dx.doi.org/", "http://dx.doi.org/", "https://doi.org/",
                               "http://doi.org/", "dx.doi.org/", "doi.org/", "doi:"}) {
      if (strip_prefix_icase(&s, p)) {
        s = trim(s);
        stripped = true;
      }
    }
  }
  while (!s.empty()) {
    char c = s.back();
    if (c == '.' || c == ',' || c == ';' || is_space(c)) {
      s.remove_suffix(1);
    } else if (c == ')' && std::count(s.begin(), s.end(), '(') <
                               std::count(s.begin(), s.end(), ')')) {
      s.remove_suffix(1);
    } else {
      break;
    }
  }
  if (s.empty()) return fail(IdentifierErrorKind::kInvalidDoi, raw);
  std::string doi = to_lower_ascii(to_valid_utf8(s));
  if (!doi_shape(doi)) return fail(IdentifierErrorKind::kInvalidDoi, raw);
  return doi;
}

bool isbn10_valid(std::string_view ten) {
  if (ten.size() != 10) return false;
  int sum = 0;
  for (int i = 0; i < 10; ++i) {
    char c = ten[i];
    int v;
    if (is_digit(c)) {
      v = c - '0';
    } else if (i == 9 && (c == 'X' || c == 'x')) {
      v = 10;
    } else {
      return false;
    }
    sum += (10 - i) * v;
  }
  return sum % 11 == 0;
}

char isbn13_check_digit(std::string_view twelve) {
  int sum = 0;
  for (int i = 0; i < 12; ++i) sum += (twelve[i] - '0') * (i % 2 == 0 ? 1 : 3);
  return static_cast<char>('0' + (10 - sum % 10) % 10);
}

bool isbn13_valid(std::string_view thirteen) {
  if (thirteen.size() != 13 || !std::all_of(thirteen.begin(), thirteen.end(), is_digit)) {
    return false;
  }
  return isbn13_check_digit(thirteen.substr(0, 12)) == thirteen[12];
}

Expected<std::string, IdentifierError> normalize_isbn(std::string_view raw) {
  std::string_view s = trim(raw);
  if (strip_prefix_icase(&s, "isbn")) {
    if (!strip_prefix_icase(&s, "-13")) strip_prefix_icase(&s, "-10");
    s = trim(s);
    if (s.starts_with(":")) s.remove_prefix(1);
  }
  std::string compact;
  for (char c : s) {
    if (c == '-' || is_space(c)) continue;
    compact.push_back(c);
  }
  if (compact.size() == 10 && isbn10_valid(compact)) {
    std::string twelve = "978" + compact.substr(0, 9);
    return twelve + isbn13_check_digit(twelve);
  }
  if (isbn13_valid(compact)) return compact;
  return fail(IdentifierErrorKind::kInvalidIsbn, raw);
}

Expected<IdentifierPair, IdentifierError> normalize_identifier(
    std::string_view scheme, std::string_view value, const IdentifierVocabulary& vocab) {
  auto canonical = vocab.canonical(scheme);
  if (!canonical) return fail(IdentifierErrorKind::kUnknownScheme, scheme);
  if (trim(value).empty()) return fail(IdentifierErrorKind::kEmptyValue, value);
  if (*canonical == "doi") {
    auto doi = normalize_doi(value);
    if (!doi) return doi.error();
    return IdentifierPair{*canonical, *doi};
  }
  if (*canonical == "isbn") {
    auto isbn = normalize_isbn(value);
    if (!isbn) return isbn.error();
    return IdentifierPair{*canonical, *isbn};
  }
  std::string v = to_valid_utf8(trim(value));
  if (has_control(v)) return fail(IdentifierErrorKind::kInvalidValue, value);
  if (*canonical != "bibcode") v = to_lower_ascii(v);
  return IdentifierPair{*canonical, std::move(v)};
}

Expected<std::string, IdentifierError> pub_identity_key(std::vector<IdentifierPair> ids) {
  if (ids.empty()) return IdentifierError{IdentifierErrorKind::kEmptyIdentifierSet, ""};
  std::vector<std::string> items;
  items.reserve(ids.size());
  for (const auto& id : ids) items.push_back(id.scheme + ":" + id.value);
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  std::string key;
  for (const auto& item : items) {
    if (!key.empty()) key.push_back(kKeySeparator);
    key += item;
  }
  return key;
}

std::vector<IdentifierPair> parse_identity_key(std::string_view key) {
  std::vector<IdentifierPair> out;
  if (key.empty()) return out;
  for (auto item : split(key, kKeySeparator)) {
    size_t colon = item.find(':');
    if (colon == std::string_view::npos) continue;
    out.push_back({std::string(item.substr(0, colon)), std::string(item.substr(colon + 1))});
  }
  return out;
}

}  // namespace wikikg::normalize
