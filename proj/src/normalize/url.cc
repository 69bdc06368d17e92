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

#include <optional>

#include "wikikg/common/text.h"

namespace wikikg::normalize {
namespace {

struct UrlParts {
  std::string scheme_prefix;  // non-http scheme including "://", else empty
  std::string authority;
  std::string rest;  // path, query and fragment
  std::string host;

  std::string joined() const { return scheme_prefix + authority + rest; }
};

std::string repair_whitespace(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : trim(raw)) {
    if (c == '\r' || c == '\n') continue;
    if (c == ' ' || c == '\t' || c == '\f' || c == '\v') {
      out += "%20";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Length of a leading "<scheme>://" for schemes other than http(s), else 0.
size_t other_scheme_length(std::string_view u) {
  if (u.empty() || !((u[0] >= 'a' && u[0] <= 'z') || (u[0] >= 'A' && u[0] <= 'Z'))) {
    return 0;
  }
  size_t i = 1;
  while (i < u.size() && (is_alnum(u[i]) || u[i] == '+' || u[i] == '.' || u[i] == '-')) {
    ++i;
  }
  if (u.substr(i, 3) == "://") return i + 3;
  return 0;
}

std::optional<std::string> host_of(std::string_view authority) {
  size_t at = authority.rfind('@');
  std::string_view host =
      at == std::string_view::npos ? authority : authority.substr(at + 1);
  if (!host.empty() && host.front() == '[') {
    size_t close = host.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    std::string_view after = host.substr(close + 1);
    if (!after.empty() && (after.front() != ':' ||
                           (after.size() > 1 && !parse_uint64(after.substr(1))))) {
      return std::nullopt;
    }
    return std::string(host.substr(0, close + 1));
  }
  if (size_t colon = host.find(':'); colon != std::string_view::npos) {
    std::string_view port = host.substr(colon + 1);
    if (!port.empty() && !parse_uint64(port)) return std::nullopt;
    host = host.substr(0, colon);
  }
  if (host.empty() || host.front() == '.' || host.find('.') == std::string_view::npos) {
    return std::nullopt;
  }
  bool has_alnum = false;
  for (char c : host) {
    auto u = static_cast<unsigned char>(c);
    if (is_alnum(c) || u >= 0x80) {
      has_alnum = true;
    } else if (c != '-' && c != '.' && c != '_' && c != '%' && c != '~') {
      return std::nullopt;
    }
  }
  if (!has_alnum) return std::nullopt;
  return std::string(host);
}

// Scheme removal, authority split and lower-casing, host validation.
std::optional<UrlParts> split_url(std::string_view s) {
  s = strip_http_scheme(s);
  UrlParts parts;
  size_t scheme_len = other_scheme_length(s);
  parts.scheme_prefix = to_lower_ascii(s.substr(0, scheme_len));
  s.remove_prefix(scheme_len);
  size_t auth_end = s.find_first_of("/?#");
  if (auth_end == std::string_view::npos) auth_end = s.size();
  parts.authority = to_lower_ascii(s.substr(0, auth_end));
  parts.rest = std::string(s.substr(auth_end));
  auto host = host_of(parts.authority);
  if (!host) return std::nullopt;
  parts.host = std::move(*host);
  return parts;
}

bool is_wayback_timestamp(std::string_view ts) {
  if (ts == "*") return true;
  size_t i = 0;
  while (i < ts.size() && ts[i] >= '0' && ts[i] <= '9') ++i;
  if (i == 0) return false;
  for (; i < ts.size(); ++i) {
    if (!((ts[i] >= 'a' && ts[i] <= 'z') || ts[i] == '_')) return false;
  }
  return true;
}

bool is_archive_today_stamp(std::string_view seg) {
  if (seg == "newest" || seg == "oldest" || seg == "latest") return true;
  if (seg.empty()) return false;
  for (char c : seg) {
    if (!((c >= '0' && c <= '9') || c == '.' || c == '-')) return false;
  }
  return true;
}

bool starts_with_http(std::string_view s) {
  return istarts_with_ascii(s, "http:") || istarts_with_ascii(s, "https:");
}

// One level of archive unwrapping on a split URL.
std::optional<std::string> unarchive_once(const UrlParts& parts,
                                          const DomainRuleSet& rules) {
  if (!parts.scheme_prefix.empty()) return std::nullopt;
  const DomainRule* rule = rules.archive_match(parts.host);
  if (!rule) return std::nullopt;
  std::string_view path = parts.rest;
  if (rule->kind == RuleKind::kWayback) {
    if (!path.starts_with("/web/")) return std::nullopt;
    std::string_view after = path.substr(5);
    size_t slash = after.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    if (!is_wayback_timestamp(after.substr(0, slash))) return std::nullopt;
    std::string_view original = after.substr(slash + 1);
    if (original.empty()) return std::nullopt;
    return std::string(original);
  }
  // archive.today: the original follows one or two leading segments.
  if (!path.starts_with("/")) return std::nullopt;
  std::string_view p = path.substr(1);
  size_t pos = 0;
  for (int seg = 0; seg < 3 && pos < p.size(); ++seg) {
    if (starts_with_http(p.substr(pos))) return std::string(p.substr(pos));
    size_t slash = p.find('/', pos);
    if (slash == std::string_view::npos) break;
    pos = slash + 1;
  }
  size_t slash = p.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  if (!is_archive_today_stamp(p.substr(0, slash))) return std::nullopt;
  std::string_view rest = p.substr(slash + 1);
  std::string_view first = rest.substr(0, rest.find_first_of("/?#"));
  if (first.find('.') == std::string_view::npos) return std::nullopt;
  return std::string(rest);
}

std::string strip_trailing_slashes(std::string s) {
  while (!s.empty() && s.back() == '/') s.pop_back();
  return s;
}

}  // namespace

std::string_view strip_http_scheme(std::string_view url) {
  while (true) {
    if (istarts_with_ascii(url, "https:")) {
      url.remove_prefix(6);
    } else if (istarts_with_ascii(url, "http:")) {
      url.remove_prefix(5);
    } else if (url.starts_with("//")) {
      // protocol-relative
    } else {
      return url;
    }
    while (url.starts_with("/")) url.remove_prefix(1);
  }
}

std::string unarchive_url(std::string_view url, const DomainRuleSet& rules) {
  std::string current(url);
  while (auto parts = split_url(current)) {
    auto inner = unarchive_once(*parts, rules);
    if (!inner) break;
    current = std::move(*inner);
  }
  return current;
}

CanonicalUrl apply_domain_rules(const CanonicalUrl& url, const DomainRuleSet& rules) {
  const DomainRule* rule = rules.match(url.domain);
  if (!rule) return url;
  size_t scheme_len = other_scheme_length(url.url);
  size_t rest_pos = url.url.find_first_of("/?#", scheme_len);
  if (rest_pos == std::string::npos) return url;
  std::string head = url.url.substr(0, rest_pos);
  std::string_view rest = std::string_view(url.url).substr(rest_pos);

  CanonicalUrl out = url;
  switch (rule->kind) {
    case RuleKind::kIdentity:
    case RuleKind::kWayback:
    case RuleKind::kArchiveToday:
      return url;
    case RuleKind::kStripFragment:
      out.url = head + std::string(rest.substr(0, rest.find('#')));
      return out;
    case RuleKind::kKeepParams: {
      std::string_view no_fragment = rest.substr(0, rest.find('#'));
      size_t q = no_fragment.find('?');
      std::string path(no_fragment.substr(0, q));
      std::string kept;
      if (q != std::string_view::npos) {
        for (auto param : split(no_fragment.substr(q + 1), '&')) {
          std::string_view name = param.substr(0, param.find('='));
          bool keep = false;
          for (const auto& allowed : rule->args) keep = keep || name == allowed;
          if (!keep) continue;
          kept += kept.empty() ? "?" : "&";
          kept.append(param);
        }
      }
      out.url = head + path + kept;
      return out;
    }
    case RuleKind::kPathTemplate: {
      std::string_view path = rest.substr(0, rest.find_first_of("?#"));
      if (!path.starts_with("/")) return url;
      auto segments = split(path.substr(1), '/');
      if (segments.size() < rule->args.size()) return url;
      std::string truncated;
      for (size_t i = 0; i < rule->args.size(); ++i) {
        const std::string& want = rule->args[i];
        if (segments[i].empty() || (want != "*" && segments[i] != want)) return url;
        truncated += "/";
        truncated.append(segments[i]);
      }
      out.url = head + truncated;
      return out;
    }
  }
  return url;
}

Expected<CanonicalUrl, UrlReject> normalize_url(std::string_view raw,
                                                const DomainRuleSet& rules) {
  std::string cleaned = repair_whitespace(raw);
  if (cleaned.empty()) return UrlReject{"empty url"};
  auto parts = split_url(cleaned);
  if (!parts) return UrlReject{"no recognizable authority"};
  // Unwrap to the innermost level that still has a recognizable authority.
  // Trailing slashes go first so that the decision matches a second pass
  // over the output.
  while (auto inner = unarchive_once(*parts, rules)) {
    auto next = split_url(strip_trailing_slashes(std::move(*inner)));
    if (!next) break;
    parts = std::move(next);
  }
  CanonicalUrl url{parts->joined(), parts->host};
  url = apply_domain_rules(url, rules);
  url.url = strip_trailing_slashes(std::move(url.url));
  return url;
}

}  // namespace wikikg::normalize
