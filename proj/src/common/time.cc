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

#include "wikikg/common/time.h"

#include <cstdio>

namespace wikikg {
namespace {

bool read_digits(std::string_view text, size_t pos, size_t count, int* out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (size_t i = pos; i < pos + count; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  *out = value;
  return true;
}

std::optional<Date> make_date(int y, int m, int d) {
  std::chrono::year_month_day ymd{std::chrono::year{y},
                                  std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days(ymd);
}

std::optional<Timestamp> make_timestamp(int y, int mo, int d, int h, int mi,
                                        int s) {
  auto date = make_date(y, mo, d);
  if (!date || h > 23 || mi > 59 || s > 60) return std::nullopt;
  return start_of_day(*date) + std::chrono::hours(h) +
         std::chrono::minutes(mi) + std::chrono::seconds(s);
}

}  // namespace

std::optional<Timestamp> parse_iso_timestamp(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS[Z]
  if (text.size() != 19 && !(text.size() == 20 && text[19] == 'Z')) {
    return std::nullopt;
  }
  if (text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':') {
    return std::nullopt;
  }
  int y, mo, d, h, mi, s;
  if (!read_digits(text, 0, 4, &y) || !read_digits(text, 5, 2, &mo) ||
      !read_digits(text, 8, 2, &d) || !read_digits(text, 11, 2, &h) ||
      !read_digits(text, 14, 2, &mi) || !read_digits(text, 17, 2, &s)) {
    return std::nullopt;
  }
  return make_timestamp(y, mo, d, h, mi, s);
}

std::optional<Timestamp> parse_mediawiki_timestamp(std::string_view text) {
  if (text.size() != 14) return std::nullopt;
  int y, mo, d, h, mi, s;
  if (!read_digits(text, 0, 4, &y) || !read_digits(text, 4, 2, &mo) ||
      !read_digits(text, 6, 2, &d) || !read_digits(text, 8, 2, &h) ||
      !read_digits(text, 10, 2, &mi) || !read_digits(text, 12, 2, &s)) {
    return std::nullopt;
  }
  return make_timestamp(y, mo, d, h, mi, s);
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  if (text.size() == 14) return parse_mediawiki_timestamp(text);
  return parse_iso_timestamp(text);
}

std::optional<Date> parse_date(std::string_view text) {
  int y, m, d;
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    if (read_digits(text, 0, 4, &y) && read_digits(text, 5, 2, &m) &&
        read_digits(text, 8, 2, &d)) {
      return make_date(y, m, d);
    }
  } else if (text.size() == 8) {
    if (read_digits(text, 0, 4, &y) && read_digits(text, 4, 2, &m) &&
        read_digits(text, 6, 2, &d)) {
      return make_date(y, m, d);
    }
  }
  return std::nullopt;
}

std::string format_timestamp(Timestamp ts) {
  auto day = std::chrono::floor<std::chrono::days>(ts);
  std::chrono::year_month_day ymd{day};
  std::chrono::hh_mm_ss hms{ts - day};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::string format_date(Date d) {
  std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace wikikg
