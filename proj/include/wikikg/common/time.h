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

#ifndef WIKIKG_COMMON_TIME_H_
#define WIKIKG_COMMON_TIME_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace wikikg {

using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

// Closed interval of calendar days.
struct DateRange {
  Date start;
  Date end;

  bool contains(Date d) const { return start <= d && d <= end; }
};

// "2021-07-01T12:34:56Z" (XML dumps). The trailing Z is optional.
std::optional<Timestamp> parse_iso_timestamp(std::string_view text);

// "20210701123456" (SQL dumps, binary(14) columns).
std::optional<Timestamp> parse_mediawiki_timestamp(std::string_view text);

// Accepts either of the two forms above.
std::optional<Timestamp> parse_timestamp(std::string_view text);

// "2021-04-01" or "20210401".
std::optional<Date> parse_date(std::string_view text);

std::string format_timestamp(Timestamp ts);
std::string format_date(Date d);

inline Timestamp start_of_day(Date d) { return Timestamp(d.time_since_epoch()); }

}  // namespace wikikg

#endif  // WIKIKG_COMMON_TIME_H_
