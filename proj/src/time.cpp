// Copyright 2026 The InnerMerit Authors
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

#include "innermerit/time.hpp"

#include <charconv>
#include <cstdio>

#include "innermerit/error.hpp"

namespace innermerit {

namespace {

using std::chrono::day;
using std::chrono::month;
using std::chrono::sys_days;
using std::chrono::year;
using std::chrono::year_month_day;

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::int64_t days_from_civil(int y, int m, int d) {
  sys_days days{year_month_day{year{y}, month{static_cast<unsigned>(m)},
                               day{static_cast<unsigned>(d)}}};
  return days.time_since_epoch().count();
}

year_month_day civil_from_seconds(std::int64_t seconds) {
  std::int64_t days = seconds / 86400;
  if (seconds % 86400 < 0) --days;
  return year_month_day{sys_days{std::chrono::days{days}}};
}

std::optional<std::int64_t> parse_date(std::string_view text) {
  // YYYY-MM-DD
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  year_month_day ymd{year{y}, month{static_cast<unsigned>(m)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return days_from_civil(y, m, d);
}

}  // namespace

Timestamp Timestamp::now() {
  return from_sys(
      std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS[.fff]Z
  if (text.size() < 20 || text.back() != 'Z') return std::nullopt;
  auto days = parse_date(text.substr(0, 10));
  if (!days || (text[10] != 'T' && text[10] != 't')) return std::nullopt;
  std::string_view clock = text.substr(11, 8);
  if (clock[2] != ':' || clock[5] != ':') return std::nullopt;
  int hh = 0, mm = 0, ss = 0;
  if (!parse_int(clock.substr(0, 2), hh) || !parse_int(clock.substr(3, 2), mm) ||
      !parse_int(clock.substr(6, 2), ss)) {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
  std::string_view rest = text.substr(19, text.size() - 20);
  if (!rest.empty()) {
    int frac = 0;
    if (rest.size() < 2 || rest[0] != '.' || rest.size() > 10 ||
        !parse_int(rest.substr(1), frac)) {
      return std::nullopt;
    }
  }
  return Timestamp(*days * 86400 + hh * 3600 + mm * 60 + ss);
}

Timestamp Timestamp::parse_or_throw(std::string_view text) {
  auto t = parse(text);
  if (!t) fail(ErrorCode::InvalidArgument, "bad RFC 3339 UTC timestamp '" + std::string(text) + "'");
  return *t;
}

std::string Timestamp::to_string() const {
  year_month_day ymd = civil_from_seconds(seconds_);
  std::int64_t secs_of_day = seconds_ % 86400;
  if (secs_of_day < 0) secs_of_day += 86400;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(secs_of_day / 3600),
                static_cast<int>(secs_of_day / 60 % 60),
                static_cast<int>(secs_of_day % 60));
  return buf;
}

int Timestamp::year() const {
  return static_cast<int>(civil_from_seconds(seconds_).year());
}

int Timestamp::month() const {
  return static_cast<int>(static_cast<unsigned>(civil_from_seconds(seconds_).month()));
}

Period Period::of_month(int y, int m) {
  if (y < 1970 || y > 9999 || m < 1 || m > 12) {
    fail(ErrorCode::InvalidArgument, "month out of range");
  }
  return Period(y, m);
}

Period Period::of_year(int y) {
  if (y < 1970 || y > 9999) fail(ErrorCode::InvalidArgument, "year out of range");
  return Period(y, 0);
}

std::optional<Period> Period::parse(std::string_view text) {
  int y = 0, m = 0;
  if (text.size() == 4 && parse_int(text, y) && y >= 1970) return Period(y, 0);
  if (text.size() == 7 && text[4] == '-' && parse_int(text.substr(0, 4), y) &&
      parse_int(text.substr(5, 2), m) && y >= 1970 && m >= 1 && m <= 12) {
    return Period(y, m);
  }
  return std::nullopt;
}

Period Period::parse_or_throw(std::string_view text) {
  auto p = parse(text);
  if (!p) fail(ErrorCode::InvalidArgument, "bad period '" + std::string(text) + "' (want YYYY or YYYY-MM)");
  return *p;
}

Period Period::month_containing(Timestamp t) { return Period(t.year(), t.month()); }

Timestamp Period::begin() const {
  return Timestamp(days_from_civil(year_, month_ == 0 ? 1 : month_, 1) * 86400);
}

Timestamp Period::end() const {
  if (month_ == 0 || month_ == 12) {
    return Timestamp(days_from_civil(year_ + 1, 1, 1) * 86400);
  }
  return Timestamp(days_from_civil(year_, month_ + 1, 1) * 86400);
}

std::string Period::to_string() const {
  char buf[16];
  if (month_ == 0) {
    std::snprintf(buf, sizeof(buf), "%04d", year_);
  } else {
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year_, month_);
  }
  return buf;
}

std::optional<Timestamp> end_of_day(std::string_view date) {
  auto days = parse_date(date);
  if (!days) return std::nullopt;
  return Timestamp((*days + 1) * 86400);
}

}  // namespace innermerit
