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

#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace innermerit {

// A UTC instant with one-second resolution. All stored timestamps use this
// type; the wire form is RFC 3339 with a literal `Z` suffix.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::int64_t epoch_seconds)
      : seconds_(epoch_seconds) {}

  static Timestamp from_sys(std::chrono::sys_seconds t) {
    return Timestamp(t.time_since_epoch().count());
  }
  static Timestamp now();
  static constexpr Timestamp max() { return Timestamp(INT64_MAX / 2); }
  static constexpr Timestamp min() { return Timestamp(INT64_MIN / 2); }

  // Accepts `YYYY-MM-DDTHH:MM:SSZ` with an optional fractional part, which is
  // truncated. Returns nullopt for anything else.
  static std::optional<Timestamp> parse(std::string_view text);
  static Timestamp parse_or_throw(std::string_view text);

  std::string to_string() const;
  constexpr std::int64_t epoch_seconds() const { return seconds_; }
  constexpr Timestamp plus_seconds(std::int64_t s) const {
    return Timestamp(seconds_ + s);
  }

  int year() const;
  int month() const;

  friend constexpr auto operator<=>(Timestamp, Timestamp) = default;

 private:
  std::int64_t seconds_ = 0;
};

// An award or assessment period: either a calendar month (`2021-07`) or a
// calendar year (`2021`).
class Period {
 public:
  static Period of_month(int year, int month);
  static Period of_year(int year);
  static std::optional<Period> parse(std::string_view text);
  static Period parse_or_throw(std::string_view text);
  static Period month_containing(Timestamp t);

  bool is_month() const { return month_ != 0; }
  int year() const { return year_; }
  int month() const { return month_; }
  Period year_period() const { return of_year(year_); }

  // Half-open interval [begin, end).
  Timestamp begin() const;
  Timestamp end() const;
  bool contains(Timestamp t) const { return begin() <= t && t < end(); }

  std::string to_string() const;

  friend auto operator<=>(const Period&, const Period&) = default;

 private:
  Period(int year, int month) : year_(year), month_(month) {}
  int year_ = 1970;
  int month_ = 0;
};

// Parses `YYYY-MM-DD` and returns the first instant after that UTC day, so
// that "as of 2021-07-31" includes everything that happened on the 31st.
std::optional<Timestamp> end_of_day(std::string_view date);

}  // namespace innermerit
