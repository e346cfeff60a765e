// Copyright 2026 The dsa Authors.
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

#include "dsa/dates.hpp"

#include <charconv>
#include <cstdio>

#include "dsa/errors.hpp"

namespace dsa {

namespace {

bool parse_field(std::string_view text, int& out) {
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

Date parse_date(std::string_view text) {
  int y = 0;
  int m = 0;
  int d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !parse_field(text.substr(0, 4), y) || !parse_field(text.substr(5, 2), m) ||
      !parse_field(text.substr(8, 2), d)) {
    throw DataError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
  }
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) throw DataError("invalid calendar day '" + std::string(text) + "'");
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

Date shift_years(const Date& date, int years) {
  Date shifted{date.year() + std::chrono::years{years}, date.month(), date.day()};
  if (!shifted.ok()) {
    shifted = Date{std::chrono::year_month_day_last{shifted.year(),
                                                    std::chrono::month_day_last{date.month()}}};
  }
  return shifted;
}

}  // namespace dsa
