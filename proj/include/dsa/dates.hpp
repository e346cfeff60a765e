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

#ifndef DSA_DATES_HPP
#define DSA_DATES_HPP

#include <chrono>
#include <string>
#include <string_view>

namespace dsa {

/// Calendar day. All series in this library are daily.
using Date = std::chrono::year_month_day;

/// Parses `YYYY-MM-DD`. Throws DataError on anything else, including
/// impossible days such as 2007-02-30.
Date parse_date(std::string_view text);

std::string format_date(const Date& date);

inline std::chrono::sys_days to_days(const Date& date) { return std::chrono::sys_days{date}; }

inline Date add_days(const Date& date, int days) {
  return Date{to_days(date) + std::chrono::days{days}};
}

/// Signed day count `to - from`.
inline long days_between(const Date& from, const Date& to) {
  return (to_days(to) - to_days(from)).count();
}

/// Same month/day `years` earlier or later; Feb 29 falls back to Feb 28.
Date shift_years(const Date& date, int years);

inline int year_of(const Date& date) { return static_cast<int>(date.year()); }
inline unsigned month_of(const Date& date) { return static_cast<unsigned>(date.month()); }

}  // namespace dsa

#endif  // DSA_DATES_HPP
