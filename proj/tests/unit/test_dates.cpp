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

#include "doctest.h"

#include "dsa/dates.hpp"
#include "dsa/errors.hpp"

using namespace dsa;
using namespace std::chrono;

TEST_CASE("dates parse and format") {
  const Date d = parse_date("2008-03-13");
  CHECK(d == Date{year{2008}, month{3}, day{13}});
  CHECK(format_date(d) == "2008-03-13");
  CHECK(format_date(add_days(d, 19)) == "2008-04-01");
  CHECK(days_between(parse_date("2008-01-01"), parse_date("2009-01-01")) == 366);
  CHECK(year_of(d) == 2008);
  CHECK(month_of(d) == 3u);
}

TEST_CASE("malformed dates are rejected") {
  for (const char* text : {"2007-02-30", "2007-2-01", "20070201", "", "2007-13-01", "2007-01-01x"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_date(text), DataError);
  }
}

TEST_CASE("shift_years keeps the calendar day") {
  CHECK(shift_years(parse_date("2010-06-15"), -3) == parse_date("2007-06-15"));
  CHECK(shift_years(parse_date("2008-02-29"), 1) == parse_date("2009-02-28"));
  CHECK(shift_years(parse_date("2008-02-29"), 4) == parse_date("2012-02-29"));
}
