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

#include <fstream>
#include <numeric>

#include "dsa/errors.hpp"
#include "dsa/market_data.hpp"
#include "dsa/premium.hpp"
#include "support/oracles.hpp"

using namespace dsa;
using namespace dsa::premium;

TEST_CASE("fixed-quantity premium") {
  auto p = cesur_premium(46.27, 36.45);
  CHECK(p.value == doctest::Approx(9.82));
  CHECK(p.pct * 100 == doctest::Approx(21.22).epsilon(1e-3));
  p = cesur_premium(38.45, 47.78);
  CHECK(p.value == doctest::Approx(-9.33));
  CHECK(p.pct * 100 == doctest::Approx(-24.27).epsilon(1e-3));
  p = cesur_premium(50, 50);
  CHECK(p.value == 0.0);
  CHECK(p.pct == 0.0);
  CHECK_THROWS_AS(cesur_premium(0, 1), std::invalid_argument);
}

TEST_CASE("full-requirements premium uses the net denominator") {
  auto p = pjm_premium(90.02, 11.34, 70.79);
  CHECK(p.value == doctest::Approx(7.89));
  CHECK(std::abs(p.pct * 100 - 10.02) < 0.02);
  p = pjm_premium(107.15, 17.44, 41.29);
  CHECK(p.value == doctest::Approx(48.42));
  CHECK(std::abs(p.pct * 100 - 53.97) < 0.01);
  p = pjm_premium(114.39, 17.44, 40.80);
  CHECK(p.value == doctest::Approx(56.15));
  CHECK(std::abs(p.pct * 100 - 57.91) < 0.02);
  CHECK_THROWS_AS(pjm_premium(10, 10, 5), NumericalError);
}

TEST_CASE("FMPI premium uses the gross denominator") {
  auto p = fmpi_premium(46.27, 0, 44.45);
  CHECK(p.value == doctest::Approx(1.82));
  CHECK(std::abs(p.pct * 100 - 3.93) < 0.01);
  p = fmpi_premium(99.59, 11.34, 72.01);
  CHECK(p.value == doctest::Approx(16.24));
  CHECK(std::abs(p.pct * 100 - 16.31) < 0.01);
  p = fmpi_premium(70, 0, 70);
  CHECK(p.value == 0.0);
  CHECK(p.pct == 0.0);
}

TEST_CASE("FMPI strip") {
  std::vector<double> ramp(36);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  SUBCASE("discounted ramp against direct summation") {
    CHECK(fmpi_strip({ramp, 0.12}) == doctest::Approx(oracle::fmpi(ramp, 0.12)).epsilon(1e-13));
    CHECK(fmpi_strip({ramp, 0.12}) < 18.5);
  }
  SUBCASE("zero rate is the plain mean") {
    CHECK(std::abs(fmpi_strip({ramp, 0.0}) - 18.5) < 1e-12);
  }
  SUBCASE("constant prices") {
    CHECK(fmpi_strip({std::vector<double>(36, 55.5), 0.3}) == doctest::Approx(55.5).epsilon(1e-14));
  }
  SUBCASE("weights") {
    const auto w = fmpi_weights(0.05);
    CHECK(w.size() == 36);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t j = 1; j < w.size(); ++j) CHECK(w[j] < w[j - 1]);
  }
  SUBCASE("invalid inputs") {
    CHECK_THROWS_AS(fmpi_strip({std::vector<double>(35, 1.0), 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(fmpi_strip({ramp, -1.0}), std::invalid_argument);
  }
}

TEST_CASE("yearly aggregation of the fixed-quantity table") {
  std::ifstream in(std::string(DSA_TEST_DATA_DIR) + "/cesur_table.csv");
  std::string line;
  std::getline(in, line);
  std::vector<PremiumRow> rows;
  while (std::getline(in, line)) {
    const auto f = csv::split_row(line);
    rows.push_back(make_cesur_row(f[1].substr(0, 4), f[2], std::stod(f[3]), std::stod(f[4]), std::stod(f[7])));
  }
  REQUIRE(rows.size() == 28);
  const auto agg = yearly_aggregate(rows);
  REQUIRE(agg.groups.size() == 7);
  CHECK(agg.groups[0].group == "2007");
  CHECK(agg.groups[0].n == 3);
  CHECK(agg.groups[0].premium == doctest::Approx(-0.2367).epsilon(1e-3));
  CHECK(std::abs(agg.groups[0].premium_pct * 100 + 1.63) < 0.01);
  CHECK(std::abs(agg.grand.premium_pct * 100 - 7.22) < 0.01);
  CHECK(std::abs(*agg.grand.fmpi_premium_pct * 100 - 1.08) < 0.01);
  CHECK(agg.grand.n == 28);

  double group_mean = 0.0;
  for (const auto& g : agg.groups) group_mean += g.premium;
  CHECK(agg.grand.premium == doctest::Approx(group_mean / 7.0).epsilon(1e-14));

  const auto single = yearly_aggregate({rows[0]});
  CHECK(single.groups[0].premium == rows[0].premium.value);
  CHECK(single.grand.premium_pct == rows[0].premium.pct);

  const auto by_quarter = yearly_aggregate(rows, [](const PremiumRow& r) { return r.label.substr(0, 2); });
  CHECK(by_quarter.groups.size() == 4);
  CHECK_THROWS_AS(yearly_aggregate({}), std::invalid_argument);
}

TEST_CASE("rows without FMPI leave FMPI averages empty") {
  const auto agg = yearly_aggregate({make_cesur_row("2007", "Q3-07", 46.27, 36.45)});
  CHECK_FALSE(agg.grand.fmpi_premium.has_value());
}

TEST_CASE("monetary impact") {
  CHECK(monetary_impact(1, 1) == 2200.0);
  CHECK(monetary_impact(0, 1234) == 0.0);
  CHECK(monetary_impact(2, 3, 8760) == 2.0 * 3 * 8760);
  CHECK_THROWS_AS(monetary_impact(1, -1), std::invalid_argument);
}
