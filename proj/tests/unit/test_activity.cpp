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

#include <random>

#include "dsa/activity.hpp"
#include "dsa/errors.hpp"
#include "support/oracles.hpp"

using namespace dsa;
using namespace dsa::activity;

namespace {

FuturesContractSeries contract(const std::vector<std::pair<double, double>>& volume_oi) {
  std::vector<FuturesObservation> obs;
  Date d = parse_date("2008-01-01");
  for (const auto& [v, oi] : volume_oi) {
    obs.push_back({d, 60.0, v, oi});
    d = add_days(d, 1);
  }
  return {"F", MarketZone::spain(), obs};
}

MeasureSeries raw_series(const std::vector<double>& values) {
  MeasureSeries s;
  s.contract_id = "S";
  Date d = parse_date("2009-01-05");
  for (double v : values) {
    s.points.push_back({d, v});
    d = add_days(d, 1);
  }
  return s;
}

}  // namespace

TEST_CASE("R1") {
  const auto s = r1_series(contract({{10, 100}, {0, 50}, {7, 0}}));
  REQUIRE(s.points.size() == 2);
  CHECK(s.points[0].value == doctest::Approx(0.1));
  CHECK(s.points[1].value == 0.0);
  REQUIRE(s.undefined_days.size() == 1);
  CHECK(s.undefined_days[0] == parse_date("2008-01-03"));
  CHECK(s.trading_days().size() == 3);
}

TEST_CASE("R2") {
  const auto up = r2_series(contract({{4, 100}, {10, 105}}));
  REQUIRE(up.points.size() == 1);
  CHECK(up.points[0].value == doctest::Approx(2.0));
  const auto down = r2_series(contract({{4, 105}, {10, 100}}));
  CHECK(down.points[0].value == doctest::Approx(2.0));
  const auto flat = r2_series(contract({{4, 105}, {10, 105}, {6, 102}}));
  CHECK(flat.points.size() == 1);
  CHECK(flat.undefined_days.size() == 2);
  CHECK_THROWS_AS(r2_series(contract({{4, 105}})), std::invalid_argument);
}

TEST_CASE("R2 ignores the sign of open interest changes") {
  // Mirror the OI path around 500: every change flips sign, magnitudes stay.
  std::vector<std::pair<double, double>> a{{5, 400}, {8, 430}, {3, 410}, {9, 470}, {2, 465}};
  std::vector<std::pair<double, double>> b;
  for (auto [v, oi] : a) b.emplace_back(v, 1000 - oi);
  const auto ra = r2_series(contract(a));
  const auto rb = r2_series(contract(b));
  REQUIRE(ra.points.size() == rb.points.size());
  for (std::size_t i = 0; i < ra.points.size(); ++i) CHECK(ra.points[i].value == rb.points[i].value);
}

TEST_CASE("baseline mean identity") {
  CHECK(excluded_mean(10, 5.0, 2, 8.0) == doctest::Approx(4.25).epsilon(1e-15));
  CHECK(excluded_mean(10, 5.0, 0, 0.0) == 5.0);
  CHECK_THROWS(excluded_mean(3, 1.0, 3, 1.0));
  CHECK_THROWS(excluded_mean(3, 1.0, 2, 1.0));

  const auto s = raw_series({1, 2, 3, 4, 5, 6});
  CHECK(baseline_mean_excluding(s, {}) == doctest::Approx(3.5));
  CHECK(baseline_mean_excluding(s, {s.points[0].date, s.points[5].date, parse_date("1999-01-01")}) ==
        doctest::Approx(3.5));
  CHECK(baseline_mean_excluding(s, {s.points[4].date, s.points[5].date}) == doctest::Approx(2.5));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<double> values(60);
  for (auto& v : values) v = u(rng);
  const auto r = raw_series(values);
  std::vector<Date> excluded;
  std::vector<double> kept;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i % 7 == 3 || i % 7 == 4) {
      excluded.push_back(r.points[i].date);
    } else {
      kept.push_back(values[i]);
    }
  }
  CHECK(std::abs(baseline_mean_excluding(r, excluded) - oracle::mean(kept)) < 1e-12);
}

TEST_CASE("event study on a constant series") {
  const auto s = raw_series(std::vector<double>(80, 3.0));
  const auto rep = event_study(s, {s.points[20].date, s.points[50].date});
  REQUIRE(rep.results.size() == 11);
  for (const auto& r : rep.results) {
    CHECK(r.defined);
    CHECK(r.t_stat == 0.0);
    CHECK_FALSE(r.sig05);
  }
}

TEST_CASE("injected spike is found at the injected offsets") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> noise(100.0, 5.0);
  std::vector<double> values(400);
  for (auto& v : values) v = noise(rng);
  const std::vector<std::size_t> events{40, 110, 190, 260, 330};
  for (auto e : events) {
    values[e - 1] = 200.0 + noise(rng) - 100.0;
    values[e] = 200.0 + noise(rng) - 100.0;
  }
  const auto s = raw_series(values);
  std::vector<Date> dates;
  for (auto e : events) dates.push_back(s.points[e].date);
  const auto rep = event_study(s, dates);

  std::vector<double> baseline;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool inside = false;
    for (auto e : events) inside = inside || (i + 5 >= e && i <= e + 5);
    if (!inside) baseline.push_back(values[i]);
  }
  CHECK(rep.baseline_n == baseline.size());
  CHECK(rep.baseline_mean == doctest::Approx(oracle::mean(baseline)).epsilon(1e-12));
  for (const auto& r : rep.results) {
    CAPTURE(r.offset);
    std::vector<double> sample;
    for (auto e : events) sample.push_back(values[static_cast<std::size_t>(static_cast<long>(e) + r.offset)]);
    const auto o = oracle::welch(sample, baseline);
    CHECK(r.t_stat == doctest::Approx(o.t).epsilon(1e-10));
    CHECK(r.df == doctest::Approx(o.df).epsilon(1e-10));
    CHECK(r.sig01 == (r.offset == -1 || r.offset == 0));
  }
  CHECK(significance_tally(rep.results, 0.01).verdict == "speculation-dominant");
}

TEST_CASE("event study edges and errors") {
  const auto s = raw_series(std::vector<double>{5, 6, 7, 5, 6, 7, 5, 6, 7, 5, 6, 7, 5, 6, 7, 5, 6, 7, 5, 6});
  SUBCASE("event near the edge drops offsets") {
    const auto rep = event_study(s, {s.points[1].date, s.points[12].date});
    CHECK_FALSE(rep.results.front().defined);
    CHECK(rep.results.front().n_event == 1);
    CHECK_FALSE(rep.dropped.empty());
  }
  SUBCASE("event date not in the calendar") {
    CHECK_THROWS_AS(event_study(s, {parse_date("2001-01-01")}), DataError);
  }
  SUBCASE("custom window and pooled variant") {
    EventStudyOptions o;
    o.window = {-2, 1};
    o.variant = TestVariant::pooled;
    const auto rep = event_study(s, {s.points[5].date, s.points[14].date}, o);
    CHECK(rep.results.size() == 4);
    CHECK(rep.results[0].offset == -2);
    CHECK(rep.baseline_n == 12);
    CHECK(rep.results[0].df == 12.0);
  }
}

TEST_CASE("significance tally") {
  std::vector<EventStudyResult> results(176);
  for (auto& r : results) r.defined = true;
  SUBCASE("nothing significant") {
    const auto t = significance_tally(results);
    CHECK(t.significant_positive == 0);
    CHECK(t.significant_negative == 0);
    CHECK(t.total == 176);
    CHECK(t.verdict == "inconclusive");
  }
  SUBCASE("mostly negative") {
    for (std::size_t i = 0; i < 94; ++i) {
      results[i].t_stat = i < 3 ? 3.0 : -3.0;
      results[i].p_value = 0.004;
      results[i].sig05 = results[i].sig01 = true;
    }
    const auto t = significance_tally(results);
    CHECK(t.significant_positive == 3);
    CHECK(t.significant_negative == 91);
    CHECK(t.verdict == "hedging-dominant");
  }
  SUBCASE("single positive") {
    std::vector<EventStudyResult> one(1);
    one[0] = {0, 5, 1.0, 100, 0.0, 8.0, 20.0, 1e-6, true, true, true};
    CHECK(significance_tally(one).verdict == "speculation-dominant");
  }
}
