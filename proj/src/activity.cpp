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

#include "dsa/activity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "dsa/errors.hpp"
#include "dsa/statistics.hpp"

namespace dsa::activity {

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::volume: return "volume";
    case MeasureKind::open_interest: return "open_interest";
    case MeasureKind::r1: return "r1";
    case MeasureKind::r2: return "r2";
  }
  return "volume";
}

MeasureKind parse_measure_kind(std::string_view text) {
  if (text == "volume") return MeasureKind::volume;
  if (text == "open_interest" || text == "oi") return MeasureKind::open_interest;
  if (text == "r1" || text == "R1") return MeasureKind::r1;
  if (text == "r2" || text == "R2") return MeasureKind::r2;
  throw std::invalid_argument("unknown measure '" + std::string(text) + "'");
}

std::vector<Date> MeasureSeries::trading_days() const {
  std::vector<Date> days;
  days.reserve(points.size() + undefined_days.size());
  for (const auto& p : points) days.push_back(p.date);
  days.insert(days.end(), undefined_days.begin(), undefined_days.end());
  std::sort(days.begin(), days.end());
  return days;
}

MeasureSeries volume_series(const FuturesContractSeries& futures) {
  MeasureSeries s{futures.contract_id(), MeasureKind::volume, {}, {}};
  for (const auto& o : futures.observations()) s.points.push_back({o.date, o.volume});
  return s;
}

MeasureSeries open_interest_series(const FuturesContractSeries& futures) {
  MeasureSeries s{futures.contract_id(), MeasureKind::open_interest, {}, {}};
  for (const auto& o : futures.observations()) s.points.push_back({o.date, o.open_interest});
  return s;
}

MeasureSeries r1_series(const FuturesContractSeries& futures) {
  if (futures.size() == 0) throw std::invalid_argument("R1 needs a non-empty futures series");
  MeasureSeries s{futures.contract_id(), MeasureKind::r1, {}, {}};
  for (const auto& o : futures.observations()) {
    if (o.open_interest > 0.0) {
      s.points.push_back({o.date, o.volume / o.open_interest});
    } else {
      s.undefined_days.push_back(o.date);
    }
  }
  return s;
}

MeasureSeries r2_series(const FuturesContractSeries& futures) {
  const auto& obs = futures.observations();
  if (obs.size() < 2) throw std::invalid_argument("R2 needs at least two observations");
  MeasureSeries s{futures.contract_id(), MeasureKind::r2, {}, {obs.front().date}};
  for (std::size_t i = 1; i < obs.size(); ++i) {
    const double change = std::abs(obs[i].open_interest - obs[i - 1].open_interest);
    if (change > 0.0) {
      s.points.push_back({obs[i].date, obs[i].volume / change});
    } else {
      s.undefined_days.push_back(obs[i].date);
    }
  }
  return s;
}

MeasureSeries measure_series(const FuturesContractSeries& futures, MeasureKind kind) {
  switch (kind) {
    case MeasureKind::volume: return volume_series(futures);
    case MeasureKind::open_interest: return open_interest_series(futures);
    case MeasureKind::r1: return r1_series(futures);
    case MeasureKind::r2: return r2_series(futures);
  }
  throw std::invalid_argument("unknown measure kind");
}

double excluded_mean(std::size_t n, double mean_all, std::size_t n_excluded, double mean_excluded) {
  if (n_excluded > n) throw std::invalid_argument("more observations excluded than available");
  const std::size_t n_kept = n - n_excluded;
  if (n_kept == 0) throw std::invalid_argument("all observations excluded");
  if (n_kept < 2) throw std::invalid_argument("baseline needs at least two observations");
  if (n_excluded == 0) return mean_all;
  const double kept = static_cast<double>(n_kept);
  return static_cast<double>(n) / kept * mean_all - static_cast<double>(n_excluded) / kept * mean_excluded;
}

double baseline_mean_excluding(const MeasureSeries& series, const std::vector<Date>& excluded) {
  if (series.points.empty()) throw std::invalid_argument("empty measure series");
  std::set<Date> skip(excluded.begin(), excluded.end());
  double sum_all = 0.0;
  double sum_excluded = 0.0;
  std::size_t n_excluded = 0;
  for (const auto& p : series.points) {
    sum_all += p.value;
    if (skip.count(p.date)) {
      sum_excluded += p.value;
      ++n_excluded;
    }
  }
  const std::size_t n = series.points.size();
  const double mean_excluded = n_excluded ? sum_excluded / static_cast<double>(n_excluded) : 0.0;
  return excluded_mean(n, sum_all / static_cast<double>(n), n_excluded, mean_excluded);
}

EventStudyReport event_study(const MeasureSeries& series, const std::vector<Date>& event_dates,
                             const EventStudyOptions& options) {
  const auto& window = options.window;
  if (window.first > window.last) throw std::invalid_argument("event window is empty");
  if (event_dates.empty()) throw std::invalid_argument("no event dates");

  const auto calendar = series.trading_days();
  const long days = static_cast<long>(calendar.size());
  std::vector<const double*> value_at(calendar.size(), nullptr);
  {
    std::size_t c = 0;
    for (const auto& p : series.points) {
      while (calendar[c] != p.date) ++c;
      value_at[c] = &p.value;
    }
  }

  std::vector<long> event_index;
  for (const auto& d : std::set<Date>(event_dates.begin(), event_dates.end())) {
    auto it = std::lower_bound(calendar.begin(), calendar.end(), d);
    if (it == calendar.end() || *it != d) {
      throw DataError("event date " + format_date(d) + " is not a trading day of " + series.contract_id);
    }
    event_index.push_back(it - calendar.begin());
  }

  EventStudyReport report;
  report.contract_id = series.contract_id;
  report.kind = series.kind;

  std::set<long> in_window;
  for (long e : event_index) {
    for (long k = window.first; k <= window.last; ++k) {
      if (e + k >= 0 && e + k < days) in_window.insert(e + k);
    }
  }
  std::vector<double> baseline;
  std::vector<Date> excluded_days;
  for (long c = 0; c < days; ++c) {
    if (in_window.count(c)) {
      excluded_days.push_back(calendar[static_cast<std::size_t>(c)]);
    } else if (value_at[static_cast<std::size_t>(c)]) {
      baseline.push_back(*value_at[static_cast<std::size_t>(c)]);
    }
  }
  report.baseline_n = baseline.size();
  if (baseline.size() < 2) throw std::invalid_argument("baseline needs at least two observations");
  report.baseline_mean = baseline_mean_excluding(series, excluded_days);

  for (int k = window.first; k <= window.last; ++k) {
    std::vector<double> sample;
    for (long e : event_index) {
      const long c = e + k;
      const auto label = format_date(calendar[static_cast<std::size_t>(e)]);
      if (c < 0 || c >= days) {
        report.dropped.push_back("event " + label + " offset " + std::to_string(k) + ": beyond series edge");
      } else if (!value_at[static_cast<std::size_t>(c)]) {
        report.dropped.push_back("event " + label + " offset " + std::to_string(k) + ": measure undefined");
      } else {
        sample.push_back(*value_at[static_cast<std::size_t>(c)]);
      }
    }
    EventStudyResult r;
    r.offset = k;
    r.n_event = sample.size();
    r.n_baseline = baseline.size();
    r.baseline_mean = report.baseline_mean;
    if (!sample.empty()) r.event_mean = stats::mean(sample);
    if (sample.size() >= 2) {
      auto test = options.variant == TestVariant::welch ? stats::welch_t(sample, baseline)
                                                        : stats::pooled_t(sample, baseline);
      r.t_stat = test.t;
      r.df = test.df;
      r.p_value = test.p_value;
      r.sig01 = test.p_value < 0.01;
      r.sig05 = test.p_value < 0.05;
      r.defined = true;
    }
    report.results.push_back(r);
  }
  return report;
}

Tally significance_tally(const std::vector<EventStudyResult>& results, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  Tally tally;
  tally.total = results.size();
  for (const auto& r : results) {
    if (!r.defined) continue;
    bool significant = r.p_value < alpha;
    if (alpha == 0.05) significant = r.sig05;
    if (alpha == 0.01) significant = r.sig01;
    if (!significant) continue;
    if (r.t_stat > 0.0) ++tally.significant_positive;
    if (r.t_stat < 0.0) ++tally.significant_negative;
  }
  if (tally.significant_negative > tally.significant_positive) {
    tally.verdict = "hedging-dominant";
  } else if (tally.significant_positive > tally.significant_negative) {
    tally.verdict = "speculation-dominant";
  } else {
    tally.verdict = "inconclusive";
  }
  return tally;
}

}  // namespace dsa::activity
