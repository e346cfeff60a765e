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

#ifndef DSA_ACTIVITY_HPP
#define DSA_ACTIVITY_HPP

#include <string>
#include <string_view>
#include <vector>

#include "dsa/dates.hpp"
#include "dsa/market_data.hpp"

namespace dsa::activity {

enum class MeasureKind { volume, open_interest, r1, r2 };
std::string_view to_string(MeasureKind kind);
MeasureKind parse_measure_kind(std::string_view text);

struct MeasurePoint {
  Date date;
  double value;
};

/// A daily measure of one futures contract. Days on which the measure has no
/// value (zero open interest for R1, unchanged open interest for R2, the first
/// day for R2) are listed in `undefined_days` and remain trading days.
struct MeasureSeries {
  std::string contract_id;
  MeasureKind kind = MeasureKind::volume;
  std::vector<MeasurePoint> points;
  std::vector<Date> undefined_days;

  /// Union of defined and undefined days, sorted.
  std::vector<Date> trading_days() const;
};

MeasureSeries volume_series(const FuturesContractSeries& futures);
MeasureSeries open_interest_series(const FuturesContractSeries& futures);

/// Volume over open interest. Throws std::invalid_argument on an empty series.
MeasureSeries r1_series(const FuturesContractSeries& futures);

/// Volume over |open interest change|. Needs at least two observations.
MeasureSeries r2_series(const FuturesContractSeries& futures);

MeasureSeries measure_series(const FuturesContractSeries& futures, MeasureKind kind);

/// Mean of the N1 = N - N2 observations left after removing N2 of them:
/// (N/N1) M(N) - (N2/N1) M(N2). Throws when fewer than two remain.
double excluded_mean(std::size_t n, double mean_all, std::size_t n_excluded, double mean_excluded);

/// Baseline mean of the defined observations not dated in `excluded`.
/// Excluded dates absent from the series are ignored.
double baseline_mean_excluding(const MeasureSeries& series, const std::vector<Date>& excluded);

struct EventWindow {
  int first = -5;
  int last = 5;
};

enum class TestVariant { welch, pooled };

struct EventStudyOptions {
  EventWindow window;
  TestVariant variant = TestVariant::welch;
};

/// Comparison of the values `offset` trading days from every event with the
/// baseline sample (everything outside all event windows).
struct EventStudyResult {
  int offset = 0;
  std::size_t n_event = 0;
  double event_mean = 0.0;
  std::size_t n_baseline = 0;
  double baseline_mean = 0.0;
  double t_stat = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  bool sig01 = false;
  bool sig05 = false;
  /// False when fewer than two event observations were available.
  bool defined = false;
};

struct EventStudyReport {
  std::string contract_id;
  MeasureKind kind = MeasureKind::volume;
  std::vector<EventStudyResult> results;
  std::size_t baseline_n = 0;
  double baseline_mean = 0.0;
  /// Event/offset pairs that fell off the series edge or on an undefined day.
  std::vector<std::string> dropped;
};

/// Offsets count trading days of the series. Every event date must be a
/// trading day (DataError otherwise); overlapping windows share one baseline
/// exclusion set.
EventStudyReport event_study(const MeasureSeries& series, const std::vector<Date>& event_dates,
                             const EventStudyOptions& options = {});

struct Tally {
  std::size_t significant_positive = 0;
  std::size_t significant_negative = 0;
  std::size_t total = 0;
  /// "hedging-dominant", "speculation-dominant" or "inconclusive". Read for
  /// R1/R2: a drop in the ratios around auctions points to hedging.
  std::string verdict;
};

/// Counts two-sided rejections at `alpha` (0.01 or 0.05 use the stored flags).
Tally significance_tally(const std::vector<EventStudyResult>& results, double alpha = 0.05);

}  // namespace dsa::activity

#endif  // DSA_ACTIVITY_HPP
