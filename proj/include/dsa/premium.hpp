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

#ifndef DSA_PREMIUM_HPP
#define DSA_PREMIUM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dsa::premium {

/// A premium in currency/MWh and as a fraction of its reference price.
struct Premium {
  double value;
  double pct;
};

/// Ex-post forward premium of a fixed-quantity auction:
/// auction_price - spot_avg, as a fraction of auction_price.
Premium cesur_premium(double auction_price, double spot_avg);

/// Ex-post forward premium of a full-requirements auction, net of the
/// capacity/transmission/ancillary cost adder. The percentage is taken on the
/// net price (avg_auction_price - costs).
Premium pjm_premium(double avg_auction_price, double costs, double spot_avg);

/// gross_price - costs - fmpi, as a fraction of the gross price.
Premium fmpi_premium(double gross_price, double costs, double fmpi);

/// Inputs of the futures-strip price index: 36 monthly futures prices, front
/// month first, discounted at an annual rate.
struct FmpiSpec {
  std::vector<double> monthly_prices;
  double annual_rate = 0.0;

  static constexpr std::size_t kMonths = 36;
  void validate() const;
};

/// Normalised present-value weights (1 + r)^(-j/12) / sum, j = 1..months.
std::vector<double> fmpi_weights(double annual_rate, std::size_t months = FmpiSpec::kMonths);

double fmpi_strip(const FmpiSpec& spec);

/// One line of a premium table. For fixed-quantity auctions `gross_price`
/// equals `auction_price` and costs are zero; for full-requirements zones
/// `auction_price` is the average of the prices applying to the year.
struct PremiumRow {
  std::string group;
  std::string label;
  double gross_price = 0.0;
  double auction_price = 0.0;
  double spot_avg = 0.0;
  double costs = 0.0;
  Premium premium{0.0, 0.0};
  std::optional<double> fmpi;
  std::optional<Premium> fmpi_premium;
};

PremiumRow make_cesur_row(std::string group, std::string label, double auction_price, double spot_avg,
                          std::optional<double> fmpi = std::nullopt);

PremiumRow make_pjm_row(std::string group, std::string label, double gross_price,
                        double avg_auction_price, double costs, double spot_avg,
                        std::optional<double> fmpi = std::nullopt);

/// Column means of a group of rows. FMPI columns average over the rows that
/// have an FMPI and stay empty when none does.
struct AggregateRow {
  std::string group;
  std::size_t n = 0;
  double gross_price = 0.0;
  double auction_price = 0.0;
  double spot_avg = 0.0;
  double costs = 0.0;
  double premium = 0.0;
  double premium_pct = 0.0;
  std::optional<double> fmpi;
  std::optional<double> fmpi_premium;
  std::optional<double> fmpi_premium_pct;
};

struct Aggregation {
  std::vector<AggregateRow> groups;
  /// Unweighted mean of the group averages.
  AggregateRow grand;
};

using GroupKey = std::function<std::string(const PremiumRow&)>;

/// Groups in order of first appearance. The default key is `row.group`.
/// Throws std::invalid_argument on an empty input.
Aggregation yearly_aggregate(const std::vector<PremiumRow>& rows, const GroupKey& key = {});

/// Premium times capacity times the MWh delivered per MW of capacity.
double monetary_impact(double premium, double capacity_mw, double mwh_per_mw = 2200.0);

}  // namespace dsa::premium

#endif  // DSA_PREMIUM_HPP
