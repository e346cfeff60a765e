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

#ifndef DSA_SETTLEMENT_HPP
#define DSA_SETTLEMENT_HPP

#include <array>
#include <vector>

#include "dsa/dates.hpp"
#include "dsa/market_data.hpp"

namespace dsa::settlement {

struct CashFlow {
  Date date;
  double amount;
};

enum class CfdSide {
  seller,  ///< winning bidder: receives auction price, pays spot
  buyer,   ///< POLR: the mirror image
};

/// Daily contract-for-differences flows over the delivery period:
/// (auction_price - spot) * quantity * hours_per_day, signed for `side`.
/// Throws DataError when a delivery day has no spot price.
std::vector<CashFlow> settle_cfd(double auction_price, const SpotPriceSeries& spot,
                                 const DeliveryPeriod& period, double quantity_mw,
                                 double hours_per_day = 24.0, CfdSide side = CfdSide::seller);

double total(const std::vector<CashFlow>& flows);

enum class Season { summer, winter };

/// Season-dependent multipliers on the auction price for full-requirements
/// supply. The default calendar treats June through September as summer.
struct SeasonalPayoutFactors {
  double summer_factor = 1.2;
  double winter_factor = 0.9;
  std::array<Season, 12> calendar{Season::winter, Season::winter, Season::winter, Season::winter,
                                  Season::winter, Season::summer, Season::summer, Season::summer,
                                  Season::summer, Season::winter, Season::winter, Season::winter};

  void validate() const;
  double factor_for(const Date& day) const;
};

struct LoadPoint {
  Date date;
  double mwh;
};

/// Daily payout = auction_price * seasonal factor * load served that day.
std::vector<CashFlow> full_requirements_payout(double auction_price, const std::vector<LoadPoint>& load,
                                               const SeasonalPayoutFactors& factors = {});

}  // namespace dsa::settlement

#endif  // DSA_SETTLEMENT_HPP
