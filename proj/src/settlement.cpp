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

#include "dsa/settlement.hpp"

#include <cmath>
#include <stdexcept>

#include "dsa/errors.hpp"

namespace dsa::settlement {

std::vector<CashFlow> settle_cfd(double auction_price, const SpotPriceSeries& spot,
                                 const DeliveryPeriod& period, double quantity_mw,
                                 double hours_per_day, CfdSide side) {
  if (!(hours_per_day > 0.0 && hours_per_day <= 24.0)) {
    throw std::invalid_argument("hours_per_day must lie in (0, 24]");
  }
  const double sign = side == CfdSide::seller ? 1.0 : -1.0;
  std::vector<CashFlow> flows;
  flows.reserve(static_cast<std::size_t>(period.days()));
  for (Date day = period.start; day <= period.end; day = add_days(day, 1)) {
    auto price = spot.price_on(day);
    if (!price) throw DataError("missing spot price on " + format_date(day) + " for " + spot.zone().label());
    flows.push_back({day, sign * (auction_price - *price) * quantity_mw * hours_per_day});
  }
  return flows;
}

double total(const std::vector<CashFlow>& flows) {
  double sum = 0.0;
  for (const auto& f : flows) sum += f.amount;
  return sum;
}

void SeasonalPayoutFactors::validate() const {
  if (!(summer_factor > 0.0) || !(winter_factor > 0.0)) {
    throw std::invalid_argument("seasonal payout factors must be positive");
  }
}

double SeasonalPayoutFactors::factor_for(const Date& day) const {
  return calendar[month_of(day) - 1] == Season::summer ? summer_factor : winter_factor;
}

std::vector<CashFlow> full_requirements_payout(double auction_price, const std::vector<LoadPoint>& load,
                                               const SeasonalPayoutFactors& factors) {
  factors.validate();
  std::vector<CashFlow> flows;
  flows.reserve(load.size());
  for (const auto& point : load) {
    if (!(point.mwh >= 0.0) || !std::isfinite(point.mwh)) {
      throw DataError("load must be non-negative on " + format_date(point.date));
    }
    flows.push_back({point.date, auction_price * factors.factor_for(point.date) * point.mwh});
  }
  return flows;
}

}  // namespace dsa::settlement
