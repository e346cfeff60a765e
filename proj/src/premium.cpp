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

#include "dsa/premium.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "dsa/errors.hpp"

namespace dsa::premium {

Premium cesur_premium(double auction_price, double spot_avg) {
  if (!(auction_price > 0.0)) throw std::invalid_argument("auction price must be positive");
  const double p = auction_price - spot_avg;
  return {p, p / auction_price};
}

Premium pjm_premium(double avg_auction_price, double costs, double spot_avg) {
  const double net = avg_auction_price - costs;
  if (!(net > 0.0)) throw NumericalError("average auction price does not exceed costs");
  const double p = net - spot_avg;
  return {p, p / net};
}

Premium fmpi_premium(double gross_price, double costs, double fmpi) {
  if (!(gross_price > 0.0)) throw std::invalid_argument("gross auction price must be positive");
  const double p = gross_price - costs - fmpi;
  return {p, p / gross_price};
}

void FmpiSpec::validate() const {
  if (monthly_prices.size() != kMonths) {
    throw std::invalid_argument("FMPI strip needs " + std::to_string(kMonths) + " monthly prices, got " +
                                std::to_string(monthly_prices.size()));
  }
  for (double p : monthly_prices) {
    if (!std::isfinite(p)) throw std::invalid_argument("FMPI prices must be finite");
  }
  if (!(annual_rate > -1.0) || !std::isfinite(annual_rate)) {
    throw std::invalid_argument("FMPI discount rate must exceed -1");
  }
}

std::vector<double> fmpi_weights(double annual_rate, std::size_t months) {
  if (!(annual_rate > -1.0)) throw std::invalid_argument("discount rate must exceed -1");
  std::vector<double> w(months);
  double total = 0.0;
  for (std::size_t j = 1; j <= months; ++j) {
    w[j - 1] = std::pow(1.0 + annual_rate, -static_cast<double>(j) / 12.0);
    total += w[j - 1];
  }
  for (auto& x : w) x /= total;
  return w;
}

double fmpi_strip(const FmpiSpec& spec) {
  spec.validate();
  const auto w = fmpi_weights(spec.annual_rate, spec.monthly_prices.size());
  double value = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) value += w[j] * spec.monthly_prices[j];
  return value;
}

PremiumRow make_cesur_row(std::string group, std::string label, double auction_price, double spot_avg,
                          std::optional<double> fmpi) {
  PremiumRow row;
  row.group = std::move(group);
  row.label = std::move(label);
  row.gross_price = auction_price;
  row.auction_price = auction_price;
  row.spot_avg = spot_avg;
  row.premium = cesur_premium(auction_price, spot_avg);
  row.fmpi = fmpi;
  if (fmpi) row.fmpi_premium = fmpi_premium(auction_price, 0.0, *fmpi);
  return row;
}

PremiumRow make_pjm_row(std::string group, std::string label, double gross_price,
                        double avg_auction_price, double costs, double spot_avg,
                        std::optional<double> fmpi) {
  PremiumRow row;
  row.group = std::move(group);
  row.label = std::move(label);
  row.gross_price = gross_price;
  row.auction_price = avg_auction_price;
  row.spot_avg = spot_avg;
  row.costs = costs;
  row.premium = pjm_premium(avg_auction_price, costs, spot_avg);
  row.fmpi = fmpi;
  if (fmpi) row.fmpi_premium = fmpi_premium(gross_price, costs, *fmpi);
  return row;
}

namespace {

struct OptionalMean {
  double sum = 0.0;
  std::size_t n = 0;
  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  std::optional<double> value() const {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  }
};

template <class Row, class Project>
AggregateRow average(const std::string& name, const std::vector<const Row*>& rows, Project&& project) {
  AggregateRow out;
  out.group = name;
  out.n = rows.size();
  OptionalMean fmpi;
  OptionalMean fp;
  OptionalMean fpp;
  for (const Row* r : rows) {
    auto v = project(*r);
    out.gross_price += v.gross_price;
    out.auction_price += v.auction_price;
    out.spot_avg += v.spot_avg;
    out.costs += v.costs;
    out.premium += v.premium;
    out.premium_pct += v.premium_pct;
    fmpi.add(v.fmpi);
    fp.add(v.fmpi_premium);
    fpp.add(v.fmpi_premium_pct);
  }
  const double n = static_cast<double>(rows.size());
  out.gross_price /= n;
  out.auction_price /= n;
  out.spot_avg /= n;
  out.costs /= n;
  out.premium /= n;
  out.premium_pct /= n;
  out.fmpi = fmpi.value();
  out.fmpi_premium = fp.value();
  out.fmpi_premium_pct = fpp.value();
  return out;
}

AggregateRow flatten(const PremiumRow& r) {
  AggregateRow a;
  a.gross_price = r.gross_price;
  a.auction_price = r.auction_price;
  a.spot_avg = r.spot_avg;
  a.costs = r.costs;
  a.premium = r.premium.value;
  a.premium_pct = r.premium.pct;
  a.fmpi = r.fmpi;
  if (r.fmpi_premium) {
    a.fmpi_premium = r.fmpi_premium->value;
    a.fmpi_premium_pct = r.fmpi_premium->pct;
  }
  return a;
}

}  // namespace

Aggregation yearly_aggregate(const std::vector<PremiumRow>& rows, const GroupKey& key) {
  if (rows.empty()) throw std::invalid_argument("cannot aggregate an empty set of rows");
  std::vector<std::string> order;
  std::map<std::string, std::vector<const PremiumRow*>> members;
  for (const auto& r : rows) {
    auto name = key ? key(r) : r.group;
    auto [it, inserted] = members.try_emplace(name);
    if (inserted) order.push_back(name);
    it->second.push_back(&r);
  }
  Aggregation out;
  for (const auto& name : order) out.groups.push_back(average(name, members[name], flatten));

  std::vector<const AggregateRow*> group_ptrs;
  for (const auto& g : out.groups) group_ptrs.push_back(&g);
  out.grand = average("all", group_ptrs, [](const AggregateRow& g) { return g; });
  out.grand.n = rows.size();
  return out;
}

double monetary_impact(double premium, double capacity_mw, double mwh_per_mw) {
  if (!(capacity_mw >= 0.0)) throw std::invalid_argument("capacity must be non-negative");
  return premium * capacity_mw * mwh_per_mw;
}

}  // namespace dsa::premium
