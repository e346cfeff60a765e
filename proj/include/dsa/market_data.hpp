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

#ifndef DSA_MARKET_DATA_HPP
#define DSA_MARKET_DATA_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsa/dates.hpp"

namespace dsa {

enum class Market { omel, pjm };
enum class Currency { eur, usd };

std::string_view to_string(Market market);
std::string_view to_string(Currency currency);
Market parse_market(std::string_view text);

/// A price area. OMEL has the single Spanish zone "ES"; PJM default supply
/// covers ACE, JCPL, PSEG and RECO.
class MarketZone {
 public:
  MarketZone(Market market, std::string zone);

  static MarketZone spain() { return {Market::omel, "ES"}; }

  Market market() const noexcept { return market_; }
  const std::string& zone() const noexcept { return zone_; }
  Currency currency() const noexcept { return market_ == Market::omel ? Currency::eur : Currency::usd; }
  std::string label() const;

  static const std::vector<std::string>& zones_of(Market market);

  friend bool operator==(const MarketZone&, const MarketZone&) = default;

 private:
  Market market_;
  std::string zone_;
};

enum class LoadShape { baseload, peak, offpeak };
std::string_view to_string(LoadShape shape);
LoadShape parse_load_shape(std::string_view text);

/// Inclusive range of delivery days.
struct DeliveryPeriod {
  Date start;
  Date end;
  LoadShape load_shape = LoadShape::baseload;

  DeliveryPeriod(Date start_day, Date end_day, LoadShape shape = LoadShape::baseload);

  long days() const { return days_between(start, end) + 1; }
  bool contains(const Date& day) const { return start <= day && day <= end; }
};

/// Expands quarterly product codes: "Q3-07" is July through September 2007,
/// "Q2Q3-08" is April through September 2008.
DeliveryPeriod delivery_from_product_code(std::string_view code);

struct SpotObservation {
  Date date;
  double price;
};

class SpotPriceSeries {
 public:
  /// Throws DataError on duplicate or decreasing dates and non-finite prices.
  SpotPriceSeries(MarketZone zone, std::vector<SpotObservation> observations);

  const MarketZone& zone() const noexcept { return zone_; }
  const std::vector<SpotObservation>& observations() const noexcept { return observations_; }
  std::size_t size() const noexcept { return observations_.size(); }
  bool empty() const noexcept { return observations_.empty(); }

  std::optional<double> price_on(const Date& day) const;

 private:
  MarketZone zone_;
  std::vector<SpotObservation> observations_;
};

struct FuturesObservation {
  Date date;
  double settle;
  double volume;
  double open_interest;
};

class FuturesContractSeries {
 public:
  FuturesContractSeries(std::string contract_id, MarketZone zone,
                        std::vector<FuturesObservation> observations);

  const std::string& contract_id() const noexcept { return contract_id_; }
  const MarketZone& zone() const noexcept { return zone_; }
  const std::vector<FuturesObservation>& observations() const noexcept { return observations_; }
  std::size_t size() const noexcept { return observations_.size(); }

 private:
  std::string contract_id_;
  MarketZone zone_;
  std::vector<FuturesObservation> observations_;
};

enum class ProductKind { fixed_quantity, full_requirements };
std::string_view to_string(ProductKind kind);
ProductKind parse_product_kind(std::string_view text);

/// One auctioned product. `quantity` is MW for fixed-quantity products and a
/// tranche fraction for full-requirements products.
struct AuctionRecord {
  Market market = Market::omel;
  int auction_id = 0;
  Date auction_date;
  std::string product_id;
  DeliveryPeriod delivery{Date{}, Date{}};
  double clearing_price = 0.0;
  double quantity = 0.0;
  ProductKind product_kind = ProductKind::fixed_quantity;
  int start_bidders = 1;
  int winning_bidders = 1;
  int rounds = 1;

  /// Throws DataError when an invariant fails.
  void validate() const;
};

/// Zone for PJM full-requirements records, taken from the product id prefix
/// ("ACE-FP36" belongs to ACE). OMEL records map to ES.
MarketZone zone_of(const AuctionRecord& record);

struct CostComponents {
  MarketZone zone;
  int year;
  double unit_cost;  ///< capacity + transmission + ancillary services, per MWh
};

enum class Coverage {
  strict,          ///< every day of the period must be priced
  available_days,  ///< mean over whatever days are present
};

/// Arithmetic mean of daily prices over the delivery period.
double average_price(const SpotPriceSeries& series, const DeliveryPeriod& period,
                     Coverage coverage = Coverage::strict);

// ---------------------------------------------------------------------------
// CSV ingestion

struct LoadOptions {
  /// Strict loading throws on the first bad row. Lenient loading rejects the
  /// row and records the reason in the report.
  bool strict = true;
};

struct LoadReport {
  std::size_t rows_in = 0;
  std::size_t rows_accepted = 0;
  std::size_t rows_rejected = 0;
  std::size_t warnings = 0;
  std::vector<std::string> messages;
};

template <class T>
struct Loaded {
  T data;
  LoadReport report;
};

Loaded<SpotPriceSeries> load_spot_csv(std::istream& in, const MarketZone& zone,
                                      const LoadOptions& options = {});
Loaded<SpotPriceSeries> load_spot_csv(const std::filesystem::path& path, const MarketZone& zone,
                                      const LoadOptions& options = {});

/// Multi-zone spot file; one series per zone in order of first appearance.
Loaded<std::vector<SpotPriceSeries>> load_spot_zones_csv(std::istream& in,
                                                         const LoadOptions& options = {});
Loaded<std::vector<SpotPriceSeries>> load_spot_zones_csv(const std::filesystem::path& path,
                                                         const LoadOptions& options = {});

Loaded<std::vector<FuturesContractSeries>> load_futures_csv(std::istream& in,
                                                            const LoadOptions& options = {});
Loaded<std::vector<FuturesContractSeries>> load_futures_csv(const std::filesystem::path& path,
                                                            const LoadOptions& options = {});

/// Rows may list several products separated by '|' in product_id,
/// delivery_start, delivery_end, clearing_price and quantity; such a row
/// expands into one record per product sharing the auction id.
Loaded<std::vector<AuctionRecord>> load_auctions_csv(std::istream& in,
                                                     const LoadOptions& options = {});
Loaded<std::vector<AuctionRecord>> load_auctions_csv(const std::filesystem::path& path,
                                                     const LoadOptions& options = {});

Loaded<std::vector<CostComponents>> load_costs_csv(std::istream& in, const LoadOptions& options = {});
Loaded<std::vector<CostComponents>> load_costs_csv(const std::filesystem::path& path,
                                                   const LoadOptions& options = {});

void write_spot_csv(std::ostream& out, const std::vector<SpotPriceSeries>& series);
void write_futures_csv(std::ostream& out, const std::vector<FuturesContractSeries>& series);
void write_auctions_csv(std::ostream& out, const std::vector<AuctionRecord>& records);
void write_costs_csv(std::ostream& out, const std::vector<CostComponents>& costs);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

namespace csv {

/// Comma-split with surrounding whitespace trimmed. No quoting: none of the
/// schemas carry free text.
std::vector<std::string> split_row(std::string_view line);

double parse_double(std::string_view text, std::string_view column);
long parse_integer(std::string_view text, std::string_view column);

/// Reads the header line and checks it against `columns`. `optional_tail`
/// trailing columns may be absent. Returns the number of columns present.
std::size_t expect_header(std::istream& in, const std::vector<std::string_view>& columns,
                          std::size_t optional_tail, std::size_t& line_no);

/// Next data line, skipping blank lines and `#` comments. False at EOF.
bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no);

}  // namespace csv

}  // namespace dsa

#endif  // DSA_MARKET_DATA_HPP
