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

#include "dsa/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "dsa/errors.hpp"

namespace dsa {

std::string_view to_string(Market market) { return market == Market::omel ? "OMEL" : "PJM"; }

std::string_view to_string(Currency currency) { return currency == Currency::eur ? "EUR" : "USD"; }

Market parse_market(std::string_view text) {
  if (text == "OMEL") return Market::omel;
  if (text == "PJM") return Market::pjm;
  throw DataError("unknown market '" + std::string(text) + "'");
}

const std::vector<std::string>& MarketZone::zones_of(Market market) {
  static const std::vector<std::string> omel{"ES"};
  static const std::vector<std::string> pjm{"ACE", "JCPL", "PSEG", "RECO"};
  return market == Market::omel ? omel : pjm;
}

MarketZone::MarketZone(Market market, std::string zone) : market_(market), zone_(std::move(zone)) {
  const auto& zones = zones_of(market_);
  if (std::find(zones.begin(), zones.end(), zone_) == zones.end()) {
    throw DataError("zone '" + zone_ + "' does not belong to market " +
                    std::string(to_string(market_)));
  }
}

std::string MarketZone::label() const { return std::string(to_string(market_)) + "/" + zone_; }

std::string_view to_string(LoadShape shape) {
  switch (shape) {
    case LoadShape::baseload: return "baseload";
    case LoadShape::peak: return "peak";
    case LoadShape::offpeak: return "offpeak";
  }
  return "baseload";
}

LoadShape parse_load_shape(std::string_view text) {
  if (text == "baseload") return LoadShape::baseload;
  if (text == "peak") return LoadShape::peak;
  if (text == "offpeak") return LoadShape::offpeak;
  throw DataError("unknown load shape '" + std::string(text) + "'");
}

DeliveryPeriod::DeliveryPeriod(Date start_day, Date end_day, LoadShape shape)
    : start(start_day), end(end_day), load_shape(shape) {
  if (end < start) {
    throw DataError("delivery period ends (" + format_date(end) + ") before it starts (" +
                    format_date(start) + ")");
  }
}

DeliveryPeriod delivery_from_product_code(std::string_view code) {
  // Q<a>[Q<b>]-<yy>
  auto bad = [&] { return DataError("unrecognised product code '" + std::string(code) + "'"); };
  auto dash = code.find('-');
  if (dash == std::string_view::npos || dash + 3 != code.size()) throw bad();
  auto quarters = code.substr(0, dash);
  int yy = 0;
  auto digits = code.substr(dash + 1);
  if (std::from_chars(digits.data(), digits.data() + digits.size(), yy).ec != std::errc{}) throw bad();
  if (quarters.size() != 2 && quarters.size() != 4) throw bad();
  auto quarter_at = [&](std::size_t pos) {
    if (quarters[pos] != 'Q' || quarters[pos + 1] < '1' || quarters[pos + 1] > '4') throw bad();
    return quarters[pos + 1] - '0';
  };
  const int first = quarter_at(0);
  const int last = quarters.size() == 4 ? quarter_at(2) : first;
  if (last < first) throw bad();
  using namespace std::chrono;
  const year y{2000 + yy};
  const Date start{y, month{static_cast<unsigned>(3 * first - 2)}, day{1}};
  const Date end{year_month_day_last{y, month_day_last{month{static_cast<unsigned>(3 * last)}}}};
  return {start, end, LoadShape::baseload};
}

// ---------------------------------------------------------------------------

SpotPriceSeries::SpotPriceSeries(MarketZone zone, std::vector<SpotObservation> observations)
    : zone_(std::move(zone)), observations_(std::move(observations)) {
  for (std::size_t i = 0; i < observations_.size(); ++i) {
    if (!std::isfinite(observations_[i].price)) {
      throw DataError("non-finite price on " + format_date(observations_[i].date));
    }
    if (i > 0 && observations_[i].date <= observations_[i - 1].date) {
      throw DataError(observations_[i].date == observations_[i - 1].date
                          ? "duplicate date " + format_date(observations_[i].date)
                          : "dates not increasing at " + format_date(observations_[i].date));
    }
  }
}

std::optional<double> SpotPriceSeries::price_on(const Date& day) const {
  auto it = std::lower_bound(observations_.begin(), observations_.end(), day,
                             [](const SpotObservation& o, const Date& d) { return o.date < d; });
  if (it == observations_.end() || it->date != day) return std::nullopt;
  return it->price;
}

FuturesContractSeries::FuturesContractSeries(std::string contract_id, MarketZone zone,
                                             std::vector<FuturesObservation> observations)
    : contract_id_(std::move(contract_id)), zone_(std::move(zone)),
      observations_(std::move(observations)) {
  for (std::size_t i = 0; i < observations_.size(); ++i) {
    const auto& o = observations_[i];
    if (!std::isfinite(o.settle)) throw DataError("non-finite settle on " + format_date(o.date));
    if (!(o.volume >= 0.0)) throw DataError("negative volume on " + format_date(o.date));
    if (!(o.open_interest >= 0.0)) throw DataError("negative open interest on " + format_date(o.date));
    if (i > 0 && o.date <= observations_[i - 1].date) {
      throw DataError(o.date == observations_[i - 1].date
                          ? "duplicate date " + format_date(o.date)
                          : "dates not increasing at " + format_date(o.date));
    }
  }
}

std::string_view to_string(ProductKind kind) {
  return kind == ProductKind::fixed_quantity ? "fixed_quantity" : "full_requirements";
}

ProductKind parse_product_kind(std::string_view text) {
  if (text == "fixed_quantity") return ProductKind::fixed_quantity;
  if (text == "full_requirements") return ProductKind::full_requirements;
  throw DataError("unknown product kind '" + std::string(text) + "'");
}

void AuctionRecord::validate() const {
  const std::string where = "auction " + std::to_string(auction_id) + " " + product_id + ": ";
  if (!(clearing_price > 0.0) || !std::isfinite(clearing_price)) {
    throw DataError(where + "clearing price must be positive");
  }
  if (!(quantity >= 0.0)) throw DataError(where + "quantity must be non-negative");
  if (winning_bidders < 1) throw DataError(where + "winning bidders must be at least 1");
  if (start_bidders < winning_bidders) {
    throw DataError(where + "start bidders fewer than winning bidders");
  }
  if (rounds < 1) throw DataError(where + "rounds must be at least 1");
  if (!(auction_date < delivery.start)) {
    throw DataError(where + "auction date must precede delivery start");
  }
  const auto expected = market == Market::omel ? ProductKind::fixed_quantity
                                               : ProductKind::full_requirements;
  if (product_kind != expected) {
    throw DataError(where + std::string(to_string(product_kind)) + " product in " +
                    std::string(to_string(market)) + " auction");
  }
}

MarketZone zone_of(const AuctionRecord& record) {
  if (record.market == Market::omel) return MarketZone::spain();
  auto dash = record.product_id.find('-');
  return MarketZone{Market::pjm, record.product_id.substr(0, dash)};
}

double average_price(const SpotPriceSeries& series, const DeliveryPeriod& period,
                     Coverage coverage) {
  const auto& obs = series.observations();
  auto first = std::lower_bound(obs.begin(), obs.end(), period.start,
                                [](const SpotObservation& o, const Date& d) { return o.date < d; });
  double sum = 0.0;
  long count = 0;
  Date expected = period.start;
  for (auto it = first; it != obs.end() && it->date <= period.end; ++it) {
    if (coverage == Coverage::strict && it->date != expected) {
      throw DataError("missing spot price on " + format_date(expected) + " for " +
                      series.zone().label());
    }
    sum += it->price;
    ++count;
    expected = add_days(it->date, 1);
  }
  if (coverage == Coverage::strict && count != period.days()) {
    throw DataError("missing spot price on " + format_date(expected) + " for " +
                    series.zone().label());
  }
  if (count == 0) {
    throw DataError("no spot prices between " + format_date(period.start) + " and " +
                    format_date(period.end));
  }
  return sum / static_cast<double>(count);
}

// ---------------------------------------------------------------------------
// CSV plumbing

namespace csv {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    out.emplace_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view column) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw DataError("unparseable number '" + std::string(text) + "' in column " + std::string(column));
  }
  return value;
}

long parse_integer(std::string_view text, std::string_view column) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DataError("unparseable integer '" + std::string(text) + "' in column " + std::string(column));
  }
  return value;
}

bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    return true;
  }
  return false;
}

std::size_t expect_header(std::istream& in, const std::vector<std::string_view>& columns,
                          std::size_t optional_tail, std::size_t& line_no) {
  std::string line;
  if (!next_data_line(in, line, line_no)) throw DataError("missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  auto fields = split_row(line);
  const std::size_t required = columns.size() - optional_tail;
  bool ok = fields.size() >= required && fields.size() <= columns.size();
  for (std::size_t i = 0; ok && i < fields.size(); ++i) ok = fields[i] == columns[i];
  if (!ok) {
    std::string expected;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      expected += (i ? "," : "") + std::string(columns[i]);
    }
    throw DataError("header mismatch, expected '" + expected + "'", line_no);
  }
  return fields.size();
}

}  // namespace csv

namespace {

/// Drives a line-by-line load; `parse` handles one row and may throw
/// DataError, which is rethrown with the line number or recorded.
template <class Fn>
LoadReport read_rows(std::istream& in, const std::vector<std::string_view>& columns,
                     const LoadOptions& options, Fn&& parse, std::size_t optional_tail = 0) {
  LoadReport report;
  std::size_t line_no = 0;
  const std::size_t width = csv::expect_header(in, columns, optional_tail, line_no);
  std::string line;
  while (csv::next_data_line(in, line, line_no)) {
    ++report.rows_in;
    try {
      auto fields = csv::split_row(line);
      if (fields.size() != width) {
        throw DataError("expected " + std::to_string(width) + " fields, got " +
                        std::to_string(fields.size()));
      }
      parse(fields);
      ++report.rows_accepted;
    } catch (const DataError& e) {
      if (options.strict) throw DataError(e.what(), line_no);
      ++report.rows_rejected;
      report.messages.push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (report.rows_in == 0) {
    ++report.warnings;
    report.messages.emplace_back("no data rows");
  }
  return report;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

void check_order(const Date& previous, const Date& current) {
  if (current == previous) throw DataError("duplicate date " + format_date(current));
  if (current < previous) throw DataError("dates not increasing at " + format_date(current));
}

const std::vector<std::string_view> kSpotColumns{"market", "zone", "date", "price"};
const std::vector<std::string_view> kFuturesColumns{"contract_id", "market", "zone", "date",
                                                    "settle", "volume", "open_interest"};
const std::vector<std::string_view> kAuctionColumns{
    "market",        "auction_id",     "auction_date",  "product_id",      "delivery_start",
    "delivery_end",  "load_shape",     "product_kind",  "clearing_price",  "quantity",
    "start_bidders", "winning_bidders", "rounds"};
const std::vector<std::string_view> kCostColumns{"market", "zone", "year", "unit_cost"};

std::vector<std::string> split_products(const std::string& field) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    auto bar = field.find('|', pos);
    parts.push_back(field.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos));
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  return parts;
}

}  // namespace

Loaded<std::vector<SpotPriceSeries>> load_spot_zones_csv(std::istream& in, const LoadOptions& options) {
  std::vector<MarketZone> zones;
  std::vector<std::vector<SpotObservation>> data;
  auto report = read_rows(in, kSpotColumns, options, [&](const std::vector<std::string>& f) {
    MarketZone zone{parse_market(f[0]), f[1]};
    SpotObservation obs{parse_date(f[2]), csv::parse_double(f[3], "price")};
    auto it = std::find(zones.begin(), zones.end(), zone);
    if (it == zones.end()) {
      zones.push_back(zone);
      data.emplace_back();
      it = zones.end() - 1;
    }
    auto& target = data[static_cast<std::size_t>(it - zones.begin())];
    if (!target.empty()) check_order(target.back().date, obs.date);
    target.push_back(obs);
  });
  std::vector<SpotPriceSeries> out;
  for (std::size_t i = 0; i < zones.size(); ++i) out.emplace_back(zones[i], std::move(data[i]));
  return {std::move(out), std::move(report)};
}

Loaded<SpotPriceSeries> load_spot_csv(std::istream& in, const MarketZone& zone,
                                      const LoadOptions& options) {
  std::vector<SpotObservation> data;
  auto report = read_rows(in, kSpotColumns, options, [&](const std::vector<std::string>& f) {
    MarketZone row_zone{parse_market(f[0]), f[1]};
    if (!(row_zone == zone)) {
      throw DataError("row zone " + row_zone.label() + " does not match " + zone.label());
    }
    SpotObservation obs{parse_date(f[2]), csv::parse_double(f[3], "price")};
    if (!data.empty()) check_order(data.back().date, obs.date);
    data.push_back(obs);
  });
  return {SpotPriceSeries{zone, std::move(data)}, std::move(report)};
}

Loaded<std::vector<FuturesContractSeries>> load_futures_csv(std::istream& in,
                                                            const LoadOptions& options) {
  struct Pending {
    std::string id;
    MarketZone zone;
    std::vector<FuturesObservation> obs;
  };
  std::vector<Pending> pending;
  auto report = read_rows(in, kFuturesColumns, options, [&](const std::vector<std::string>& f) {
    MarketZone zone{parse_market(f[1]), f[2]};
    FuturesObservation obs{parse_date(f[3]), csv::parse_double(f[4], "settle"),
                           csv::parse_double(f[5], "volume"),
                           csv::parse_double(f[6], "open_interest")};
    if (obs.volume < 0.0) throw DataError("negative volume");
    if (obs.open_interest < 0.0) throw DataError("negative open interest");
    auto it = std::find_if(pending.begin(), pending.end(),
                           [&](const Pending& p) { return p.id == f[0]; });
    if (it == pending.end()) {
      pending.push_back({f[0], zone, {}});
      it = pending.end() - 1;
    } else if (!(it->zone == zone)) {
      throw DataError("contract " + f[0] + " changes zone");
    }
    if (!it->obs.empty()) check_order(it->obs.back().date, obs.date);
    it->obs.push_back(obs);
  });
  std::vector<FuturesContractSeries> out;
  for (auto& p : pending) out.emplace_back(std::move(p.id), std::move(p.zone), std::move(p.obs));
  return {std::move(out), std::move(report)};
}

Loaded<std::vector<AuctionRecord>> load_auctions_csv(std::istream& in, const LoadOptions& options) {
  std::vector<AuctionRecord> records;
  auto report = read_rows(in, kAuctionColumns, options, [&](const std::vector<std::string>& f) {
    auto products = split_products(f[3]);
    auto starts = split_products(f[4]);
    auto ends = split_products(f[5]);
    auto prices = split_products(f[8]);
    auto quantities = split_products(f[9]);
    const std::size_t n = products.size();
    auto pick = [n](const std::vector<std::string>& v, std::size_t i, const char* column) {
      if (v.size() == n) return v[i];
      if (v.size() == 1) return v[0];
      throw DataError(std::string("column ") + column + " lists " + std::to_string(v.size()) +
                      " values for " + std::to_string(n) + " products");
    };
    std::vector<AuctionRecord> row;
    for (std::size_t i = 0; i < n; ++i) {
      AuctionRecord r;
      r.market = parse_market(f[0]);
      r.auction_id = static_cast<int>(csv::parse_integer(f[1], "auction_id"));
      r.auction_date = parse_date(f[2]);
      r.product_id = products[i];
      if (r.product_id.empty()) throw DataError("empty product_id");
      r.delivery = DeliveryPeriod{parse_date(pick(starts, i, "delivery_start")),
                                  parse_date(pick(ends, i, "delivery_end")),
                                  parse_load_shape(f[6])};
      r.product_kind = parse_product_kind(f[7]);
      r.clearing_price = csv::parse_double(pick(prices, i, "clearing_price"), "clearing_price");
      r.quantity = csv::parse_double(pick(quantities, i, "quantity"), "quantity");
      r.start_bidders = static_cast<int>(csv::parse_integer(f[10], "start_bidders"));
      r.winning_bidders = static_cast<int>(csv::parse_integer(f[11], "winning_bidders"));
      r.rounds = static_cast<int>(csv::parse_integer(f[12], "rounds"));
      r.validate();
      if (r.market == Market::pjm) (void)zone_of(r);
      row.push_back(std::move(r));
    }
    records.insert(records.end(), row.begin(), row.end());
  });
  return {std::move(records), std::move(report)};
}

Loaded<std::vector<CostComponents>> load_costs_csv(std::istream& in, const LoadOptions& options) {
  std::vector<CostComponents> costs;
  auto report = read_rows(in, kCostColumns, options, [&](const std::vector<std::string>& f) {
    CostComponents c{MarketZone{parse_market(f[0]), f[1]},
                     static_cast<int>(csv::parse_integer(f[2], "year")),
                     csv::parse_double(f[3], "unit_cost")};
    if (c.unit_cost < 0.0) throw DataError("negative unit cost");
    for (const auto& other : costs) {
      if (other.zone == c.zone && other.year == c.year) {
        throw DataError("duplicate cost entry for " + c.zone.label() + " " + std::to_string(c.year));
      }
    }
    costs.push_back(std::move(c));
  });
  return {std::move(costs), std::move(report)};
}

Loaded<SpotPriceSeries> load_spot_csv(const std::filesystem::path& path, const MarketZone& zone,
                                      const LoadOptions& options) {
  auto in = open_input(path);
  return load_spot_csv(in, zone, options);
}

Loaded<std::vector<SpotPriceSeries>> load_spot_zones_csv(const std::filesystem::path& path,
                                                         const LoadOptions& options) {
  auto in = open_input(path);
  return load_spot_zones_csv(in, options);
}

Loaded<std::vector<FuturesContractSeries>> load_futures_csv(const std::filesystem::path& path,
                                                            const LoadOptions& options) {
  auto in = open_input(path);
  return load_futures_csv(in, options);
}

Loaded<std::vector<AuctionRecord>> load_auctions_csv(const std::filesystem::path& path,
                                                     const LoadOptions& options) {
  auto in = open_input(path);
  return load_auctions_csv(in, options);
}

Loaded<std::vector<CostComponents>> load_costs_csv(const std::filesystem::path& path,
                                                   const LoadOptions& options) {
  auto in = open_input(path);
  return load_costs_csv(in, options);
}

// ---------------------------------------------------------------------------
// Writers

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

namespace {

void write_header(std::ostream& out, const std::vector<std::string_view>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
}

}  // namespace

void write_spot_csv(std::ostream& out, const std::vector<SpotPriceSeries>& series) {
  write_header(out, kSpotColumns);
  for (const auto& s : series) {
    for (const auto& o : s.observations()) {
      out << to_string(s.zone().market()) << ',' << s.zone().zone() << ',' << format_date(o.date)
          << ',' << format_number(o.price) << '\n';
    }
  }
}

void write_futures_csv(std::ostream& out, const std::vector<FuturesContractSeries>& series) {
  write_header(out, kFuturesColumns);
  for (const auto& s : series) {
    for (const auto& o : s.observations()) {
      out << s.contract_id() << ',' << to_string(s.zone().market()) << ',' << s.zone().zone() << ','
          << format_date(o.date) << ',' << format_number(o.settle) << ','
          << format_number(o.volume) << ',' << format_number(o.open_interest) << '\n';
    }
  }
}

void write_auctions_csv(std::ostream& out, const std::vector<AuctionRecord>& records) {
  write_header(out, kAuctionColumns);
  for (const auto& r : records) {
    out << to_string(r.market) << ',' << r.auction_id << ',' << format_date(r.auction_date) << ','
        << r.product_id << ',' << format_date(r.delivery.start) << ','
        << format_date(r.delivery.end) << ',' << to_string(r.delivery.load_shape) << ','
        << to_string(r.product_kind) << ',' << format_number(r.clearing_price) << ','
        << format_number(r.quantity) << ',' << r.start_bidders << ',' << r.winning_bidders << ','
        << r.rounds << '\n';
  }
}

void write_costs_csv(std::ostream& out, const std::vector<CostComponents>& costs) {
  write_header(out, kCostColumns);
  for (const auto& c : costs) {
    out << to_string(c.zone.market()) << ',' << c.zone.zone() << ',' << c.year << ','
        << format_number(c.unit_cost) << '\n';
  }
}

}  // namespace dsa
