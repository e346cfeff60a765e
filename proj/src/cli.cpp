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

#include "dsa/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsa/activity.hpp"
#include "dsa/errors.hpp"
#include "dsa/market_data.hpp"
#include "dsa/panel_regression.hpp"
#include "dsa/premium.hpp"
#include "dsa/scenario.hpp"
#include "dsa/statistics.hpp"

namespace dsa::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path) {
  if (!path.empty() && !fs::is_regular_file(path)) throw UsageError("input file not found: " + path);
}

json metadata(const std::string& subcommand, const json& config, std::uint64_t seed) {
  return {{"tool", "dsa"}, {"version", kVersion}, {"subcommand", subcommand}, {"seed", seed}, {"config", config}};
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& document) { write_file(path, document.dump(2) + "\n"); }

/// CSV with the run metadata on a leading `#` line.
void write_csv(const fs::path& path, const json& meta, const std::string& body) {
  write_file(path, "# " + meta.dump() + "\n" + body);
}

std::string num(double v) { return format_number(v); }
std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }
std::string pct(double fraction) { return num(fraction * 100.0); }
std::string opt_pct(const std::optional<double>& v) { return v ? pct(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json stats_json(std::span<const double> values) {
  try {
    const auto s = stats::distribution_stats(values);
    return {{"n", s.n},
            {"mean", s.mean},
            {"std", s.std},
            {"coefficient_of_variation", opt_json(s.coefficient_of_variation)},
            {"skewness", s.skewness},
            {"kurtosis", s.kurtosis},
            {"jarque_bera", s.jarque_bera},
            {"jarque_bera_p", s.jarque_bera_p}};
  } catch (const std::exception& e) {
    return {{"n", values.size()}, {"error", e.what()}};
  }
}

json report_json(const LoadReport& r) {
  return {{"rows_in", r.rows_in},
          {"rows_accepted", r.rows_accepted},
          {"rows_rejected", r.rows_rejected},
          {"warnings", r.warnings},
          {"messages", r.messages}};
}

// ---------------------------------------------------------------------------
// premium

using FmpiTable = std::map<std::tuple<std::string, int, std::string>, double>;

FmpiTable load_fmpi_table(const std::string& path) {
  FmpiTable table;
  if (path.empty()) return table;
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::size_t line_no = 0;
  csv::expect_header(in, {"market", "auction_id", "product_id", "fmpi"}, 0, line_no);
  std::string line;
  while (csv::next_data_line(in, line, line_no)) {
    try {
      auto f = csv::split_row(line);
      if (f.size() != 4) throw DataError("expected 4 fields");
      parse_market(f[0]);
      table[{f[0], static_cast<int>(csv::parse_integer(f[1], "auction_id")), f[2]}] =
          csv::parse_double(f[3], "fmpi");
    } catch (const DataError& e) {
      throw DataError(e.what(), line_no);
    }
  }
  return table;
}

std::optional<double> lookup_fmpi(const FmpiTable& table, const AuctionRecord& r) {
  auto it = table.find({std::string(to_string(r.market)), r.auction_id, r.product_id});
  if (it == table.end()) return std::nullopt;
  return it->second;
}

struct PremiumLine {
  const AuctionRecord* record;
  premium::PremiumRow row;
};

const char* kPremiumColumns =
    "market,group,auction_id,auction_date,product_id,gross_price,auction_price,spot_avg,costs,"
    "premium,premium_pct,fmpi,fmpi_premium,fmpi_premium_pct\n";

void append_row(std::ostringstream& os, std::string_view market, const PremiumLine& line) {
  const auto& r = line.row;
  os << market << ',' << r.group << ',' << line.record->auction_id << ','
     << format_date(line.record->auction_date) << ',' << line.record->product_id << ','
     << num(r.gross_price) << ',' << num(r.auction_price) << ',' << num(r.spot_avg) << ','
     << num(r.costs) << ',' << num(r.premium.value) << ',' << pct(r.premium.pct) << ','
     << opt_num(r.fmpi) << ','
     << (r.fmpi_premium ? num(r.fmpi_premium->value) : std::string()) << ','
     << (r.fmpi_premium ? pct(r.fmpi_premium->pct) : std::string()) << '\n';
}

void append_average(std::ostringstream& os, std::string_view market, const premium::AggregateRow& a) {
  os << market << ',' << a.group << ",,,Average," << num(a.gross_price) << ',' << num(a.auction_price)
     << ',' << num(a.spot_avg) << ',' << num(a.costs) << ',' << num(a.premium) << ','
     << pct(a.premium_pct) << ",," << opt_num(a.fmpi_premium) << ',' << opt_pct(a.fmpi_premium_pct)
     << '\n';
}

json aggregate_json(const premium::AggregateRow& a) {
  return {{"group", a.group},
          {"n", a.n},
          {"auction_price", a.auction_price},
          {"spot_avg", a.spot_avg},
          {"costs", a.costs},
          {"premium", a.premium},
          {"premium_pct", a.premium_pct * 100.0},
          {"fmpi_premium", opt_json(a.fmpi_premium)},
          {"fmpi_premium_pct", a.fmpi_premium_pct ? json(*a.fmpi_premium_pct * 100.0) : json(nullptr)}};
}

const SpotPriceSeries& spot_for(const std::vector<SpotPriceSeries>& spot, const MarketZone& zone) {
  for (const auto& s : spot) {
    if (s.zone() == zone) return s;
  }
  throw DataError("no spot prices for " + zone.label());
}

std::vector<PremiumLine> omel_lines(const std::vector<AuctionRecord>& records,
                                    const std::vector<SpotPriceSeries>& spot, const FmpiTable& fmpi,
                                    Coverage coverage) {
  std::vector<PremiumLine> lines;
  for (const auto& r : records) {
    if (r.market != Market::omel) continue;
    const double spot_avg = average_price(spot_for(spot, MarketZone::spain()), r.delivery, coverage);
    lines.push_back({&r, premium::make_cesur_row(std::to_string(year_of(r.auction_date)), r.product_id,
                                                 r.clearing_price, spot_avg, lookup_fmpi(fmpi, r))});
  }
  return lines;
}

/// One line per BGS-FP auction whose first delivery year is covered by
/// exactly three overlapping 36-month contracts. Lines are grouped by zone.
std::vector<PremiumLine> pjm_lines(const std::vector<AuctionRecord>& records,
                                   const std::vector<SpotPriceSeries>& spot,
                                   const std::vector<CostComponents>& costs, const FmpiTable& fmpi,
                                   Coverage coverage, std::vector<std::string>& warnings) {
  std::vector<PremiumLine> lines;
  for (const auto& zone_name : MarketZone::zones_of(Market::pjm)) {
    const MarketZone zone{Market::pjm, zone_name};
    for (const auto& r : records) {
      if (r.market != Market::pjm || !(zone_of(r) == zone)) continue;
      const DeliveryPeriod year{r.delivery.start, add_days(shift_years(r.delivery.start, 1), -1)};
      std::vector<double> applying;
      for (const auto& other : records) {
        if (other.market == Market::pjm && zone_of(other) == zone && other.delivery.start <= year.start &&
            other.delivery.end >= year.end) {
          applying.push_back(other.clearing_price);
        }
      }
      if (applying.size() != 3) {
        warnings.push_back("skipped " + r.product_id + " auction " + std::to_string(r.auction_id) + ": " +
                           std::to_string(applying.size()) + " contracts cover its first delivery year");
        continue;
      }
      const int y = year_of(r.delivery.start);
      auto cost = std::find_if(costs.begin(), costs.end(),
                               [&](const CostComponents& c) { return c.zone == zone && c.year == y; });
      if (cost == costs.end()) throw DataError("no cost entry for " + zone.label() + " " + std::to_string(y));
      const double spot_avg = average_price(spot_for(spot, zone), year, coverage);
      lines.push_back({&r, premium::make_pjm_row(zone_name, std::to_string(y), r.clearing_price,
                                                 stats::mean(applying), cost->unit_cost, spot_avg,
                                                 lookup_fmpi(fmpi, r))});
    }
  }
  return lines;
}

struct PremiumOptions {
  std::string auctions;
  std::string spot;
  std::string costs;
  std::string fmpi;
  std::string coverage = "strict";
};

int cmd_premium(const PremiumOptions& o, const fs::path& out_dir, std::ostream& out) {
  for (const auto* p : {&o.auctions, &o.spot, &o.costs, &o.fmpi}) require_file(*p);
  const Coverage coverage = o.coverage == "available" ? Coverage::available_days : Coverage::strict;
  const auto auctions = load_auctions_csv(o.auctions).data;
  const auto spot = load_spot_zones_csv(o.spot).data;
  const auto costs = o.costs.empty() ? std::vector<CostComponents>{} : load_costs_csv(o.costs).data;
  const auto fmpi = load_fmpi_table(o.fmpi);

  const json config{{"auctions", o.auctions}, {"spot", o.spot}, {"costs", o.costs},
                    {"fmpi", o.fmpi}, {"coverage", o.coverage}};
  const json meta = metadata("premium", config, 0);
  json summary{{"metadata", meta}, {"markets", json::object()}};

  std::vector<std::string> warnings;
  for (Market market : {Market::omel, Market::pjm}) {
    const bool present = std::any_of(auctions.begin(), auctions.end(),
                                     [&](const AuctionRecord& r) { return r.market == market; });
    if (!present) continue;
    const auto lines = market == Market::omel ? omel_lines(auctions, spot, fmpi, coverage)
                                              : pjm_lines(auctions, spot, costs, fmpi, coverage, warnings);
    if (lines.empty()) continue;
    std::vector<premium::PremiumRow> rows;
    for (const auto& l : lines) rows.push_back(l.row);
    const auto agg = premium::yearly_aggregate(rows);

    const auto market_name = std::string(to_string(market));
    std::ostringstream csv_body;
    csv_body << kPremiumColumns;
    for (const auto& g : agg.groups) {
      for (const auto& l : lines) {
        if (l.row.group == g.group) append_row(csv_body, market_name, l);
      }
      append_average(csv_body, market_name, g);
    }
    append_average(csv_body, market_name, agg.grand);
    write_csv(out_dir / ("premium_" + market_name + ".csv"), meta, csv_body.str());

    json m{{"rows", lines.size()}, {"groups", json::array()}, {"grand_average", aggregate_json(agg.grand)}};
    for (const auto& g : agg.groups) m["groups"].push_back(aggregate_json(g));

    if (market == Market::omel) {
      double impact = 0.0;
      for (const auto& l : lines) impact += premium::monetary_impact(l.row.premium.value, l.record->quantity);
      m["monetary_impact"] = impact;
    } else {
      std::vector<stats::NamedSample> epfp;
      std::vector<stats::NamedSample> fmpi_prem;
      for (const auto& g : agg.groups) {
        stats::NamedSample a{g.group, {}};
        stats::NamedSample b{g.group, {}};
        for (const auto& l : lines) {
          if (l.row.group != g.group) continue;
          a.values.push_back(l.row.premium.value);
          if (l.row.fmpi_premium) b.values.push_back(l.row.fmpi_premium->value);
        }
        epfp.push_back(std::move(a));
        if (b.values.size() >= 2) fmpi_prem.push_back(std::move(b));
      }
      auto tests_json = [](const std::vector<stats::NamedSample>& groups) {
        json arr = json::array();
        if (groups.size() < 2) return arr;
        for (const auto& t : stats::equality_of_means(groups)) {
          arr.push_back({{"first", t.first}, {"second", t.second}, {"t", t.test.t}, {"df", t.test.df},
                         {"p_value", t.test.p_value}, {"reject_05", t.reject_05}, {"reject_01", t.reject_01}});
        }
        return arr;
      };
      m["equality_of_means"] = {{"premium", tests_json(epfp)}, {"fmpi_premium", tests_json(fmpi_prem)}};
    }
    summary["markets"][market_name] = m;
  }

  json spot_stats = json::object();
  for (const auto& s : spot) {
    std::vector<double> prices;
    for (const auto& obs : s.observations()) prices.push_back(obs.price);
    spot_stats[s.zone().label()] = stats_json(prices);
  }
  summary["spot_distribution"] = spot_stats;
  summary["warnings"] = warnings;
  const std::size_t written = summary["markets"].size();

  // Markets are usually priced in separate runs; keep what earlier runs wrote.
  const auto summary_path = out_dir / "premium_summary.json";
  if (fs::is_regular_file(summary_path)) {
    std::ifstream in(summary_path);
    const json previous = json::parse(in, nullptr, false);
    if (previous.is_object() && previous.contains("markets")) {
      for (const auto& [name, m] : previous["markets"].items()) {
        if (!summary["markets"].contains(name)) summary["markets"][name] = m;
      }
      for (const auto& [zone, st] : previous.value("spot_distribution", json::object()).items()) {
        if (!summary["spot_distribution"].contains(zone)) summary["spot_distribution"][zone] = st;
      }
      for (const auto& w : previous.value("warnings", json::array())) {
        if (std::find(summary["warnings"].begin(), summary["warnings"].end(), w) == summary["warnings"].end()) {
          summary["warnings"].push_back(w);
        }
      }
    }
  }
  write_json(summary_path, summary);
  out << "premium: wrote " << written << " market table(s) to " << out_dir.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// fmpi

struct FmpiOptions {
  std::string prices;
  double rate = 0.0;
};

int cmd_fmpi(const FmpiOptions& o, const fs::path& out_dir, std::ostream& out) {
  require_file(o.prices);
  std::ifstream in(o.prices);
  std::size_t line_no = 0;
  csv::expect_header(in, {"month", "price"}, 0, line_no);
  std::vector<std::pair<long, double>> rows;
  std::string line;
  while (csv::next_data_line(in, line, line_no)) {
    try {
      auto f = csv::split_row(line);
      if (f.size() != 2) throw DataError("expected 2 fields");
      rows.emplace_back(csv::parse_integer(f[0], "month"), csv::parse_double(f[1], "price"));
    } catch (const DataError& e) {
      throw DataError(e.what(), line_no);
    }
  }
  std::sort(rows.begin(), rows.end());
  premium::FmpiSpec spec;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].first != static_cast<long>(j + 1)) throw DataError("months must run 1..36 without gaps");
    spec.monthly_prices.push_back(rows[j].second);
  }
  spec.annual_rate = o.rate;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  const double value = premium::fmpi_strip(spec);
  const json meta = metadata("fmpi", {{"prices", o.prices}, {"rate", o.rate}}, 0);
  write_json(out_dir / "fmpi.json",
             {{"metadata", meta}, {"fmpi", value}, {"weights", premium::fmpi_weights(o.rate)}});
  out << "fmpi: " << num(value) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// activity / event-study

std::vector<FuturesContractSeries> select_contracts(std::vector<FuturesContractSeries> all,
                                                    const std::vector<std::string>& wanted) {
  if (wanted.empty()) return all;
  std::vector<FuturesContractSeries> out;
  for (const auto& id : wanted) {
    auto it = std::find_if(all.begin(), all.end(), [&](const auto& s) { return s.contract_id() == id; });
    if (it == all.end()) throw DataError("contract " + id + " not found");
    out.push_back(*it);
  }
  return out;
}

struct ActivityOptions {
  std::string futures;
  std::vector<std::string> contracts;
};

int cmd_activity(const ActivityOptions& o, const fs::path& out_dir, std::ostream& out) {
  require_file(o.futures);
  const auto contracts = select_contracts(load_futures_csv(o.futures).data, o.contracts);
  const json meta = metadata("activity", {{"futures", o.futures}, {"contracts", o.contracts}}, 0);
  std::ostringstream body;
  body << "contract_id,date,measure,value\n";
  json summary{{"metadata", meta}, {"contracts", json::object()}};
  for (const auto& c : contracts) {
    json per = json::object();
    for (auto kind : {activity::MeasureKind::volume, activity::MeasureKind::open_interest,
                      activity::MeasureKind::r1, activity::MeasureKind::r2}) {
      activity::MeasureSeries s;
      try {
        s = activity::measure_series(c, kind);
      } catch (const std::invalid_argument& e) {
        per[std::string(to_string(kind))] = {{"error", e.what()}};
        continue;
      }
      std::vector<double> values;
      for (const auto& p : s.points) {
        body << c.contract_id() << ',' << format_date(p.date) << ',' << to_string(kind) << ',' << num(p.value)
             << '\n';
        values.push_back(p.value);
      }
      json entry = stats_json(values);
      entry["undefined_days"] = s.undefined_days.size();
      per[std::string(to_string(kind))] = entry;
    }
    summary["contracts"][c.contract_id()] = per;
  }
  write_csv(out_dir / "activity_measures.csv", meta, body.str());
  write_json(out_dir / "activity_summary.json", summary);
  out << "activity: " << contracts.size() << " contract(s)\n";
  return kOk;
}

struct EventOptions {
  std::string futures;
  std::string auctions;
  std::string events;
  std::string market;
  std::vector<std::string> contracts;
  std::vector<std::string> measures{"volume", "open_interest", "r1", "r2"};
  std::vector<int> window{-5, 5};
  std::string variant = "welch";
  double alpha = 0.05;
};

std::vector<Date> load_event_dates(const EventOptions& o) {
  std::set<Date> dates;
  if (!o.auctions.empty()) {
    std::optional<Market> market;
    if (!o.market.empty()) market = parse_market(o.market);
    for (const auto& r : load_auctions_csv(o.auctions).data) {
      if (!market || r.market == *market) dates.insert(r.auction_date);
    }
  }
  if (!o.events.empty()) {
    std::ifstream in(o.events);
    std::size_t line_no = 0;
    csv::expect_header(in, {"date"}, 0, line_no);
    std::string line;
    while (csv::next_data_line(in, line, line_no)) {
      try {
        dates.insert(parse_date(csv::split_row(line).at(0)));
      } catch (const DataError& e) {
        throw DataError(e.what(), line_no);
      }
    }
  }
  if (dates.empty()) throw DataError("no event dates");
  return {dates.begin(), dates.end()};
}

int cmd_event_study(const EventOptions& o, const fs::path& out_dir, std::ostream& out) {
  require_file(o.futures);
  require_file(o.auctions);
  require_file(o.events);
  if (o.auctions.empty() && o.events.empty()) throw UsageError("event-study needs --auctions or --events");
  if (o.window.size() != 2 || o.window[0] > o.window[1]) throw UsageError("--window takes FIRST LAST with FIRST <= LAST");
  if (o.variant != "welch" && o.variant != "pooled") throw UsageError("--variant must be welch or pooled");
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  std::vector<activity::MeasureKind> kinds;
  for (const auto& m : o.measures) {
    try {
      kinds.push_back(activity::parse_measure_kind(m));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  const auto contracts = select_contracts(load_futures_csv(o.futures).data, o.contracts);
  const auto events = load_event_dates(o);
  activity::EventStudyOptions options;
  options.window = {o.window[0], o.window[1]};
  options.variant = o.variant == "welch" ? activity::TestVariant::welch : activity::TestVariant::pooled;

  const json config{{"futures", o.futures}, {"auctions", o.auctions}, {"events", o.events},
                    {"market", o.market}, {"contracts", o.contracts}, {"measures", o.measures},
                    {"window", o.window}, {"variant", o.variant}, {"alpha", o.alpha}};
  const json meta = metadata("event-study", config, 0);
  json summary{{"metadata", meta}, {"event_dates", json::array()}, {"studies", json::array()}};
  for (const auto& d : events) summary["event_dates"].push_back(format_date(d));

  std::map<activity::MeasureKind, std::vector<activity::EventStudyResult>> by_kind;
  std::vector<activity::EventStudyResult> all;
  for (const auto& c : contracts) {
    if (c.observations().empty()) continue;
    std::vector<Date> in_range;
    std::vector<std::string> outside;
    for (const auto& d : events) {
      if (d < c.observations().front().date || d > c.observations().back().date) {
        outside.push_back("event " + format_date(d) + ": outside the trading range of " + c.contract_id());
      } else {
        in_range.push_back(d);
      }
    }
    if (in_range.empty()) continue;
    for (auto kind : kinds) {
      const auto series = activity::measure_series(c, kind);
      auto report = activity::event_study(series, in_range, options);
      report.dropped.insert(report.dropped.begin(), outside.begin(), outside.end());
      std::ostringstream body;
      body << "offset,t_stat,sig01,sig05\n";
      json rows = json::array();
      for (const auto& r : report.results) {
        body << r.offset << ',' << (r.defined ? num(r.t_stat) : std::string()) << ',' << (r.sig01 ? 1 : 0)
             << ',' << (r.sig05 ? 1 : 0) << '\n';
        rows.push_back({{"offset", r.offset}, {"n_event", r.n_event}, {"event_mean", r.event_mean},
                        {"t_stat", r.defined ? json(r.t_stat) : json(nullptr)},
                        {"df", r.defined ? json(r.df) : json(nullptr)}, {"p_value", r.p_value},
                        {"sig01", r.sig01}, {"sig05", r.sig05}});
      }
      const auto file = "event_study_" + c.contract_id() + "_" + std::string(to_string(kind)) + ".csv";
      write_csv(out_dir / file, meta, body.str());
      summary["studies"].push_back({{"contract_id", c.contract_id()},
                                    {"measure", to_string(kind)},
                                    {"file", file},
                                    {"baseline_n", report.baseline_n},
                                    {"baseline_mean", report.baseline_mean},
                                    {"results", rows},
                                    {"dropped", report.dropped}});
      auto& bucket = by_kind[kind];
      bucket.insert(bucket.end(), report.results.begin(), report.results.end());
      all.insert(all.end(), report.results.begin(), report.results.end());
    }
  }
  auto tally_json = [&](const std::vector<activity::EventStudyResult>& results) {
    const auto t = activity::significance_tally(results, o.alpha);
    return json{{"significant_positive", t.significant_positive},
                {"significant_negative", t.significant_negative},
                {"total", t.total},
                {"verdict", t.verdict}};
  };
  json tallies = json::object();
  for (const auto& [kind, results] : by_kind) tallies[std::string(to_string(kind))] = tally_json(results);
  std::vector<activity::EventStudyResult> ratios;
  for (auto kind : {activity::MeasureKind::r1, activity::MeasureKind::r2}) {
    if (by_kind.count(kind)) ratios.insert(ratios.end(), by_kind[kind].begin(), by_kind[kind].end());
  }
  if (!ratios.empty()) tallies["r1_r2"] = tally_json(ratios);
  tallies["all"] = tally_json(all);
  summary["tally"] = tallies;
  write_json(out_dir / "event_study_summary.json", summary);
  out << "event-study: " << summary["studies"].size() << " stud" << (summary["studies"].size() == 1 ? "y" : "ies")
      << ", " << (o.window[1] - o.window[0] + 1) << " offsets each\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// regress

struct RegressOptions {
  std::string panel;
  std::vector<std::string> covariates{"vol3y", "startbidders"};
  bool no_period_fe = false;
  bool unit_fe = false;
};

json coefficient_json(const panel::Coefficient& c) {
  auto finite = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"estimate", c.estimate}, {"std_error", c.std_error}, {"t_stat", finite(c.t_stat)},
          {"p_value", finite(c.p_value)}};
}

int cmd_regress(const RegressOptions& o, const fs::path& out_dir, std::ostream& out) {
  require_file(o.panel);
  panel::FitSpec spec;
  spec.covariates = o.covariates;
  spec.period_fixed_effects = !o.no_period_fe;
  spec.unit_fixed_effects = o.unit_fe;
  const auto data = panel::load_panel_csv(o.panel);
  const auto result = panel::fit_pooled_ols(data, spec);
  const json config{{"panel", o.panel}, {"covariates", o.covariates},
                    {"period_fixed_effects", spec.period_fixed_effects},
                    {"unit_fixed_effects", spec.unit_fixed_effects}};
  json doc{{"metadata", metadata("regress", config, 0)},
           {"observations", result.n},
           {"clusters", result.clusters},
           {"k_total", result.k_total},
           {"r_squared", result.r_squared},
           {"adj_r_squared", result.adj_r_squared},
           {"rss", result.rss},
           {"rmse", result.rmse},
           {"small_sample_factor", result.small_sample_factor},
           {"coefficients", json::object()},
           {"fixed_effects", json::object()}};
  for (const auto& c : result.coefficients) doc["coefficients"][c.name] = coefficient_json(c);
  for (const auto& c : result.fixed_effects) doc["fixed_effects"][c.name] = coefficient_json(c);
  write_json(out_dir / "regression.json", doc);
  out << "regress: n=" << result.n << " R2=" << num(result.r_squared) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string policy;
  std::size_t runs = 1;
  unsigned threads = 1;
};

int cmd_simulate(const SimulateOptions& o, const fs::path& out_dir, std::ostream& out) {
  require_file(o.scenario);
  std::ifstream in(o.scenario);
  json document;
  try {
    document = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(std::string("scenario is not valid JSON: ") + e.what());
  }
  auction::Scenario scenario;
  try {
    scenario = auction::parse_scenario(document);
    if (!o.policy.empty()) scenario.config.undershoot_policy = auction::parse_undershoot_policy(o.policy);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("scenario: ") + e.what());
  }
  if (o.runs == 0) throw UsageError("--runs must be positive");
  const json config{{"scenario", o.scenario}, {"policy", auction::to_string(scenario.config.undershoot_policy)},
                    {"runs", o.runs}, {"threads", o.threads}};
  json doc{{"metadata", metadata("simulate", config, o.seed)}};
  if (o.runs == 1) {
    auto bidders = auction::make_bidders(scenario, o.seed);
    const auto outcome = auction::run_descending_clock(scenario.config, bidders);
    doc["outcome"] = auction::to_json(outcome);
    out << "simulate: cleared at " << num(outcome.clearing_price) << " after " << outcome.rounds_used
        << " rounds\n";
  } else {
    const auto outcomes = auction::run_replications(scenario, o.seed, o.runs, o.threads);
    json runs = json::array();
    std::vector<double> prices;
    std::vector<double> rounds;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      const auto& oc = outcomes[k];
      json awards = json::object();
      for (const auto& a : oc.awards) awards[a.bidder_id] = a.quantity;
      runs.push_back({{"run", k}, {"clearing_price", oc.clearing_price}, {"rounds_used", oc.rounds_used},
                      {"undershoot", oc.undershoot}, {"awards", awards}});
      prices.push_back(oc.clearing_price);
      rounds.push_back(oc.rounds_used);
    }
    doc["runs"] = runs;
    doc["clearing_price_mean"] = stats::mean(prices);
    doc["rounds_mean"] = stats::mean(rounds);
    out << "simulate: " << o.runs << " runs, mean clearing price " << num(stats::mean(prices)) << "\n";
  }
  write_json(out_dir / "simulation.json", doc);
  return kOk;
}

// ---------------------------------------------------------------------------
// ingest

struct IngestOptions {
  std::string spot;
  std::string futures;
  std::string auctions;
  std::string costs;
  bool lenient = false;
};

int cmd_ingest(const IngestOptions& o, const fs::path& out_dir, std::ostream& out) {
  if (o.spot.empty() && o.futures.empty() && o.auctions.empty() && o.costs.empty()) {
    throw UsageError("ingest needs at least one of --spot, --futures, --auctions, --costs");
  }
  for (const auto* p : {&o.spot, &o.futures, &o.auctions, &o.costs}) require_file(*p);
  const LoadOptions options{!o.lenient};
  const json config{{"spot", o.spot}, {"futures", o.futures}, {"auctions", o.auctions},
                    {"costs", o.costs}, {"lenient", o.lenient}};
  const json meta = metadata("ingest", config, 0);
  json reports = json::object();
  auto emit = [&](const char* name, const LoadReport& report, auto&& writer) {
    std::ostringstream body;
    writer(body);
    write_csv(out_dir / (std::string(name) + ".csv"), meta, body.str());
    reports[name] = report_json(report);
  };
  if (!o.spot.empty()) {
    auto loaded = load_spot_zones_csv(o.spot, options);
    emit("spot", loaded.report, [&](std::ostream& os) { write_spot_csv(os, loaded.data); });
  }
  if (!o.futures.empty()) {
    auto loaded = load_futures_csv(o.futures, options);
    emit("futures", loaded.report, [&](std::ostream& os) { write_futures_csv(os, loaded.data); });
  }
  if (!o.auctions.empty()) {
    auto loaded = load_auctions_csv(o.auctions, options);
    emit("auctions", loaded.report, [&](std::ostream& os) { write_auctions_csv(os, loaded.data); });
    reports["auctions"]["records"] = loaded.data.size();
  }
  if (!o.costs.empty()) {
    auto loaded = load_costs_csv(o.costs, options);
    emit("costs", loaded.report, [&](std::ostream& os) { write_costs_csv(os, loaded.data); });
  }
  write_json(out_dir / "ingest_report.json", {{"metadata", meta}, {"files", reports}});
  out << "ingest: " << reports.size() << " file(s) validated\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const fs::path& out_dir, std::ostream& out) {
  if (!fs::is_directory(out_dir)) throw UsageError("output directory not found: " + out_dir.string());
  auto read = [&](const char* name) -> std::optional<json> {
    const auto path = out_dir / name;
    if (!fs::is_regular_file(path)) return std::nullopt;
    std::ifstream in(path);
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw DataError(std::string(name) + ": " + e.what());
    }
  };
  auto fmt = [](const json& v) -> std::string {
    if (v.is_number_float()) {
      std::ostringstream s;
      s << std::fixed << std::setprecision(4) << v.get<double>();
      return s.str();
    }
    if (v.is_null()) return "n/a";
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  std::ostringstream md;
  md << "<!-- " << metadata("report", {{"out_dir", out_dir.string()}}, 0).dump() << " -->\n";
  md << "# dsa report\n";
  std::size_t sections = 0;
  if (auto p = read("premium_summary.json")) {
    ++sections;
    md << "\n## Premiums\n\n| market | group | n | premium | premium % | FMPI premium | FMPI premium % |\n"
       << "|---|---|---|---|---|---|---|\n";
    for (const auto& [market, m] : (*p)["markets"].items()) {
      auto line = [&](const json& g) {
        md << "| " << market << " | " << g["group"].get<std::string>() << " | " << g["n"] << " | "
           << fmt(g["premium"]) << " | " << fmt(g["premium_pct"]) << " | " << fmt(g["fmpi_premium"]) << " | "
           << fmt(g["fmpi_premium_pct"]) << " |\n";
      };
      for (const auto& g : m["groups"]) line(g);
      line(m["grand_average"]);
    }
  }
  if (auto e = read("event_study_summary.json")) {
    ++sections;
    md << "\n## Event studies\n\n| measure | significant + | significant - | total | verdict |\n"
       << "|---|---|---|---|---|\n";
    for (const auto& [name, t] : (*e)["tally"].items()) {
      md << "| " << name << " | " << t["significant_positive"] << " | " << t["significant_negative"] << " | "
         << t["total"] << " | " << t["verdict"].get<std::string>() << " |\n";
    }
  }
  if (auto r = read("regression.json")) {
    ++sections;
    md << "\n## Panel regression\n\n| term | estimate | t |\n|---|---|---|\n";
    for (const auto& [name, c] : (*r)["coefficients"].items()) {
      md << "| " << name << " | " << fmt(c["estimate"]) << " | " << fmt(c["t_stat"]) << " |\n";
    }
    md << "\nn = " << (*r)["observations"] << ", R2 = " << fmt((*r)["r_squared"]) << ", rss = " << fmt((*r)["rss"])
       << ", rmse = " << fmt((*r)["rmse"]) << "\n";
  }
  if (auto s = read("simulation.json")) {
    ++sections;
    md << "\n## Auction simulation\n\n";
    if (s->contains("outcome")) {
      md << "clearing price " << fmt((*s)["outcome"]["clearing_price"]) << " after " << (*s)["outcome"]["rounds_used"]
         << " rounds\n";
    } else {
      md << (*s)["runs"].size() << " runs, mean clearing price " << fmt((*s)["clearing_price_mean"]) << "\n";
    }
  }
  if (sections == 0) throw DataError("no analysis outputs found in " + out_dir.string());
  write_file(out_dir / "report.md", md.str());
  out << "report: " << sections << " section(s)\n";
  return kOk;
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Default supply auction simulator and premium analytics", "dsa"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "INI/TOML file with option values; command-line flags take precedence");
  std::string out_dir = ".";
  app.add_option("--out-dir,-o", out_dir, "Directory for outputs")->capture_default_str();
  app.require_subcommand(1);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate input files and write normalised copies");
  ingest_cmd->add_option("--spot", ingest.spot, "Spot price CSV");
  ingest_cmd->add_option("--futures", ingest.futures, "Futures CSV");
  ingest_cmd->add_option("--auctions", ingest.auctions, "Auction records CSV");
  ingest_cmd->add_option("--costs", ingest.costs, "Cost components CSV");
  ingest_cmd->add_flag("--lenient", ingest.lenient, "Reject bad rows instead of failing");

  PremiumOptions prem;
  auto* premium_cmd = app.add_subcommand("premium", "Ex-post forward and FMPI premiums per auction");
  premium_cmd->add_option("--auctions", prem.auctions, "Auction records CSV")->required();
  premium_cmd->add_option("--spot", prem.spot, "Spot price CSV (one or more zones)")->required();
  premium_cmd->add_option("--costs", prem.costs, "Cost components CSV (full-requirements zones)");
  premium_cmd->add_option("--fmpi", prem.fmpi, "CSV market,auction_id,product_id,fmpi");
  premium_cmd->add_option("--coverage", prem.coverage, "strict or available")
      ->check(CLI::IsMember({"strict", "available"}))
      ->capture_default_str();

  FmpiOptions fmpi;
  auto* fmpi_cmd = app.add_subcommand("fmpi", "Price a 36-month futures strip");
  fmpi_cmd->add_option("--prices", fmpi.prices, "CSV month,price with months 1..36")->required();
  fmpi_cmd->add_option("--rate", fmpi.rate, "Annual discount rate")->capture_default_str();

  ActivityOptions act;
  auto* activity_cmd = app.add_subcommand("activity", "Volume, open interest, R1 and R2 series");
  activity_cmd->add_option("--futures", act.futures, "Futures CSV")->required();
  activity_cmd->add_option("--contract", act.contracts, "Restrict to these contracts");

  EventOptions ev;
  auto* event_cmd = app.add_subcommand("event-study", "t statistics around auction dates");
  event_cmd->add_option("--futures", ev.futures, "Futures CSV")->required();
  event_cmd->add_option("--auctions", ev.auctions, "Auction records CSV supplying event dates");
  event_cmd->add_option("--events", ev.events, "CSV with a single date column");
  event_cmd->add_option("--market", ev.market, "Only auctions of this market (OMEL or PJM)");
  event_cmd->add_option("--contract", ev.contracts, "Restrict to these contracts");
  event_cmd->add_option("--measure", ev.measures, "volume, open_interest, r1, r2")->capture_default_str();
  event_cmd->add_option("--window", ev.window, "First and last trading-day offset")
      ->expected(2)
      ->capture_default_str();
  event_cmd->add_option("--variant", ev.variant, "welch or pooled")->capture_default_str();
  event_cmd->add_option("--alpha", ev.alpha, "Significance level for the tally")->capture_default_str();

  RegressOptions reg;
  auto* regress_cmd = app.add_subcommand("regress", "Pooled OLS with clustered standard errors");
  regress_cmd->add_option("--panel", reg.panel, "Panel CSV")->required();
  regress_cmd->add_option("--covariates", reg.covariates, "Covariate columns")
      ->delimiter(',')
      ->capture_default_str();
  regress_cmd->add_flag("--no-period-fe", reg.no_period_fe, "Drop period fixed effects");
  regress_cmd->add_flag("--unit-fe", reg.unit_fe, "Add unit fixed effects");

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a descending clock auction scenario");
  simulate_cmd->add_option("--scenario", sim.scenario, "Scenario JSON")->required();
  simulate_cmd->add_option("--seed", sim.seed, "Seed for stochastic strategies")->capture_default_str();
  simulate_cmd->add_option("--policy", sim.policy, "Undershoot policy override (prorata or priority)");
  simulate_cmd->add_option("--runs", sim.runs, "Independent replications")->capture_default_str();
  simulate_cmd->add_option("--threads", sim.threads, "Worker threads for replications")->capture_default_str();

  auto* report_cmd = app.add_subcommand("report", "Summarise outputs found in --out-dir as Markdown");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dsa: error[usage]: " << one_line(e.what()) << "\n";
    return kInvalidArguments;
  }

  const fs::path dir{out_dir};
  try {
    if (*ingest_cmd) return cmd_ingest(ingest, dir, out);
    if (*premium_cmd) return cmd_premium(prem, dir, out);
    if (*fmpi_cmd) return cmd_fmpi(fmpi, dir, out);
    if (*activity_cmd) return cmd_activity(act, dir, out);
    if (*event_cmd) return cmd_event_study(ev, dir, out);
    if (*regress_cmd) return cmd_regress(reg, dir, out);
    if (*simulate_cmd) return cmd_simulate(sim, dir, out);
    if (*report_cmd) return cmd_report(dir, out);
  } catch (const UsageError& e) {
    err << "dsa: error[usage]: " << one_line(e.what()) << "\n";
    return kInvalidArguments;
  } catch (const NumericalError& e) {
    err << "dsa: error[numerical]: " << one_line(e.what()) << "\n";
    return kNumericalError;
  } catch (const DataError& e) {
    err << "dsa: error[data]: " << one_line(e.what()) << "\n";
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "dsa: error[data]: " << one_line(e.what()) << "\n";
    return kDataError;
  } catch (const json::exception& e) {
    err << "dsa: error[data]: " << one_line(e.what()) << "\n";
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "dsa: error[data]: " << one_line(e.what()) << "\n";
    return kDataError;
  }
  err << "dsa: error[usage]: no subcommand\n";
  return kInvalidArguments;
}

}  // namespace dsa::cli
