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

#include "dsa/scenario.hpp"

#include <stdexcept>
#include <thread>

#include "dsa/strategies.hpp"

namespace dsa::auction {

using nlohmann::json;

UndershootPolicy parse_undershoot_policy(std::string_view text) {
  if (text == "prorata" || text == "previous_price_prorata") return UndershootPolicy::previous_price_prorata;
  if (text == "priority" || text == "previous_price_priority") return UndershootPolicy::previous_price_priority;
  throw std::invalid_argument("unknown undershoot policy '" + std::string(text) + "'");
}

std::string_view to_string(UndershootPolicy policy) {
  return policy == UndershootPolicy::previous_price_prorata ? "prorata" : "priority";
}

namespace {

double number(const json& object, const char* key) {
  if (!object.contains(key) || !object.at(key).is_number()) {
    throw std::invalid_argument(std::string("missing numeric field '") + key + "'");
  }
  return object.at(key).get<double>();
}

double number_or(const json& object, const char* key, double fallback) {
  return object.contains(key) ? number(object, key) : fallback;
}

}  // namespace

Scenario parse_scenario(const json& document) {
  if (!document.is_object() || !document.contains("config") || !document.contains("bidders")) {
    throw std::invalid_argument("scenario needs 'config' and 'bidders'");
  }
  const auto& c = document.at("config");
  Scenario s;
  s.config.target_quantity = number(c, "target_quantity");
  if (c.contains("price_schedule")) {
    s.config.price_schedule = c.at("price_schedule").get<std::vector<double>>();
    s.config.opening_price = s.config.price_schedule.empty() ? 0.0 : s.config.price_schedule.front();
  } else {
    s.config.opening_price = number(c, "opening_price");
    s.config.tick = number(c, "tick");
  }
  s.config.max_rounds = static_cast<int>(number_or(c, "max_rounds", s.config.max_rounds));
  if (c.contains("undershoot_policy")) {
    s.config.undershoot_policy = parse_undershoot_policy(c.at("undershoot_policy").get<std::string>());
  }
  s.config.validate();
  s.bidders = document.at("bidders");
  if (!s.bidders.is_array() || s.bidders.empty()) {
    throw std::invalid_argument("'bidders' must be a non-empty array");
  }
  make_bidders(s, 0);  // schema check
  return s;
}

std::vector<Bidder> make_bidders(const Scenario& scenario, std::uint64_t seed) {
  std::vector<Bidder> bidders;
  std::uint64_t index = 0;
  for (const auto& b : scenario.bidders) {
    if (!b.contains("id") || !b.contains("strategy")) {
      throw std::invalid_argument("each bidder needs 'id' and 'strategy'");
    }
    const auto id = b.at("id").get<std::string>();
    const auto kind = b.at("strategy").get<std::string>();
    std::unique_ptr<Strategy> strategy;
    if (kind == "constant") {
      strategy = std::make_unique<ConstantSupply>(number(b, "quantity"));
    } else if (kind == "steps") {
      std::vector<PriceStepSupply::Step> steps;
      for (const auto& st : b.at("steps")) steps.push_back({number(st, "min_price"), number(st, "quantity")});
      strategy = std::make_unique<PriceStepSupply>(std::move(steps));
    } else if (kind == "cost_threshold") {
      strategy = std::make_unique<CostThresholdExit>(number(b, "quantity"), number(b, "cost"));
    } else if (kind == "stochastic_exit") {
      strategy = std::make_unique<StochasticExit>(
          number(b, "quantity"), number_or(b, "exit_probability", 0.05),
          number_or(b, "reduce_probability", 0.2), number_or(b, "max_cut", 0.5),
          derive_seed(seed, index));
    } else {
      throw std::invalid_argument("unknown strategy '" + kind + "' for bidder " + id);
    }
    bidders.push_back({id, std::move(strategy)});
    ++index;
  }
  return bidders;
}

json to_json(const AuctionOutcome& outcome) {
  json awards = json::object();
  for (const auto& a : outcome.awards) awards[a.bidder_id] = a.quantity;
  json rounds = json::array();
  for (const auto& r : outcome.round_log) {
    json offers = json::object();
    for (const auto& o : r.offers) offers[o.bidder_id] = o.quantity;
    rounds.push_back({{"round", r.round}, {"price", r.price}, {"aggregate", r.aggregate}, {"offers", offers}});
  }
  return {{"clearing_price", outcome.clearing_price},
          {"awards", awards},
          {"rounds_used", outcome.rounds_used},
          {"undershoot", outcome.undershoot},
          {"round_log", rounds},
          {"events", outcome.events}};
}

std::vector<AuctionOutcome> run_replications(const Scenario& scenario, std::uint64_t seed,
                                             std::size_t runs, unsigned threads) {
  std::vector<AuctionOutcome> outcomes(runs);
  std::vector<std::exception_ptr> errors(runs);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < runs; k += stride) {
      try {
        auto bidders = make_bidders(scenario, derive_seed(seed, k));
        outcomes[k] = run_descending_clock(scenario.config, bidders);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, threads);
  if (n == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work, t, n);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outcomes;
}

}  // namespace dsa::auction
