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

#ifndef DSA_SCENARIO_HPP
#define DSA_SCENARIO_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dsa/clock_auction.hpp"

namespace dsa::auction {

/// Scenario file layout:
///
///   {
///     "config":  {"target_quantity": 10, "opening_price": 100, "tick": 10,
///                 "max_rounds": 200, "undershoot_policy": "prorata"},
///     "bidders": [{"id": "A", "strategy": "constant", "quantity": 5},
///                 {"id": "B", "strategy": "steps",
///                  "steps": [{"min_price": 80, "quantity": 6}, {"min_price": 0, "quantity": 4}]},
///                 {"id": "C", "strategy": "cost_threshold", "quantity": 5, "cost": 60},
///                 {"id": "D", "strategy": "stochastic_exit", "quantity": 5,
///                  "exit_probability": 0.05, "reduce_probability": 0.2, "max_cut": 0.5}]
///   }
///
/// "price_schedule" may replace opening_price/tick.
struct Scenario {
  ClockAuctionConfig config;
  nlohmann::json bidders;
};

UndershootPolicy parse_undershoot_policy(std::string_view text);
std::string_view to_string(UndershootPolicy policy);

/// Throws std::invalid_argument on schema problems.
Scenario parse_scenario(const nlohmann::json& document);

/// Instantiates strategies; stochastic bidders are seeded from `seed` and
/// their position in the list.
std::vector<Bidder> make_bidders(const Scenario& scenario, std::uint64_t seed);

nlohmann::json to_json(const AuctionOutcome& outcome);

/// Independent replications of one scenario. Replication `k` uses
/// derive_seed(seed, k), so results do not depend on `threads`.
std::vector<AuctionOutcome> run_replications(const Scenario& scenario, std::uint64_t seed,
                                             std::size_t runs, unsigned threads = 1);

}  // namespace dsa::auction

#endif  // DSA_SCENARIO_HPP
