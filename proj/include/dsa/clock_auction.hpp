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

#ifndef DSA_CLOCK_AUCTION_HPP
#define DSA_CLOCK_AUCTION_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace dsa::auction {

/// How awards are fixed when supply drops below target between two rounds.
/// Both ration at the previous round's price.
enum class UndershootPolicy {
  /// Every bidder gets back the same fraction of its last reduction.
  previous_price_prorata,
  /// Reductions are restored in full, largest previous offer first.
  previous_price_priority,
};

struct ClockAuctionConfig {
  double target_quantity = 0.0;
  double opening_price = 0.0;
  /// Fixed decrement between rounds, used when `price_schedule` is empty.
  double tick = 0.0;
  /// Explicit announced price per round (round 1 first). Overrides the tick.
  std::vector<double> price_schedule;
  int max_rounds = 500;
  UndershootPolicy undershoot_policy = UndershootPolicy::previous_price_prorata;

  /// Throws std::invalid_argument on a bad configuration.
  void validate() const;
  /// Announced price for a 1-based round. Throws NumericalError once the
  /// schedule runs out or the price would no longer be positive.
  double price_for_round(int round) const;
};

struct BidderState {
  std::string bidder_id;
  /// Offer from the previous round; +inf before round 1.
  double last_offered_quantity;
  bool active = true;
};

/// What every bidder sees when asked for an offer.
struct RoundContext {
  int round;
  double announced_price;
  double target_quantity;
  /// Aggregate offered in the previous round; +inf in round 1.
  double previous_aggregate;
  std::size_t active_bidders;
};

/// Supply behaviour of one bidder. Implementations may keep state and draw
/// random numbers, but must be deterministic given their seed.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual double offer(const RoundContext& context, const BidderState& self) = 0;
  virtual std::string describe() const = 0;
};

struct Bidder {
  std::string id;
  std::unique_ptr<Strategy> strategy;
};

struct Offer {
  std::string bidder_id;
  double quantity;
};

struct RoundRecord {
  int round;
  double price;
  std::vector<Offer> offers;
  double aggregate;
};

struct Award {
  std::string bidder_id;
  double quantity;
};

struct AuctionOutcome {
  double clearing_price = 0.0;
  /// Only bidders with a positive award, in bidder order.
  std::vector<Award> awards;
  int rounds_used = 0;
  bool undershoot = false;
  std::vector<RoundRecord> round_log;
  /// Clamped offers, forced exits and tie breaks, in the order they happened.
  std::vector<std::string> events;

  double total_awarded() const;
  double award_of(const std::string& bidder_id) const;
};

/// Simultaneous descending clock: each round the auctioneer announces a lower
/// price; every bidder states a quantity no larger than its previous one, and
/// a zero offer is final. The auction closes in the first round where the
/// aggregate offer is at or below target.
AuctionOutcome run_descending_clock(const ClockAuctionConfig& config, std::vector<Bidder>& bidders);

/// Awards that sum to `target` when the aggregate falls from `previous` to
/// `current` offers (previous total > target > current total).
std::vector<double> ration_undershoot(const std::vector<double>& previous,
                                      const std::vector<double>& current, double target,
                                      UndershootPolicy policy, std::vector<std::string>* events = nullptr,
                                      const std::vector<std::string>* ids = nullptr);

}  // namespace dsa::auction

#endif  // DSA_CLOCK_AUCTION_HPP
