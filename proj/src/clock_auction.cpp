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

#include "dsa/clock_auction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dsa/errors.hpp"

namespace dsa::auction {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// Pushes the floating-point residue of a rationing onto the largest award so
// the total equals the target.
void absorb_residue(std::vector<double>& awards, double target) {
  if (awards.empty()) return;
  auto largest = std::max_element(awards.begin(), awards.end());
  *largest += target - sum(awards);
}

}  // namespace

void ClockAuctionConfig::validate() const {
  if (!(target_quantity > 0.0) || !std::isfinite(target_quantity)) {
    throw std::invalid_argument("target_quantity must be positive");
  }
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  if (!price_schedule.empty()) {
    for (std::size_t i = 0; i < price_schedule.size(); ++i) {
      if (!(price_schedule[i] > 0.0)) throw std::invalid_argument("scheduled prices must be positive");
      if (i > 0 && !(price_schedule[i] < price_schedule[i - 1])) {
        throw std::invalid_argument("scheduled prices must strictly decrease");
      }
    }
    return;
  }
  if (!(opening_price > 0.0) || !std::isfinite(opening_price)) {
    throw std::invalid_argument("opening_price must be positive");
  }
  if (!(tick > 0.0) || !std::isfinite(tick)) throw std::invalid_argument("tick must be positive");
}

double ClockAuctionConfig::price_for_round(int round) const {
  if (!price_schedule.empty()) {
    if (round < 1 || static_cast<std::size_t>(round) > price_schedule.size()) {
      throw NumericalError("price schedule exhausted at round " + std::to_string(round));
    }
    return price_schedule[static_cast<std::size_t>(round - 1)];
  }
  const double price = opening_price - tick * (round - 1);
  if (!(price > 0.0)) {
    throw NumericalError("announced price would reach zero at round " + std::to_string(round));
  }
  return price;
}

double AuctionOutcome::total_awarded() const {
  double total = 0.0;
  for (const auto& a : awards) total += a.quantity;
  return total;
}

double AuctionOutcome::award_of(const std::string& bidder_id) const {
  for (const auto& a : awards) {
    if (a.bidder_id == bidder_id) return a.quantity;
  }
  return 0.0;
}

std::vector<double> ration_undershoot(const std::vector<double>& previous,
                                      const std::vector<double>& current, double target,
                                      UndershootPolicy policy, std::vector<std::string>* events,
                                      const std::vector<std::string>* ids) {
  const std::size_t n = previous.size();
  const double need = target - sum(current);
  const double released = sum(previous) - sum(current);
  if (!(need > 0.0) || !(released >= need)) {
    throw NumericalError("undershoot rationing called without a bracketing pair of rounds");
  }
  std::vector<double> awards(current);
  if (policy == UndershootPolicy::previous_price_prorata) {
    const double fraction = need / released;
    for (std::size_t i = 0; i < n; ++i) awards[i] += (previous[i] - current[i]) * fraction;
  } else {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return previous[a] > previous[b]; });
    double remaining = need;
    for (std::size_t k = 0; k < n && remaining > 0.0; ++k) {
      const std::size_t i = order[k];
      const bool group_start = k == 0 || previous[order[k - 1]] != previous[i];
      if (events && ids && group_start) {
        // A tie matters only when the tied bidders cannot all be restored.
        std::size_t end = k;
        double group_reduction = 0.0;
        std::string names;
        while (end < n && previous[order[end]] == previous[i]) {
          group_reduction += previous[order[end]] - current[order[end]];
          names += (names.empty() ? "" : " before ") + (*ids)[order[end]];
          ++end;
        }
        if (end - k > 1 && group_reduction > remaining) {
          events->push_back("tie at quantity " + fmt(previous[i]) + " broken in bidder order: " + names);
        }
      }
      const double reduction = previous[i] - current[i];
      if (reduction <= 0.0) continue;
      const double restored = std::min(reduction, remaining);
      awards[i] += restored;
      remaining -= restored;
    }
  }
  absorb_residue(awards, target);
  return awards;
}

AuctionOutcome run_descending_clock(const ClockAuctionConfig& config, std::vector<Bidder>& bidders) {
  config.validate();
  if (bidders.empty()) throw std::invalid_argument("at least one bidder is required");
  std::set<std::string> seen;
  for (const auto& b : bidders) {
    if (!b.strategy) throw std::invalid_argument("bidder " + b.id + " has no strategy");
    if (!seen.insert(b.id).second) throw std::invalid_argument("duplicate bidder id " + b.id);
  }

  const std::size_t n = bidders.size();
  const double target = config.target_quantity;
  const double tolerance = 1e-12 * target;

  std::vector<BidderState> states;
  std::vector<std::string> ids;
  for (const auto& b : bidders) {
    states.push_back({b.id, kInf, true});
    ids.push_back(b.id);
  }

  AuctionOutcome outcome;
  std::vector<double> previous_offers;
  double previous_aggregate = kInf;

  for (int round = 1;; ++round) {
    if (round > config.max_rounds) {
      throw NumericalError("max_rounds " + std::to_string(config.max_rounds) +
                           " exhausted without closing; final aggregate " + fmt(previous_aggregate));
    }
    const double price = config.price_for_round(round);
    const std::size_t active =
        static_cast<std::size_t>(std::count_if(states.begin(), states.end(), [](const BidderState& s) { return s.active; }));
    const RoundContext context{round, price, target, previous_aggregate, active};

    std::vector<double> offers(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto& state = states[i];
      if (!state.active) continue;
      double q = bidders[i].strategy->offer(context, state);
      if (!std::isfinite(q) || q < 0.0) {
        outcome.events.push_back("round " + std::to_string(round) + ": " + state.bidder_id +
                                 " offered " + fmt(q) + ", clamped to 0");
        q = 0.0;
      } else if (q > state.last_offered_quantity) {
        outcome.events.push_back("round " + std::to_string(round) + ": " + state.bidder_id +
                                 " offered " + fmt(q) + " above previous " +
                                 fmt(state.last_offered_quantity) + ", clamped");
        q = state.last_offered_quantity;
      }
      offers[i] = q;
    }

    const double aggregate = sum(offers);
    RoundRecord record{round, price, {}, aggregate};
    for (std::size_t i = 0; i < n; ++i) record.offers.push_back({ids[i], offers[i]});
    outcome.round_log.push_back(std::move(record));

    if (round == 1 && aggregate < target - tolerance) {
      throw DataError("undersubscribed at opening: aggregate " + fmt(aggregate) + " below target " +
                      fmt(target));
    }

    for (std::size_t i = 0; i < n; ++i) {
      auto& state = states[i];
      if (!state.active) continue;
      state.last_offered_quantity = offers[i];
      if (offers[i] == 0.0) {
        state.active = false;
        outcome.events.push_back("round " + std::to_string(round) + ": " + state.bidder_id + " exits");
      }
    }

    const bool exact = std::abs(aggregate - target) <= tolerance;
    if (exact || aggregate < target) {
      std::vector<double> awards;
      if (exact) {
        outcome.clearing_price = price;
        awards = offers;
      } else {
        outcome.undershoot = true;
        outcome.clearing_price = config.price_for_round(round - 1);
        awards = ration_undershoot(previous_offers, offers, target, config.undershoot_policy,
                                   &outcome.events, &ids);
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (awards[i] > 0.0) outcome.awards.push_back({ids[i], awards[i]});
      }
      outcome.rounds_used = round;
      return outcome;
    }

    previous_offers = std::move(offers);
    previous_aggregate = aggregate;
  }
}

}  // namespace dsa::auction
