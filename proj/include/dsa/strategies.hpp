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

#ifndef DSA_STRATEGIES_HPP
#define DSA_STRATEGIES_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dsa/clock_auction.hpp"

namespace dsa::auction {

/// Offers the same quantity at every price.
class ConstantSupply final : public Strategy {
 public:
  explicit ConstantSupply(double quantity);
  double offer(const RoundContext& context, const BidderState& self) override;
  std::string describe() const override;

 private:
  double quantity_;
};

/// Piecewise-constant supply curve: offers the quantity of the first step
/// whose `min_price` is at or below the announced price, 0 below every step.
class PriceStepSupply final : public Strategy {
 public:
  struct Step {
    double min_price;
    double quantity;
  };
  explicit PriceStepSupply(std::vector<Step> steps);
  double offer(const RoundContext& context, const BidderState& self) override;
  std::string describe() const override;

 private:
  std::vector<Step> steps_;
};

/// Full quantity while the price covers the bidder's cost, then exits.
class CostThresholdExit final : public Strategy {
 public:
  CostThresholdExit(double quantity, double cost);
  double offer(const RoundContext& context, const BidderState& self) override;
  std::string describe() const override;

 private:
  double quantity_;
  double cost_;
};

/// Random walk down: each round the bidder exits with `exit_probability`,
/// otherwise with `reduce_probability` it cuts its offer by a uniform
/// fraction in (0, max_cut].
class StochasticExit final : public Strategy {
 public:
  StochasticExit(double quantity, double exit_probability, double reduce_probability,
                 double max_cut, std::uint64_t seed);
  double offer(const RoundContext& context, const BidderState& self) override;
  std::string describe() const override;

 private:
  double quantity_;
  double exit_probability_;
  double reduce_probability_;
  double max_cut_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

/// Seed for bidder `index` of a run seeded with `run_seed` (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t index);

}  // namespace dsa::auction

#endif  // DSA_STRATEGIES_HPP
