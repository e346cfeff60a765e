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

#include "dsa/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dsa::auction {

ConstantSupply::ConstantSupply(double quantity) : quantity_(quantity) {
  if (!(quantity >= 0.0)) throw std::invalid_argument("constant supply quantity must be non-negative");
}

double ConstantSupply::offer(const RoundContext&, const BidderState&) { return quantity_; }

std::string ConstantSupply::describe() const {
  std::ostringstream os;
  os << "constant(" << quantity_ << ")";
  return os.str();
}

PriceStepSupply::PriceStepSupply(std::vector<Step> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw std::invalid_argument("step supply needs at least one step");
  std::sort(steps_.begin(), steps_.end(),
            [](const Step& a, const Step& b) { return a.min_price > b.min_price; });
  for (const auto& s : steps_) {
    if (!(s.quantity >= 0.0)) throw std::invalid_argument("step quantities must be non-negative");
  }
}

double PriceStepSupply::offer(const RoundContext& context, const BidderState&) {
  for (const auto& s : steps_) {
    if (context.announced_price >= s.min_price) return s.quantity;
  }
  return 0.0;
}

std::string PriceStepSupply::describe() const {
  std::ostringstream os;
  os << "steps(";
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    os << (i ? "; " : "") << steps_[i].quantity << " if price>=" << steps_[i].min_price;
  }
  os << ")";
  return os.str();
}

CostThresholdExit::CostThresholdExit(double quantity, double cost) : quantity_(quantity), cost_(cost) {
  if (!(quantity >= 0.0)) throw std::invalid_argument("quantity must be non-negative");
}

double CostThresholdExit::offer(const RoundContext& context, const BidderState&) {
  return context.announced_price >= cost_ ? quantity_ : 0.0;
}

std::string CostThresholdExit::describe() const {
  std::ostringstream os;
  os << "cost_threshold(" << quantity_ << " while price>=" << cost_ << ")";
  return os.str();
}

StochasticExit::StochasticExit(double quantity, double exit_probability, double reduce_probability,
                               double max_cut, std::uint64_t seed)
    : quantity_(quantity), exit_probability_(exit_probability),
      reduce_probability_(reduce_probability), max_cut_(max_cut), seed_(seed), rng_(seed) {
  auto is_probability = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!(quantity >= 0.0)) throw std::invalid_argument("quantity must be non-negative");
  if (!is_probability(exit_probability) || !is_probability(reduce_probability)) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  if (!(max_cut > 0.0 && max_cut <= 1.0)) throw std::invalid_argument("max_cut must lie in (0, 1]");
}

double StochasticExit::offer(const RoundContext& context, const BidderState& self) {
  if (context.round == 1) return quantity_;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng_) < exit_probability_) return 0.0;
  if (unit(rng_) < reduce_probability_) {
    const double cut = max_cut_ * (1.0 - unit(rng_));  // (0, max_cut]
    return self.last_offered_quantity * (1.0 - cut);
  }
  return self.last_offered_quantity;
}

std::string StochasticExit::describe() const {
  std::ostringstream os;
  os << "stochastic_exit(" << quantity_ << ", exit=" << exit_probability_
     << ", reduce=" << reduce_probability_ << ", max_cut=" << max_cut_ << ", seed=" << seed_ << ")";
  return os.str();
}

std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t index) {
  std::uint64_t z = run_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace dsa::auction
