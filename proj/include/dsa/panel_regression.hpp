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

#ifndef DSA_PANEL_REGRESSION_HPP
#define DSA_PANEL_REGRESSION_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dsa/dates.hpp"
#include "dsa/market_data.hpp"

namespace dsa::panel {

/// Sample standard deviation (divisor n - 1) of daily spot prices in the
/// three years before the auction, [auction_date - 3y, auction_date).
double vol3y(const SpotPriceSeries& spot, const Date& auction_date);

/// Within-group z-scores, (v - group mean) / group std with divisor n - 1.
std::vector<double> standardize_by_group(std::span<const double> values,
                                         std::span<const std::string> groups);

struct PanelObservation {
  std::string unit;
  int period = 0;
  double y = 0.0;
  /// Keyed by column name: vol3y, startbidders, wbidders, pls.
  std::map<std::string, double> covariates;
};

/// `unit,period,y,vol3y,startbidders,wbidders[,pls]`
std::vector<PanelObservation> load_panel_csv(std::istream& in);
std::vector<PanelObservation> load_panel_csv(const std::filesystem::path& path);

struct FitSpec {
  std::vector<std::string> covariates{"vol3y", "startbidders"};
  /// One dummy per period except the earliest.
  bool period_fixed_effects = true;
  /// One dummy per unit except the first in sorted order.
  bool unit_fixed_effects = false;
};

/// Regressors in column order: constant, covariates, period dummies, unit
/// dummies. `cluster` maps each row to its cross-section unit.
struct Design {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> names;
  std::vector<int> cluster;
  int clusters = 0;
  std::size_t fixed_effect_start = 0;
};

/// Throws DataError for duplicate (unit, period) pairs or missing covariates.
Design build_design(const std::vector<PanelObservation>& panel, const FitSpec& spec);

struct Coefficient {
  std::string name;
  double estimate;
  double std_error;
  double t_stat;
  double p_value;
};

struct RegressionResult {
  /// Constant and covariates.
  std::vector<Coefficient> coefficients;
  std::vector<Coefficient> fixed_effects;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double rss = 0.0;
  double rmse = 0.0;
  std::size_t n = 0;
  std::size_t k_total = 0;
  int clusters = 0;
  /// G/(G-1) * (n-1)/(n-K) applied to the sandwich.
  double small_sample_factor = 1.0;
  Eigen::MatrixXd covariance;
  Eigen::VectorXd residuals;
};

/// Pooled OLS by column-pivoted QR with cluster-robust (by unit) sandwich
/// covariance. t statistics use G - 1 degrees of freedom. Throws
/// NumericalError on rank deficiency (naming the first dependent column),
/// fewer than two clusters, or no residual degrees of freedom.
RegressionResult fit_pooled_ols(const std::vector<PanelObservation>& panel, const FitSpec& spec);

/// Same estimator on an explicit design.
RegressionResult fit_design(const Design& design);

}  // namespace dsa::panel

#endif  // DSA_PANEL_REGRESSION_HPP
