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

#ifndef DSA_STATISTICS_HPP
#define DSA_STATISTICS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dsa::stats {

double mean(std::span<const double> values);

/// Sample variance, divisor n - 1.
double sample_variance(std::span<const double> values);
double sample_std(std::span<const double> values);

/// Two-sided p-value of a Student t statistic. Infinite `df` uses the normal.
double two_sided_p(double t, double df);

struct TTest {
  double t;
  double df;
  double p_value;
  double mean_a;
  double mean_b;
  std::size_t n_a;
  std::size_t n_b;
};

/// Welch two-sample t test of mean(a) - mean(b) with Welch-Satterthwaite
/// degrees of freedom. Both samples need n >= 2. When both variances are
/// zero the statistic is 0 for equal means and +-inf otherwise.
TTest welch_t(std::span<const double> a, std::span<const double> b);

/// Equal-variance (pooled) two-sample t test, df = n_a + n_b - 2.
TTest pooled_t(std::span<const double> a, std::span<const double> b);

/// Moment summary. Skewness, kurtosis and Jarque-Bera use population moments
/// (divisor n); `std` uses divisor n - 1.
struct DistributionStats {
  std::size_t n;
  double mean;
  double std;
  /// std / mean; empty when the mean is zero.
  std::optional<double> coefficient_of_variation;
  double skewness;
  /// Raw (not excess) kurtosis: 3 for a normal.
  double kurtosis;
  /// n/6 * (S^2 + (K - 3)^2 / 4)
  double jarque_bera;
  /// Upper tail of chi-square(2) at `jarque_bera`.
  double jarque_bera_p;
};

/// Throws std::invalid_argument for n < 4 and NumericalError for a constant
/// series (moments undefined).
DistributionStats distribution_stats(std::span<const double> values);

struct NamedSample {
  std::string name;
  std::vector<double> values;
};

struct PairwiseTest {
  std::string first;
  std::string second;
  TTest test;
  bool reject_05;
  bool reject_01;
};

/// Welch t test for every pair of groups, in input order (0-1, 0-2, ..., 1-2, ...).
/// Throws NumericalError when both groups of a pair have zero variance.
std::vector<PairwiseTest> equality_of_means(const std::vector<NamedSample>& groups);

}  // namespace dsa::stats

#endif  // DSA_STATISTICS_HPP
