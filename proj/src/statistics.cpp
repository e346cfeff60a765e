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

#include "dsa/statistics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "dsa/errors.hpp"

namespace dsa::stats {

double mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("variance needs at least two observations");
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values.size() - 1);
}

double sample_std(std::span<const double> values) { return std::sqrt(sample_variance(values)); }

double two_sided_p(double t, double df) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const double x = std::abs(t);
  if (!std::isfinite(df)) {
    return 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal_distribution<>{}, x));
  }
  return 2.0 * boost::math::cdf(boost::math::complement(boost::math::students_t_distribution<>{df}, x));
}

namespace {

double ratio(double diff, double se) {
  if (se > 0.0) return diff / se;
  if (diff == 0.0) return 0.0;
  return diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

}  // namespace

TTest welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("Welch test needs n >= 2 in each sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean(a);
  const double mb = mean(b);
  const double va = sample_variance(a) / na;
  const double vb = sample_variance(b) / nb;
  const double se2 = va + vb;
  double df = std::numeric_limits<double>::infinity();
  if (se2 > 0.0) df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  const double t = ratio(ma - mb, std::sqrt(se2));
  return {t, df, two_sided_p(t, df), ma, mb, a.size(), b.size()};
}

TTest pooled_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("pooled test needs n >= 2 in each sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean(a);
  const double mb = mean(b);
  const double df = na + nb - 2.0;
  const double pooled = ((na - 1.0) * sample_variance(a) + (nb - 1.0) * sample_variance(b)) / df;
  const double t = ratio(ma - mb, std::sqrt(pooled * (1.0 / na + 1.0 / nb)));
  return {t, df, two_sided_p(t, df), ma, mb, a.size(), b.size()};
}

DistributionStats distribution_stats(std::span<const double> values) {
  if (values.size() < 4) throw std::invalid_argument("distribution statistics need n >= 4");
  const double n = static_cast<double>(values.size());
  const double m = mean(values);
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : values) {
    const double d = v - m;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw NumericalError("constant series: zero variance, moments undefined");

  DistributionStats s{};
  s.n = values.size();
  s.mean = m;
  s.std = std::sqrt(m2 * n / (n - 1.0));
  if (m != 0.0) s.coefficient_of_variation = s.std / m;
  s.skewness = m3 / std::pow(m2, 1.5);
  s.kurtosis = m4 / (m2 * m2);
  const double excess = s.kurtosis - 3.0;
  s.jarque_bera = n / 6.0 * (s.skewness * s.skewness + excess * excess / 4.0);
  s.jarque_bera_p =
      boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<>{2.0}, s.jarque_bera));
  return s;
}

std::vector<PairwiseTest> equality_of_means(const std::vector<NamedSample>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("equality of means needs at least two groups");
  std::vector<PairwiseTest> out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const auto& a = groups[i].values;
      const auto& b = groups[j].values;
      if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("each group needs at least two observations");
      }
      if (sample_variance(a) == 0.0 && sample_variance(b) == 0.0) {
        throw NumericalError("groups " + groups[i].name + " and " + groups[j].name +
                             " both have zero variance");
      }
      auto test = welch_t(a, b);
      out.push_back({groups[i].name, groups[j].name, test, test.p_value < 0.05, test.p_value < 0.01});
    }
  }
  return out;
}

}  // namespace dsa::stats
