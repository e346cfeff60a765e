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

#ifndef DSA_TESTS_ORACLES_HPP
#define DSA_TESTS_ORACLES_HPP

// Reference computations written independently of the library: textbook
// formulas, explicit inverses and brute force.

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double var(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

struct Welch {
  double t;
  double df;
};

inline Welch welch(const std::vector<double>& a, const std::vector<double>& b) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double qa = var(a) / na;
  const double qb = var(b) / nb;
  return {(mean(a) - mean(b)) / std::sqrt(qa + qb),
          (qa + qb) * (qa + qb) / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0))};
}

struct Ols {
  Eigen::VectorXd beta;
  Eigen::VectorXd se;
  Eigen::MatrixXd cov;
  double rss;
  double r2;
  double rmse;
};

/// Normal equations with an explicit inverse and an explicitly summed
/// cluster sandwich, scaled by G/(G-1) * (n-1)/(n-K).
inline Ols clustered_ols(const Eigen::MatrixXd& xd, const Eigen::VectorXd& yd, const std::vector<int>& cluster,
                         int groups) {
  // Normal equations square the condition number, so work in extended precision.
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const Mat x = xd.cast<long double>();
  const Vec y = yd.cast<long double>();
  const auto n = x.rows();
  const auto k = x.cols();
  const Mat xtx_inv = (x.transpose() * x).inverse();
  const Vec beta = xtx_inv * (x.transpose() * y);
  const Vec u = y - x * beta;
  Mat meat = Mat::Zero(k, k);
  for (int g = 0; g < groups; ++g) {
    Vec s = Vec::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (cluster[static_cast<std::size_t>(i)] == g) s += x.row(i).transpose() * u(i);
    }
    meat += s * s.transpose();
  }
  const long double c = static_cast<long double>(groups) / (groups - 1.0L) * static_cast<long double>(n - 1) /
                        static_cast<long double>(n - k);
  const Mat cov = c * xtx_inv * meat * xtx_inv;
  const long double rss = u.squaredNorm();
  long double tss = 0.0L;
  const long double ybar = y.mean();
  for (Eigen::Index i = 0; i < n; ++i) tss += (y(i) - ybar) * (y(i) - ybar);

  Ols out;
  out.beta = beta.cast<double>();
  out.cov = cov.cast<double>();
  out.se = cov.diagonal().cwiseSqrt().cast<double>();
  out.rss = static_cast<double>(rss);
  out.r2 = static_cast<double>(1.0L - rss / tss);
  out.rmse = static_cast<double>(std::sqrt(rss / static_cast<long double>(n - k)));
  return out;
}

/// Present-value weighted strip by direct summation.
inline double fmpi(const std::vector<double>& prices, double rate) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 1; j <= prices.size(); ++j) {
    const double w = std::pow(1.0 + rate, -static_cast<double>(j) / 12.0);
    num += w * prices[j - 1];
    den += w;
  }
  return num / den;
}

/// Proportional rationing found by bisection on the common restored share.
inline std::vector<double> prorata_by_bisection(const std::vector<double>& previous,
                                                const std::vector<double>& current, double target) {
  auto total = [&](double share) {
    double s = 0.0;
    for (std::size_t i = 0; i < previous.size(); ++i) s += current[i] + share * (previous[i] - current[i]);
    return s;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) < target ? lo : hi) = mid;
  }
  const double share = 0.5 * (lo + hi);
  std::vector<double> out;
  for (std::size_t i = 0; i < previous.size(); ++i) out.push_back(current[i] + share * (previous[i] - current[i]));
  return out;
}

}  // namespace oracle

#endif  // DSA_TESTS_ORACLES_HPP
