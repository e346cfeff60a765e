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

#include "dsa/panel_regression.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <stdexcept>

#include "dsa/errors.hpp"
#include "dsa/statistics.hpp"

namespace dsa::panel {

double vol3y(const SpotPriceSeries& spot, const Date& auction_date) {
  const Date from = shift_years(auction_date, -3);
  std::vector<double> window;
  for (const auto& o : spot.observations()) {
    if (o.date >= from && o.date < auction_date) window.push_back(o.price);
  }
  if (window.size() < 2) {
    throw DataError("fewer than two spot prices in the three years before " + format_date(auction_date));
  }
  return stats::sample_std(window);
}

std::vector<double> standardize_by_group(std::span<const double> values,
                                         std::span<const std::string> groups) {
  if (values.size() != groups.size()) throw std::invalid_argument("values and group labels differ in length");
  std::map<std::string, std::vector<double>> members;
  for (std::size_t i = 0; i < values.size(); ++i) members[groups[i]].push_back(values[i]);
  std::map<std::string, std::pair<double, double>> moments;
  for (const auto& [name, v] : members) {
    if (v.size() < 2) throw std::invalid_argument("group " + name + " has fewer than two values");
    const double sd = stats::sample_std(v);
    if (!(sd > 0.0)) throw NumericalError("group " + name + " has zero variance");
    moments[name] = {stats::mean(v), sd};
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& [m, sd] = moments[groups[i]];
    out[i] = (values[i] - m) / sd;
  }
  return out;
}

std::vector<PanelObservation> load_panel_csv(std::istream& in) {
  static const std::vector<std::string_view> columns{"unit", "period", "y", "vol3y",
                                                     "startbidders", "wbidders", "pls"};
  std::size_t line_no = 0;
  const std::size_t width = csv::expect_header(in, columns, 1, line_no);
  std::vector<PanelObservation> panel;
  std::string line;
  while (csv::next_data_line(in, line, line_no)) {
    try {
      auto f = csv::split_row(line);
      if (f.size() != width) throw DataError("expected " + std::to_string(width) + " fields");
      PanelObservation obs;
      obs.unit = f[0];
      obs.period = static_cast<int>(csv::parse_integer(f[1], "period"));
      obs.y = csv::parse_double(f[2], "y");
      for (std::size_t c = 3; c < width; ++c) {
        if (f[c].empty()) continue;  // missing; caught when the column is used
        obs.covariates[std::string(columns[c])] = csv::parse_double(f[c], columns[c]);
      }
      panel.push_back(std::move(obs));
    } catch (const DataError& e) {
      throw DataError(e.what(), line_no);
    }
  }
  return panel;
}

std::vector<PanelObservation> load_panel_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return load_panel_csv(in);
}

Design build_design(const std::vector<PanelObservation>& panel, const FitSpec& spec) {
  std::set<std::pair<std::string, int>> keys;
  std::set<int> periods;
  std::set<std::string> units;
  for (const auto& o : panel) {
    if (!keys.insert({o.unit, o.period}).second) {
      throw DataError("duplicate observation for unit " + o.unit + " period " + std::to_string(o.period));
    }
    for (const auto& c : spec.covariates) {
      if (!o.covariates.count(c)) {
        throw DataError("observation " + o.unit + "/" + std::to_string(o.period) + " lacks covariate " + c);
      }
    }
    periods.insert(o.period);
    units.insert(o.unit);
  }
  std::vector<int> period_dummies;
  if (spec.period_fixed_effects && !periods.empty()) period_dummies.assign(std::next(periods.begin()), periods.end());
  std::vector<std::string> unit_dummies;
  if (spec.unit_fixed_effects && !units.empty()) unit_dummies.assign(std::next(units.begin()), units.end());

  Design d;
  d.names.push_back("constant");
  for (const auto& c : spec.covariates) d.names.push_back(c);
  d.fixed_effect_start = d.names.size();
  for (int p : period_dummies) d.names.push_back("period=" + std::to_string(p));
  for (const auto& u : unit_dummies) d.names.push_back("unit=" + u);

  const auto n = static_cast<Eigen::Index>(panel.size());
  const auto k = static_cast<Eigen::Index>(d.names.size());
  d.x = Eigen::MatrixXd::Zero(n, k);
  d.y.resize(n);
  std::map<std::string, int> cluster_of;
  for (const auto& u : units) cluster_of.emplace(u, static_cast<int>(cluster_of.size()));
  d.clusters = static_cast<int>(units.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& o = panel[static_cast<std::size_t>(i)];
    Eigen::Index col = 0;
    d.x(i, col++) = 1.0;
    for (const auto& c : spec.covariates) d.x(i, col++) = o.covariates.at(c);
    for (int p : period_dummies) d.x(i, col++) = o.period == p ? 1.0 : 0.0;
    for (const auto& u : unit_dummies) d.x(i, col++) = o.unit == u ? 1.0 : 0.0;
    d.y(i) = o.y;
    d.cluster.push_back(cluster_of.at(o.unit));
  }
  return d;
}

namespace {

std::string first_dependent_column(const Eigen::MatrixXd& x, const std::vector<std::string>& names) {
  for (Eigen::Index c = 1; c <= x.cols(); ++c) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x.leftCols(c));
    if (qr.rank() < c) return names[static_cast<std::size_t>(c - 1)];
  }
  return names.back();
}

}  // namespace

RegressionResult fit_design(const Design& d) {
  const Eigen::Index n = d.x.rows();
  const Eigen::Index k = d.x.cols();
  if (d.clusters < 2) throw NumericalError("clustered covariance needs at least two clusters");
  if (n <= k) {
    throw NumericalError("no residual degrees of freedom: " + std::to_string(n) + " observations, " +
                         std::to_string(k) + " regressors");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(d.x);
  if (qr.rank() < k) {
    throw NumericalError("rank-deficient design, column '" + first_dependent_column(d.x, d.names) +
                         "' is collinear with earlier columns");
  }
  const Eigen::VectorXd beta = qr.solve(d.y);
  const Eigen::VectorXd resid = d.y - d.x * beta;

  // (X'X)^-1 = P R^-1 R^-T P'
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd bread =
      qr.colsPermutation() * (r_inv * r_inv.transpose()) * qr.colsPermutation().transpose();

  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(d.clusters, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    scores.row(d.cluster[static_cast<std::size_t>(i)]) += d.x.row(i) * resid(i);
  }
  const Eigen::MatrixXd meat = scores.transpose() * scores;

  RegressionResult out;
  out.n = static_cast<std::size_t>(n);
  out.k_total = static_cast<std::size_t>(k);
  out.clusters = d.clusters;
  const double g = d.clusters;
  out.small_sample_factor = g / (g - 1.0) * static_cast<double>(n - 1) / static_cast<double>(n - k);
  out.covariance = out.small_sample_factor * bread * meat * bread;
  out.residuals = resid;
  out.rss = resid.squaredNorm();
  const double tss = (d.y.array() - d.y.mean()).matrix().squaredNorm();
  if (!(tss > 0.0)) throw NumericalError("dependent variable is constant");
  out.r_squared = 1.0 - out.rss / tss;
  out.adj_r_squared = 1.0 - (1.0 - out.r_squared) * static_cast<double>(n - 1) / static_cast<double>(n - k);
  out.rmse = std::sqrt(out.rss / static_cast<double>(n - k));

  for (Eigen::Index j = 0; j < k; ++j) {
    const double se = std::sqrt(std::max(0.0, out.covariance(j, j)));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double t = se > 0.0 ? beta(j) / se : nan;
    Coefficient c{d.names[static_cast<std::size_t>(j)], beta(j), se, t, se > 0.0 ? stats::two_sided_p(t, g - 1.0) : nan};
    if (static_cast<std::size_t>(j) < d.fixed_effect_start) {
      out.coefficients.push_back(c);
    } else {
      out.fixed_effects.push_back(c);
    }
  }
  return out;
}

RegressionResult fit_pooled_ols(const std::vector<PanelObservation>& panel, const FitSpec& spec) {
  return fit_design(build_design(panel, spec));
}

}  // namespace dsa::panel
