#include "rlhaar/rate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace rlhaar {

namespace {

struct Design {
  Eigen::MatrixXd x;       // [1, log log n]
  Eigen::VectorXd y;       // log mean - a log n
  Eigen::VectorXd weight;  // 1 / sigma^2
};

Design build_design(const RateCurve& curve, double fix_power) {
  const std::int64_t m = static_cast<std::int64_t>(curve.rows.size());
  if (m < 4) throw std::invalid_argument("fit_log_rate: need at least 4 curve rows");
  Design d;
  d.x.resize(m, 2);
  d.y.resize(m);
  d.weight.resize(m);
  bool any_zero_se = false;
  bool any_positive_se = false;
  for (std::int64_t i = 0; i < m; ++i) {
    const auto& row = curve.rows[i];
    if (row.n < 3) throw std::invalid_argument("fit_log_rate: all cuts must satisfy n >= 3");
    if (i > 0 && row.n <= curve.rows[i - 1].n) {
      throw std::invalid_argument("fit_log_rate: cuts must be strictly increasing");
    }
    if (!(row.estimate.mean > 0.0)) {
      throw std::invalid_argument("fit_log_rate: estimates must be positive");
    }
    const double log_n = std::log(static_cast<double>(row.n));
    d.x(i, 0) = 1.0;
    d.x(i, 1) = std::log(log_n);
    d.y(i) = std::log(row.estimate.mean) - fix_power * log_n;
    const double sigma = row.estimate.std_error / row.estimate.mean;
    (sigma > 0.0 ? any_positive_se : any_zero_se) = true;
    d.weight(i) = sigma > 0.0 ? 1.0 / (sigma * sigma) : 1.0;
  }
  if (any_zero_se && any_positive_se) {
    throw std::invalid_argument("fit_log_rate: mixing zero and positive std errors");
  }
  return d;
}

}  // namespace

double optimal_rate(const RLParams& params, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("optimal_rate: n must be >= 2");
  const double nd = static_cast<double>(n);
  return std::pow(nd, -(params.alpha - 0.5)) * std::sqrt(std::log(nd));
}

RateFit fit_log_rate(const RateCurve& curve, double fix_power) {
  const Design d = build_design(curve, fix_power);
  const Eigen::MatrixXd xw = d.weight.asDiagonal() * d.x;
  const Eigen::Matrix2d normal = d.x.transpose() * xw;
  // log n and log log n are nearly collinear; an outright singular system
  // means the cut grid cannot identify beta.
  const double det = normal.determinant();
  if (!(std::abs(det) > 1e-12 * normal(0, 0) * normal(1, 1))) {
    throw std::invalid_argument("fit_log_rate: degenerate design matrix");
  }
  const Eigen::Matrix2d cov = normal.inverse();
  const Eigen::Vector2d coef = cov * (xw.transpose() * d.y);

  RateFit fit;
  fit.fixed_power = fix_power;
  fit.log_c = coef(0);
  fit.beta = coef(1);
  fit.c = std::exp(coef(0));
  fit.covariance = cov;
  fit.log_c_std_error = std::sqrt(cov(0, 0));
  fit.beta_std_error = std::sqrt(cov(1, 1));
  const Eigen::VectorXd residual = d.y - d.x * coef;
  fit.residual_norm = std::sqrt(residual.cwiseProduct(d.weight.cwiseProduct(residual)).sum());
  return fit;
}

double restricted_residual_norm(const RateCurve& curve, double fix_power, double fixed_beta) {
  const Design d = build_design(curve, fix_power);
  const Eigen::VectorXd shifted = d.y - fixed_beta * d.x.col(1);
  const double log_c = d.weight.dot(shifted) / d.weight.sum();
  const Eigen::VectorXd residual = shifted.array() - log_c;
  return std::sqrt(residual.cwiseProduct(d.weight.cwiseProduct(residual)).sum());
}

std::vector<std::pair<std::int64_t, double>> gap_ratio(const RateCurve& curve,
                                                       const RLParams& params) {
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(curve.rows.size());
  for (const auto& row : curve.rows) {
    out.emplace_back(row.n, row.estimate.mean / optimal_rate(params, row.n));
  }
  return out;
}

namespace {

std::vector<double> ranks_of(const std::vector<double>& values) {
  const std::size_t m = values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(m);
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i;
    while (j + 1 < m && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;  // average rank for ties
    for (std::size_t l = i; l <= j; ++l) ranks[order[l]] = shared;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double m = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= m;
  mb /= m;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

SpearmanResult spearman_trend(const std::vector<double>& values) {
  const std::size_t m = values.size();
  if (m < 3) throw std::invalid_argument("spearman_trend: need at least 3 values");
  std::vector<double> positions(m);
  std::iota(positions.begin(), positions.end(), 1.0);
  const std::vector<double> ranks = ranks_of(values);
  const double rho = pearson(positions, ranks);

  SpearmanResult result;
  result.rho = rho;
  if (m <= 9) {
    // Exact null distribution: every ordering of the ranks is equally likely.
    std::vector<double> perm = ranks;
    std::sort(perm.begin(), perm.end());
    std::int64_t total = 0;
    std::int64_t at_least = 0;
    do {
      ++total;
      if (pearson(positions, perm) >= rho - 1e-12) ++at_least;
    } while (std::next_permutation(perm.begin(), perm.end()));
    result.p_one_sided = static_cast<double>(at_least) / static_cast<double>(total);
  } else {
    const double z = rho * std::sqrt(static_cast<double>(m - 1));
    result.p_one_sided = 0.5 * std::erfc(z / std::sqrt(2.0));
  }
  return result;
}

}  // namespace rlhaar
