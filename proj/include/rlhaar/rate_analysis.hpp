#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rlhaar/mc.hpp"
#include "rlhaar/params.hpp"

namespace rlhaar {

/// One measured tail-error curve: strictly increasing cut sizes with their
/// Monte Carlo estimates, plus the experiment metadata needed to reproduce it.
struct RateCurve {
  struct Row {
    std::int64_t n;
    McEstimate estimate;
  };
  std::vector<Row> rows;
  double alpha = 0.0;
  std::string plan_description;
  int grid_level = 0;
  int max_level = 0;
};

/// Weighted least-squares fit of log e_n = log C + a log n + beta log log n
/// with the polynomial power a held fixed.  Weights come from the Monte Carlo
/// standard errors via the delta method (sigma_i = se_i / mean_i), and the
/// parameter covariance is (X^T W X)^{-1} -- no residual rescaling, so
/// doubling every input error doubles the reported error of beta and leaves
/// beta itself unchanged.
struct RateFit {
  double fixed_power = 0.0;
  double beta = 0.0;
  double beta_std_error = 0.0;
  double log_c = 0.0;
  double log_c_std_error = 0.0;
  double c = 0.0;
  double residual_norm = 0.0;       // sqrt of the weighted residual sum of squares
  Eigen::Matrix2d covariance;       // (log C, beta)
};

/// Rate model n^{-(alpha - 1/2)} sqrt(ln n) of the optimal n-term
/// approximation error (no constant); n >= 2 required.
double optimal_rate(const RLParams& params, std::int64_t n);

RateFit fit_log_rate(const RateCurve& curve, double fix_power);

/// Weighted residual norm with both the power and beta pinned (only the
/// intercept log C fitted); the comparison arm for beta = 1/2 model tests.
double restricted_residual_norm(const RateCurve& curve, double fix_power, double fixed_beta);

/// e_n / optimal_rate(n) for every curve row.
std::vector<std::pair<std::int64_t, double>> gap_ratio(const RateCurve& curve,
                                                       const RLParams& params);

/// Spearman rank correlation of `values` against their positions, with a
/// one-sided (positive-association) p-value: exact by permutation enumeration
/// for up to 9 values, the usual normal approximation beyond.
struct SpearmanResult {
  double rho = 0.0;
  double p_one_sided = 1.0;
};
SpearmanResult spearman_trend(const std::vector<double>& values);

}  // namespace rlhaar
