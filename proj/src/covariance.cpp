#include "rlhaar/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rlhaar/basis.hpp"

namespace rlhaar {

namespace {

// Tanh-sinh quadrature of f over (0, m).  Nodes u = m/2 (1 + tanh(pi/2 sinh x))
// cluster double-exponentially at both endpoints, which tames the
// (m - u)^{alpha-1} singularity for every alpha > 1/2.  Levels are doubled
// until two successive estimates agree to `tol`.
template <typename F>
double tanh_sinh(const F& f, double m, double tol) {
  constexpr double kHalfPi = 1.5707963267948966;
  constexpr double kXMax = 3.8;  // weights below ~1e-17 beyond this
  const double half = 0.5 * m;

  const auto node_weight = [&](double x, double& u, double& w) {
    const double sh = std::sinh(x);
    const double ch = std::cosh(x);
    const double th = std::tanh(kHalfPi * sh);
    const double sech = 1.0 / std::cosh(kHalfPi * sh);
    u = half * (1.0 + th);
    w = half * kHalfPi * ch * sech * sech;
  };

  double h = 1.0;
  double u, w;
  node_weight(0.0, u, w);
  double sum = f(u) * w;
  for (double x = h; x <= kXMax; x += h) {
    node_weight(x, u, w);
    if (u > 0.0 && u < m) sum += f(u) * w;
    node_weight(-x, u, w);
    if (u > 0.0 && u < m) sum += f(u) * w;
  }
  double estimate = h * sum;

  for (int level = 1; level <= 10; ++level) {
    h *= 0.5;
    for (double x = h; x <= kXMax; x += 2.0 * h) {  // new midpoints only
      node_weight(x, u, w);
      if (u > 0.0 && u < m) sum += f(u) * w;
      node_weight(-x, u, w);
      if (u > 0.0 && u < m) sum += f(u) * w;
    }
    const double next = h * sum;
    if (level >= 2 && std::abs(next - estimate) <= tol) return next;
    estimate = next;
  }
  return estimate;
}

}  // namespace

double exact_covariance(const RLParams& params, double s, double t) {
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("exact_covariance: s,t must lie in [0,1]");
  }
  const double inv_gamma_sq = 1.0 / (params.gamma_alpha * params.gamma_alpha);
  if (s == t) {
    const double p = 2.0 * params.alpha - 1.0;
    return std::pow(t, p) / p * inv_gamma_sq;
  }
  const double m = std::min(s, t);
  if (m == 0.0) return 0.0;
  const double e = params.alpha - 1.0;
  const auto integrand = [&](double u) {
    return std::pow(t - u, e) * std::pow(s - u, e);
  };
  return inv_gamma_sq * tanh_sinh(integrand, m, 1e-12);
}

double basis_covariance(const RLParams& params, double s, double t, int max_level) {
  if (max_level < 0) throw std::invalid_argument("basis_covariance: max_level must be >= 0");
  double total = drift_term(params, s) * drift_term(params, t);
  for (int j = 0; j <= max_level; ++j) {
    double level_sum = 0.0;
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      level_sum += integrated_haar(params, j, k, s) * integrated_haar(params, j, k, t);
    }
    total += level_sum;
  }
  return total;
}

}  // namespace rlhaar
