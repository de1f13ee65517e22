#include "rlhaar/basis.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rlhaar {

namespace {

constexpr int kMaxLevel = 40;

// ---- compensated (double-double) helpers -----------------------------------
//
// Only what the three-term plus-power sums need.  All operations assume
// round-to-nearest doubles and no FP contraction (enforced project-wide).

struct DD {
  double hi;
  double lo;
};

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b|
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD dd_add(const DD& x, const DD& y) {
  const DD s = two_sum(x.hi, y.hi);
  return quick_two_sum(s.hi, s.lo + x.lo + y.lo);
}

// x^{3/2} = x * sqrt(x) with a compensated low part; x <= 0 maps to 0.
inline DD pow32_dd(double x) {
  if (x <= 0.0) return {0.0, 0.0};
  const double s = std::sqrt(x);
  const double e = std::fma(-s, s, x) / (2.0 * s);  // sqrt(x) = s + e + O(eps^2)
  const double p = x * s;
  const double p_lo = std::fma(x, s, -p) + x * e;
  return quick_two_sum(p, p_lo);
}

inline double pow_plus(double x, double alpha) {
  return x > 0.0 ? std::pow(x, alpha) : 0.0;
}

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNode[8] = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
    0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
    0.94457502307323258, 0.98940093499164993};
constexpr double kGlWeight[8] = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
    0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
    0.06225352393864789, 0.02715245941175409};

}  // namespace

// ---- BasisIndex -------------------------------------------------------------

BasisIndex BasisIndex::haar(int level, std::int64_t shift) {
  if (level < 0 || level > kMaxLevel) {
    throw std::invalid_argument("BasisIndex::haar: level out of range [0, " +
                                std::to_string(kMaxLevel) + "]");
  }
  if (shift < 0 || shift >= (std::int64_t{1} << level)) {
    throw std::invalid_argument("BasisIndex::haar: shift must satisfy 0 <= k < 2^j");
  }
  return BasisIndex(level, shift);
}

int BasisIndex::level() const {
  if (is_drift()) throw std::logic_error("BasisIndex: drift term has no level");
  return level_;
}

std::int64_t BasisIndex::shift() const {
  if (is_drift()) throw std::logic_error("BasisIndex: drift term has no shift");
  return shift_;
}

std::uint64_t BasisIndex::key() const {
  if (is_drift()) return 0;
  return (std::uint64_t{1} << level_) + static_cast<std::uint64_t>(shift_);
}

BasisIndex BasisIndex::from_key(std::uint64_t key) {
  if (key == 0) return drift();
  int level = 63 - std::countl_zero(key);
  return haar(level, static_cast<std::int64_t>(key - (std::uint64_t{1} << level)));
}

// ---- Haar function ----------------------------------------------------------

double eval_haar(int level, std::int64_t shift, double t) {
  (void)BasisIndex::haar(level, shift);  // range validation
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("eval_haar: t must lie in [0,1]");
  }
  const double left = std::ldexp(static_cast<double>(shift), -level);        // 2k/2^{j+1}
  const double mid = std::ldexp(static_cast<double>(2 * shift + 1), -(level + 1));
  const double right = std::ldexp(static_cast<double>(shift + 1), -level);   // (2k+2)/2^{j+1}
  if (t < left || t >= right) return 0.0;
  const double amplitude = std::sqrt(std::ldexp(1.0, level));
  return t < mid ? amplitude : -amplitude;
}

// ---- critical-case kernel H -------------------------------------------------

namespace detail {

double eval_H_three_term(double t) {
  if (t <= 0.0) return 0.0;
  const auto p32 = [](double x) { return x > 0.0 ? x * std::sqrt(x) : 0.0; };
  return (p32(t) + p32(t - 2.0)) - 2.0 * p32(t - 1.0);
}

double eval_H_integral_tail(double t) {
  // H(t) = (3/2) Int_{t-1}^{t} (sqrt(x) - sqrt(x-1)) dx for t >= 2; the
  // integrand is rationalized to 1/(sqrt(x) + sqrt(x-1)), which is free of
  // cancellation, and the integral is taken by Gauss-Legendre.  The rule is
  // exact to machine precision once t-2 exceeds the interval half-width.
  if (t < 2.0) throw std::invalid_argument("eval_H_integral_tail: t must be >= 2");
  const double center = t - 0.5;
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double d = 0.5 * kGlNode[i];
    const double xp = center + d;
    const double xm = center - d;
    acc += kGlWeight[i] * (1.0 / (std::sqrt(xp) + std::sqrt(xp - 1.0)) +
                           1.0 / (std::sqrt(xm) + std::sqrt(xm - 1.0)));
  }
  return 0.75 * 0.5 * acc;  // (3/2) * half-width * sum
}

}  // namespace detail

double eval_H(double t) {
  if (t <= 0.0) return 0.0;
  if (t <= detail::kEvalHBranchThreshold) return detail::eval_H_three_term(t);
  return detail::eval_H_integral_tail(t);
}

double eval_H_asymptotic(double t) {
  if (!(t >= 2.0)) throw std::invalid_argument("eval_H_asymptotic: t must be >= 2");
  return 0.75 / std::sqrt(t);
}

double base_kernel(const RLParams& params, double u) {
  if (params.is_critical()) return eval_H(u);
  const double alpha = params.alpha;
  // Summing the outer terms first makes the hat function (alpha = 1) vanish
  // exactly for u >= 2: u, u-1, u-2 are exact by Sterbenz and the partial sum
  // 2(u-1) is representable.
  return (pow_plus(u, alpha) + pow_plus(u - 2.0, alpha)) - 2.0 * pow_plus(u - 1.0, alpha);
}

// ---- integrated Haar functions ----------------------------------------------

double integrated_haar(const RLParams& params, int level, std::int64_t shift, double t) {
  (void)BasisIndex::haar(level, shift);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("integrated_haar: t must lie in [0,1]");
  }
  const double amplitude = std::sqrt(std::ldexp(1.0, level)) / params.gamma_alpha_plus_1;
  if (params.is_critical()) {
    const double a = t - std::ldexp(static_cast<double>(2 * shift), -(level + 1));
    const double b = t - std::ldexp(static_cast<double>(2 * shift + 1), -(level + 1));
    const double c = t - std::ldexp(static_cast<double>(2 * shift + 2), -(level + 1));
    DD sum = dd_add(pow32_dd(a), pow32_dd(c));
    const DD mid = pow32_dd(b);
    sum = dd_add(sum, DD{-2.0 * mid.hi, -2.0 * mid.lo});
    return amplitude * (sum.hi + sum.lo);
  }
  const double u = std::ldexp(t, level + 1) - static_cast<double>(2 * shift);
  return amplitude * std::exp2(-(level + 1) * params.alpha) * base_kernel(params, u);
}

double drift_term(const RLParams& params, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("drift_term: t must lie in [0,1]");
  }
  return pow_plus(t, params.alpha) / params.gamma_alpha_plus_1;
}

double eval_term(const RLParams& params, const BasisIndex& index, double t) {
  if (index.is_drift()) return drift_term(params, t);
  return integrated_haar(params, index.level(), index.shift(), t);
}

// ---- gamma ------------------------------------------------------------------

double gamma_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument("gamma_positive: argument must be positive and finite");
  }
  const double twice = 2.0 * x;
  if (twice == std::floor(twice) && twice < 340.0) {
    const bool half_integer = std::floor(x) != x;
    double g = half_integer ? std::sqrt(std::numbers::pi) : 1.0;
    for (double y = half_integer ? 0.5 : 1.0; y < x - 0.25; y += 1.0) g *= y;
    return g;
  }
  return std::tgamma(x);
}

RLParams RLParams::make(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 0.5)) {
    throw std::invalid_argument("RLParams: alpha must be finite and > 1/2");
  }
  return RLParams{alpha, gamma_positive(alpha), gamma_positive(alpha + 1.0)};
}

}  // namespace rlhaar
