#pragma once

#include <cstdint>
#include <compare>

#include "rlhaar/params.hpp"

namespace rlhaar {

/// Identifies one term of the Haar expansion of R^alpha: either the drift
/// term (coefficient function t^alpha / Gamma(alpha+1)) or the integrated
/// Haar function with level j >= 0 and shift 0 <= k < 2^j.
///
/// Every index owns a stable 64-bit key: 0 for the drift, 2^j + k for a Haar
/// pair.  Keys enumerate the natural order (drift first, then levels
/// ascending, shifts ascending within a level) and never depend on any
/// truncation plan, so Gaussian coefficients keyed by them stay attached to
/// their basis function under rearrangement.
class BasisIndex {
 public:
  static BasisIndex drift() { return BasisIndex(-1, 0); }
  static BasisIndex haar(int level, std::int64_t shift);  // validates ranges

  bool is_drift() const { return level_ < 0; }
  int level() const;            // throws for the drift term
  std::int64_t shift() const;   // throws for the drift term

  std::uint64_t key() const;
  static BasisIndex from_key(std::uint64_t key);

  friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;

 private:
  BasisIndex(int level, std::int64_t shift) : level_(level), shift_(shift) {}
  int level_;
  std::int64_t shift_;
};

/// Haar function h_{j,k}(t): amplitude 2^{j/2} on [2k/2^{j+1}, (2k+1)/2^{j+1}),
/// -2^{j/2} on [(2k+1)/2^{j+1}, (2k+2)/2^{j+1}), 0 elsewhere.  Intervals are
/// half-open, so h_{j,k}(1) = 0 for every (j,k).
double eval_haar(int level, std::int64_t shift, double t);

/// The critical-case base kernel H(t) = (t-2)_+^{3/2} - 2(t-1)_+^{3/2} + t_+^{3/2}.
///
/// The three-term form loses roughly t^2 * eps of relative accuracy to
/// cancellation, so beyond a small threshold H is evaluated through its
/// second-difference integral (3/2) * Int_{t-1}^{t} dx / (sqrt(x) + sqrt(x-1))
/// with a fixed Gauss-Legendre rule; both branches carry ~1e-14 relative
/// error at the crossover.
double eval_H(double t);

/// Leading asymptotic (3/4) t^{-1/2} of eval_H; valid (and enforced) for t >= 2.
double eval_H_asymptotic(double t);

/// Base kernel for general order: H_alpha(u) = (u-2)_+^alpha - 2(u-1)_+^alpha + u_+^alpha.
/// Dispatches to eval_H for alpha = 3/2.  For alpha = 1 this is the hat
/// function and the term ordering makes it vanish exactly for u >= 2.
double base_kernel(const RLParams& params, double u);

/// Integrated Haar function (R_alpha h_{j,k})(t) on [0,1]:
///   2^{j/2}/Gamma(alpha+1) * { (t-(2k+2)/2^{j+1})_+^alpha
///                              - 2(t-(2k+1)/2^{j+1})_+^alpha
///                              + (t-2k/2^{j+1})_+^alpha }.
/// For alpha = 3/2 the three plus-powers are evaluated in compensated
/// (double-double) arithmetic directly in t-coordinates; this keeps the
/// routine an evaluation path independent of eval_H while staying accurate
/// to ~1 ulp even where the terms cancel to one part in 1e7.
double integrated_haar(const RLParams& params, int level, std::int64_t shift, double t);

/// Drift coefficient function t^alpha / Gamma(alpha+1).
double drift_term(const RLParams& params, double t);

/// Value of the expansion term identified by `index` at t (drift_term or
/// integrated_haar).
double eval_term(const RLParams& params, const BasisIndex& index, double t);

namespace detail {
// Branch internals of eval_H, exposed for the overlap-agreement tests.
double eval_H_three_term(double t);
double eval_H_integral_tail(double t);  // requires t >= 2
inline constexpr double kEvalHBranchThreshold = 4.0;
}  // namespace detail

}  // namespace rlhaar
