#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rlhaar/gaussian_stream.hpp"
#include "rlhaar/mc.hpp"
#include "rlhaar/plan.hpp"

namespace rlhaar {

/// A set of shifts K within one level: sorted, unique, 0 <= k < 2^j.
struct ShiftSet {
  int level;
  std::vector<std::int64_t> shifts;

  static ShiftSet make(int level, std::vector<std::int64_t> shifts);
  std::int64_t size() const { return static_cast<std::int64_t>(shifts.size()); }
};

/// Outcome of splitting [0, 2^j - 1] into 2^{j/2} blocks of width 2^{j/2} and
/// keeping those holding at least a quarter-block of K.
struct BlockSelection {
  int level;
  std::int64_t block_width;
  std::vector<std::int64_t> selected;       // block indices iota, ascending
  std::vector<std::int64_t> member_counts;  // #(K cap B_iota) for each selected block
};

/// The separated points t_1 < ... < t_m (even integers 2 v_iota) produced by
/// the dense-block construction, with their harmonic separation scores.
/// scores[0] is +infinity (the first point carries no constraint); for i >= 2,
/// scores[i-1] is the harmonic sum between t_{i-1} and t_i.
struct SeparatedSequence {
  int level;
  bool degenerate;  // level below the construction's minimum; points empty
  std::vector<double> points;
  std::vector<double> scores;

  std::int64_t size() const { return static_cast<std::int64_t>(points.size()); }
};

/// Levels below this make the per-block Lemma-style bound vacuous (q < 2),
/// so the construction reports a flagged degenerate result instead.
inline constexpr int kSeparationMinLevel = 8;

/// Path of X_K(t) = sum_{k in K} xi_{j,k} H(t - 2k) at the given points of
/// [0, 2^{j+1}].  Coefficients come from the stream keyed by (level, k), so
/// X_K shares its variates with the rescaled level slice.
Eigen::VectorXd xk_path(const ShiftSet& K, const Eigen::VectorXd& points,
                        const GaussianStream& stream, std::uint64_t replica);

/// Both sides of the rescaling identity
///   sum_{k in K} xi_{j,k} (R_{3/2} h_{j,k})(t)  ==  X_K(2^{j+1} t) / (2^{3/2+j} Gamma(5/2))
/// evaluated with the same variates; equal pathwise because coefficients are
/// keyed by basis index.
std::pair<double, double> rescale_identity(const ShiftSet& K, double t,
                                           const GaussianStream& stream, std::uint64_t replica);

/// E (X_K(t) - X_K(s))^2 = sum_{k in K} (H(t-2k) - H(s-2k))^2, s < t.
double increment_variance(const ShiftSet& K, double s, double t);

/// E Z(s,t)^2 = sum_{k in K: s/2 < k <= t/2} H(t-2k)^2, the part of the
/// increment orthogonal to the past; never exceeds increment_variance.
double z_variance(const ShiftSet& K, double s, double t);

/// max_{1 < r <= n} sum_{i<r} 1/(s_r - s_i) over strictly increasing points,
/// returned as (1-based position of the smallest maximizing r, value).
std::pair<std::int64_t, double> max_harmonic_sum(std::span<const double> points);

/// max_harmonic_sum value divided by (q / |T|) ln q for 2q points inside an
/// interval of length |T|; the empirical constant of the harmonic-sum bound.
double lemma1_ratio(std::span<const double> points, double interval_length);

/// Quarter-dense block selection; level must be even and >= 2.  Whenever
/// #(K) >= 2^{j-1} the count bound  #(selected) >= 2^{j/2} / 3  holds.
BlockSelection select_dense_blocks(const ShiftSet& K);

/// Full separated-sequence construction: one point 2 v_iota per dense block,
/// v_iota the maximizer of the in-block harmonic sum over the first
/// 2 floor(#members / 2) members.  Requires even level and #(K) >= 2^{j-1};
/// levels below kSeparationMinLevel yield a degenerate flagged result.
SeparatedSequence construct_separated_sequence(const ShiftSet& K);

/// min over 2 <= i <= m of sum_{k in K: t_{i-1}/2 < k <= t_i/2 - 1} 1/(t_i - 2k);
/// +infinity when the sequence has fewer than two points.
double check_separation(const ShiftSet& K, std::span<const double> t_sequence);

/// Sudakov minoration c_sud sqrt(ln m) min_{i != i'} d(t_i, t_i') with the
/// exact increment distance d = sqrt(increment_variance).
double sudakov_bound(const ShiftSet& K, std::span<const double> t_sequence, double c_sud);

/// Monte Carlo estimate of E sup_{[0, 2^{j+1}]} |X_K| over a uniform grid
/// with `points_per_unit` (>= 8) nodes per unit length.
McEstimate mc_sup_xk(const ShiftSet& K, int points_per_unit, std::int64_t replicas,
                     std::uint64_t master_seed, int workers = 0);

/// Level-j tail set of a rearrangement: all shifts whose term sits at
/// position >= cut (1-based).  With cut = 2^{j-1} the pigeonhole guarantees
/// #(K) >= 2^{j-1}.
ShiftSet tail_level_set(const TruncationPlan& plan, int level, std::int64_t cut);

}  // namespace rlhaar
