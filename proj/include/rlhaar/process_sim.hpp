#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "rlhaar/gaussian_stream.hpp"
#include "rlhaar/grid.hpp"
#include "rlhaar/mc.hpp"
#include "rlhaar/params.hpp"
#include "rlhaar/plan.hpp"
#include "rlhaar/synthesis.hpp"

namespace rlhaar {

/// Tail-error estimates for a set of truncation cuts, with the per-replica
/// sup-norms kept for determinism checks.
struct TailCurve {
  std::vector<std::int64_t> cuts;          // 1-based, strictly increasing
  Eigen::MatrixXd replica_sups;            // replicas x cuts
  std::vector<McEstimate> estimates;
};

/// Simulates the truncated Haar expansion of R^alpha on a dyadic grid and
/// estimates sup-norm truncation tails for arbitrary rearrangements.
///
/// Construction precomputes, per level j <= J, the kernel values on the
/// integer lattice the grid induces (every breakpoint of every basis function
/// lies on the grid because grid_level >= max_level + 2), so a term's
/// contribution is a contiguous streamed addition; large level-groups switch
/// to an FFT convolution.  Sup-norms over the grid undershoot the true sup by
/// O(2^{-grid_level * min(alpha,1)}) per term, the documented grid bias.
class ProcessSimulator {
 public:
  ProcessSimulator(const RLParams& params, int max_level, int grid_level);

  const RLParams& params() const { return params_; }
  int max_level() const { return max_level_; }
  const DyadicGrid& grid() const { return grid_; }

  /// Pathwise sum over all plan terms; deterministic in (stream, replica).
  Eigen::VectorXd sample_path(const TruncationPlan& plan, const GaussianStream& stream,
                              std::uint64_t replica) const;

  /// max_i |sum over plan positions >= cut of xi * phi(t_i)|; cut is 1-based
  /// and cut = num_terms + 1 yields 0.
  double tail_sup_norm(const TruncationPlan& plan, std::int64_t cut,
                       const GaussianStream& stream, std::uint64_t replica) const;

  /// One synthesis sweep per replica covering every cut, replicas split
  /// across workers; aggregates are independent of the worker count.
  TailCurve mc_tail_curve(const TruncationPlan& plan, const std::vector<std::int64_t>& cuts,
                          std::int64_t replicas, std::uint64_t master_seed,
                          int workers = 0) const;

  McEstimate mc_tail_error(const TruncationPlan& plan, std::int64_t cut,
                           std::int64_t replicas, std::uint64_t master_seed,
                           int workers = 0) const;

 private:
  void check_plan(const TruncationPlan& plan) const;
  /// Accumulates tail sups for descending batches delimited by `cuts`
  /// (ascending); path must start zeroed and sups must have cuts.size() slots.
  void replica_tail_sups(const TruncationPlan& plan, const std::vector<std::int64_t>& cuts,
                         const GaussianStream& stream, std::uint64_t replica,
                         Eigen::VectorXd& path, double* sups,
                         synthesis::ConvWorkspace& workspace) const;

  RLParams params_;
  int max_level_;
  DyadicGrid grid_;
  Eigen::VectorXd drift_values_;
  std::vector<Eigen::VectorXd> level_tables_;
  std::vector<std::int64_t> level_extents_;
  std::vector<std::vector<std::complex<double>>> level_spectra_;  // empty when unused
  std::int64_t fft_size_;
};

}  // namespace rlhaar
