#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Core>

namespace rlhaar {

/// One Monte Carlo answer: sample mean, standard error (sample standard
/// deviation / sqrt(replicas)) and the provenance needed to reproduce it.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t replicas = 0;
  std::uint64_t master_seed = 0;
};

/// Writable view of one replica's result row (rows of a column-major matrix
/// are strided, hence the explicit inner stride).
using ReplicaRow = Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;

/// Evaluates `body(replica, out_row)` for replica = 0..replicas-1, split
/// across `workers` threads in contiguous ranges.  Each replica writes one row
/// of the returned matrix (replicas x row_size), so the aggregate is a pure
/// function of the replica set no matter how many workers ran: the contract
/// behind byte-identical results at any parallelism level.
///
/// `workers` <= 0 selects the hardware concurrency.
Eigen::MatrixXd run_replicas(
    std::int64_t replicas, Eigen::Index row_size, int workers,
    const std::function<void(std::uint64_t replica, ReplicaRow row)>& body);

/// Column-wise mean / standard-error reduction of per-replica rows, in fixed
/// (replica-ascending) summation order.
McEstimate reduce_column(const Eigen::MatrixXd& rows, Eigen::Index column,
                         std::uint64_t master_seed);

}  // namespace rlhaar
