#include "rlhaar/mc.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rlhaar {

Eigen::MatrixXd run_replicas(
    std::int64_t replicas, Eigen::Index row_size, int workers,
    const std::function<void(std::uint64_t, Eigen::Ref<Eigen::RowVectorXd>)>& body) {
  if (replicas < 0) throw std::invalid_argument("run_replicas: replicas must be >= 0");
  Eigen::MatrixXd rows(replicas, row_size);
  if (replicas == 0) return rows;

  int n_workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  if (n_workers < 1) n_workers = 1;
  if (n_workers > replicas) n_workers = static_cast<int>(replicas);

  if (n_workers == 1) {
    for (std::int64_t r = 0; r < replicas; ++r) body(static_cast<std::uint64_t>(r), rows.row(r));
    return rows;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int w = 0; w < n_workers; ++w) {
    const std::int64_t begin = replicas * w / n_workers;
    const std::int64_t end = replicas * (w + 1) / n_workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::int64_t r = begin; r < end; ++r) body(static_cast<std::uint64_t>(r), rows.row(r));
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

McEstimate reduce_column(const Eigen::MatrixXd& rows, Eigen::Index column,
                         std::uint64_t master_seed) {
  const std::int64_t n = rows.rows();
  if (n < 1) throw std::invalid_argument("reduce_column: need at least one replica");
  double sum = 0.0;
  for (std::int64_t r = 0; r < n; ++r) sum += rows(r, column);
  const double mean = sum / static_cast<double>(n);
  double se = 0.0;
  if (n >= 2) {
    double ss = 0.0;
    for (std::int64_t r = 0; r < n; ++r) {
      const double d = rows(r, column) - mean;
      ss += d * d;
    }
    se = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  }
  return McEstimate{mean, se, n, master_seed};
}

}  // namespace rlhaar
