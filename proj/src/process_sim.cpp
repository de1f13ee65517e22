#include "rlhaar/process_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rlhaar/basis.hpp"

namespace rlhaar {

ProcessSimulator::ProcessSimulator(const RLParams& params, int max_level, int grid_level)
    : params_(params), max_level_(max_level), grid_(grid_level) {
  if (max_level < 0 || max_level > 20) {
    throw std::invalid_argument("ProcessSimulator: max_level must lie in [0, 20]");
  }
  if (grid_level < max_level + 2) {
    throw std::invalid_argument(
        "ProcessSimulator: grid level must be >= max_level + 2 so every basis "
        "breakpoint lies on the grid");
  }

  const Eigen::Index n = grid_.num_points();
  drift_values_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) drift_values_[i] = drift_term(params_, grid_.points()[i]);

  fft_size_ = Eigen::Index{2} << grid_level;  // covers max offset + kernel extent
  level_tables_.resize(max_level + 1);
  level_extents_.resize(max_level + 1);
  level_spectra_.resize(max_level + 1);
  for (int j = 0; j <= max_level; ++j) {
    // Table over the lattice u = g / 2^{L-j-1}; a term (j,k) contributes
    // coeff * table[i - k 2^{L-j}] at grid node i.
    const double u_step = std::ldexp(1.0, j + 1 - grid_level);
    const double scale = std::exp2(0.5 * j - (j + 1) * params_.alpha) / params_.gamma_alpha_plus_1;
    Eigen::VectorXd& table = level_tables_[j];
    table.resize(n);
    for (Eigen::Index g = 0; g < n; ++g) {
      table[g] = scale * base_kernel(params_, static_cast<double>(g) * u_step);
    }
    std::int64_t extent = n - 1;
    while (extent > 0 && table[extent] == 0.0) --extent;
    level_extents_[j] = extent;

    // Precompute the kernel spectrum only where a full level could ever
    // prefer the FFT route.
    std::vector<synthesis::ShiftTerm> full_level;
    full_level.reserve(std::size_t{1} << j);
    const std::int64_t stride = std::int64_t{1} << (grid_level - j);
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      full_level.push_back({k * stride, 1.0});
    }
    if (synthesis::direct_cost(full_level, extent, n) > synthesis::fft_cost(fft_size_)) {
      level_spectra_[j] = synthesis::kernel_spectrum(table, fft_size_);
    }
  }
}

void ProcessSimulator::check_plan(const TruncationPlan& plan) const {
  if (plan.max_level() != max_level_) {
    throw std::invalid_argument("ProcessSimulator: plan max_level does not match simulator");
  }
}

void ProcessSimulator::replica_tail_sups(const TruncationPlan& plan,
                                         const std::vector<std::int64_t>& cuts,
                                         const GaussianStream& stream, std::uint64_t replica,
                                         Eigen::VectorXd& path, double* sups,
                                         synthesis::ConvWorkspace& workspace) const {
  const std::int64_t num_terms = plan.num_terms();
  std::vector<std::vector<synthesis::ShiftTerm>> buckets(max_level_ + 1);

  std::int64_t high = num_terms;  // highest position not yet consumed
  for (std::int64_t c = static_cast<std::int64_t>(cuts.size()) - 1; c >= 0; --c) {
    const std::int64_t low = cuts[c];
    bool drift_in_batch = false;
    double drift_coeff = 0.0;
    for (auto& b : buckets) b.clear();
    for (std::int64_t pos = high; pos >= low; --pos) {
      const BasisIndex& idx = plan.order()[pos - 1];
      const double xi = stream.normal_for(replica, idx);
      if (idx.is_drift()) {
        drift_in_batch = true;
        drift_coeff = xi;
      } else {
        const int j = idx.level();
        const std::int64_t stride = std::int64_t{1} << (grid_.level() - j);
        buckets[j].push_back({idx.shift() * stride, xi});
      }
    }
    if (drift_in_batch) path += drift_coeff * drift_values_;
    for (int j = 0; j <= max_level_; ++j) {
      if (buckets[j].empty()) continue;
      const auto* spectrum = level_spectra_[j].empty() ? nullptr : &level_spectra_[j];
      synthesis::add_shifted_kernels(path, buckets[j], level_tables_[j], level_extents_[j],
                                     spectrum, fft_size_, workspace);
    }
    high = low - 1;
    sups[c] = path.cwiseAbs().maxCoeff();
  }
}

Eigen::VectorXd ProcessSimulator::sample_path(const TruncationPlan& plan,
                                              const GaussianStream& stream,
                                              std::uint64_t replica) const {
  check_plan(plan);
  Eigen::VectorXd path = Eigen::VectorXd::Zero(grid_.num_points());
  double sup = 0.0;
  synthesis::ConvWorkspace workspace;
  const std::vector<std::int64_t> cuts{1};
  replica_tail_sups(plan, cuts, stream, replica, path, &sup, workspace);
  return path;
}

double ProcessSimulator::tail_sup_norm(const TruncationPlan& plan, std::int64_t cut,
                                       const GaussianStream& stream,
                                       std::uint64_t replica) const {
  check_plan(plan);
  if (cut < 1 || cut > plan.num_terms() + 1) {
    throw std::invalid_argument("tail_sup_norm: cut must lie in [1, num_terms + 1]");
  }
  Eigen::VectorXd path = Eigen::VectorXd::Zero(grid_.num_points());
  double sup = 0.0;
  synthesis::ConvWorkspace workspace;
  const std::vector<std::int64_t> cuts{cut};
  replica_tail_sups(plan, cuts, stream, replica, path, &sup, workspace);
  return sup;
}

TailCurve ProcessSimulator::mc_tail_curve(const TruncationPlan& plan,
                                          const std::vector<std::int64_t>& cuts,
                                          std::int64_t replicas, std::uint64_t master_seed,
                                          int workers) const {
  check_plan(plan);
  if (cuts.empty()) throw std::invalid_argument("mc_tail_curve: need at least one cut");
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] < 1 || cuts[i] > plan.num_terms() + 1) {
      throw std::invalid_argument("mc_tail_curve: cuts must lie in [1, num_terms + 1]");
    }
    if (i > 0 && cuts[i] <= cuts[i - 1]) {
      throw std::invalid_argument("mc_tail_curve: cuts must be strictly increasing");
    }
  }
  if (replicas < 2) throw std::invalid_argument("mc_tail_curve: replicas must be >= 2");

  const GaussianStream stream(master_seed);
  TailCurve curve;
  curve.cuts = cuts;
  curve.replica_sups = run_replicas(
      replicas, static_cast<Eigen::Index>(cuts.size()), workers,
      [&](std::uint64_t replica, Eigen::Ref<Eigen::RowVectorXd> row) {
        thread_local Eigen::VectorXd path;
        thread_local synthesis::ConvWorkspace workspace;
        path.setZero(grid_.num_points());
        Eigen::VectorXd sups(row.size());
        replica_tail_sups(plan, cuts, stream, replica, path, sups.data(), workspace);
        row = sups.transpose();
      });
  curve.estimates.reserve(cuts.size());
  for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(cuts.size()); ++c) {
    curve.estimates.push_back(reduce_column(curve.replica_sups, c, master_seed));
  }
  return curve;
}

McEstimate ProcessSimulator::mc_tail_error(const TruncationPlan& plan, std::int64_t cut,
                                           std::int64_t replicas, std::uint64_t master_seed,
                                           int workers) const {
  const std::vector<std::int64_t> cuts{cut};
  return mc_tail_curve(plan, cuts, replicas, master_seed, workers).estimates.front();
}

}  // namespace rlhaar
