#include "rlhaar/lower_bound.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rlhaar/basis.hpp"
#include "rlhaar/params.hpp"
#include "rlhaar/synthesis.hpp"

namespace rlhaar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_sequence(const ShiftSet& K, std::span<const double> t_sequence) {
  const double domain_end = std::ldexp(1.0, K.level + 1);
  for (std::size_t i = 0; i < t_sequence.size(); ++i) {
    if (!(t_sequence[i] >= 0.0 && t_sequence[i] <= domain_end)) {
      throw std::invalid_argument("t_sequence point outside [0, 2^{j+1}]");
    }
    if (i > 0 && !(t_sequence[i] > t_sequence[i - 1])) {
      throw std::invalid_argument("t_sequence must be strictly increasing");
    }
  }
}

}  // namespace

ShiftSet ShiftSet::make(int level, std::vector<std::int64_t> shifts) {
  if (level < 1 || level > 40) throw std::invalid_argument("ShiftSet: level must lie in [1, 40]");
  std::sort(shifts.begin(), shifts.end());
  const std::int64_t limit = std::int64_t{1} << level;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    if (shifts[i] < 0 || shifts[i] >= limit) {
      throw std::invalid_argument("ShiftSet: shift outside {0,...,2^j - 1}");
    }
    if (i > 0 && shifts[i] == shifts[i - 1]) {
      throw std::invalid_argument("ShiftSet: duplicate shift");
    }
  }
  return ShiftSet{level, std::move(shifts)};
}

Eigen::VectorXd xk_path(const ShiftSet& K, const Eigen::VectorXd& points,
                        const GaussianStream& stream, std::uint64_t replica) {
  const double domain_end = std::ldexp(1.0, K.level + 1);
  Eigen::VectorXd path = Eigen::VectorXd::Zero(points.size());
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0 && points[i] <= domain_end)) {
      throw std::invalid_argument("xk_path: point outside [0, 2^{j+1}]");
    }
  }
  for (const std::int64_t k : K.shifts) {
    const double xi = stream.normal_for(replica, BasisIndex::haar(K.level, k));
    for (Eigen::Index i = 0; i < points.size(); ++i) {
      path[i] += xi * eval_H(points[i] - 2.0 * static_cast<double>(k));
    }
  }
  return path;
}

std::pair<double, double> rescale_identity(const ShiftSet& K, double t,
                                           const GaussianStream& stream,
                                           std::uint64_t replica) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("rescale_identity: t must lie in [0,1]");
  const RLParams critical = RLParams::make(1.5);
  double lhs = 0.0;
  double unscaled = 0.0;
  const double scaled_t = std::ldexp(t, K.level + 1);
  for (const std::int64_t k : K.shifts) {
    const double xi = stream.normal_for(replica, BasisIndex::haar(K.level, k));
    lhs += xi * integrated_haar(critical, K.level, k, t);
    unscaled += xi * eval_H(scaled_t - 2.0 * static_cast<double>(k));
  }
  const double norm = std::exp2(1.5 + K.level) * critical.gamma_alpha_plus_1;
  return {lhs, unscaled / norm};
}

double increment_variance(const ShiftSet& K, double s, double t) {
  if (!(s < t)) throw std::invalid_argument("increment_variance: requires s < t");
  double sum = 0.0;
  for (const std::int64_t k : K.shifts) {
    const double d = eval_H(t - 2.0 * static_cast<double>(k)) -
                     eval_H(s - 2.0 * static_cast<double>(k));
    sum += d * d;
  }
  return sum;
}

double z_variance(const ShiftSet& K, double s, double t) {
  if (!(s < t)) throw std::invalid_argument("z_variance: requires s < t");
  double sum = 0.0;
  for (const std::int64_t k : K.shifts) {
    const double kd = static_cast<double>(k);
    if (kd > s / 2.0 && kd <= t / 2.0) {
      const double h = eval_H(t - 2.0 * kd);
      sum += h * h;
    }
  }
  return sum;
}

std::pair<std::int64_t, double> max_harmonic_sum(std::span<const double> points) {
  const std::int64_t n = static_cast<std::int64_t>(points.size());
  if (n < 2) throw std::invalid_argument("max_harmonic_sum: need at least two points");
  for (std::int64_t i = 1; i < n; ++i) {
    if (!(points[i] > points[i - 1])) {
      throw std::invalid_argument("max_harmonic_sum: points must be strictly increasing");
    }
  }
  std::int64_t best_r = 2;
  double best = -kInf;
  for (std::int64_t r = 2; r <= n; ++r) {
    double sum = 0.0;
    for (std::int64_t i = 1; i < r; ++i) sum += 1.0 / (points[r - 1] - points[i - 1]);
    if (sum > best) {  // strict: ties keep the smallest r
      best = sum;
      best_r = r;
    }
  }
  return {best_r, best};
}

double lemma1_ratio(std::span<const double> points, double interval_length) {
  const std::int64_t n = static_cast<std::int64_t>(points.size());
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("lemma1_ratio: need an even number of points with q >= 2");
  }
  if (!(interval_length > 0.0)) {
    throw std::invalid_argument("lemma1_ratio: interval length must be positive");
  }
  const double q = static_cast<double>(n / 2);
  return max_harmonic_sum(points).second / (q / interval_length * std::log(q));
}

BlockSelection select_dense_blocks(const ShiftSet& K) {
  const int j = K.level;
  if (j < 2 || j % 2 != 0) {
    throw std::invalid_argument("select_dense_blocks: level must be even and >= 2");
  }
  const std::int64_t width = std::int64_t{1} << (j / 2);
  BlockSelection out{j, width, {}, {}};
  std::size_t pos = 0;
  for (std::int64_t iota = 0; iota < width; ++iota) {
    const std::int64_t end = (iota + 1) * width;
    std::int64_t count = 0;
    while (pos + count < K.shifts.size() && K.shifts[pos + count] < end) ++count;
    if (4 * count >= width) {
      out.selected.push_back(iota);
      out.member_counts.push_back(count);
    }
    pos += count;
  }
  return out;
}

SeparatedSequence construct_separated_sequence(const ShiftSet& K) {
  const int j = K.level;
  if (j % 2 != 0) {
    throw std::invalid_argument("construct_separated_sequence: level must be even");
  }
  if (K.size() < (std::int64_t{1} << (j - 1))) {
    throw std::invalid_argument("construct_separated_sequence: requires #(K) >= 2^{j-1}");
  }
  if (j < kSeparationMinLevel) {
    return SeparatedSequence{j, true, {}, {}};
  }

  const BlockSelection blocks = select_dense_blocks(K);
  SeparatedSequence out{j, false, {}, {}};
  out.points.reserve(blocks.selected.size());

  for (std::size_t b = 0; b < blocks.selected.size(); ++b) {
    const std::int64_t iota = blocks.selected[b];
    const std::int64_t begin = iota * blocks.block_width;
    const std::int64_t end = begin + blocks.block_width;
    const auto first = std::lower_bound(K.shifts.begin(), K.shifts.end(), begin);
    const auto last = std::lower_bound(K.shifts.begin(), K.shifts.end(), end);
    const std::int64_t members = last - first;
    const std::int64_t two_q = 2 * (members / 2);  // q as large as possible
    std::vector<double> pts(static_cast<std::size_t>(two_q));
    for (std::int64_t i = 0; i < two_q; ++i) pts[i] = static_cast<double>(*(first + i));
    const auto [r, value] = max_harmonic_sum(pts);
    out.points.push_back(2.0 * pts[static_cast<std::size_t>(r - 1)]);
  }

  out.scores.resize(out.points.size());
  if (!out.points.empty()) {
    out.scores[0] = kInf;
    for (std::size_t i = 1; i < out.points.size(); ++i) {
      const double pair[2] = {out.points[i - 1], out.points[i]};
      out.scores[i] = check_separation(K, pair);
    }
  }
  return out;
}

double check_separation(const ShiftSet& K, std::span<const double> t_sequence) {
  check_sequence(K, t_sequence);
  if (t_sequence.size() <= 1) return kInf;
  double min_score = kInf;
  for (std::size_t i = 1; i < t_sequence.size(); ++i) {
    const double lo = t_sequence[i - 1] / 2.0;
    const double hi = t_sequence[i] / 2.0 - 1.0;  // the "-1" window endpoint
    double score = 0.0;
    for (const std::int64_t k : K.shifts) {
      const double kd = static_cast<double>(k);
      if (kd > lo && kd <= hi) score += 1.0 / (t_sequence[i] - 2.0 * kd);
    }
    min_score = std::min(min_score, score);
  }
  return min_score;
}

double sudakov_bound(const ShiftSet& K, std::span<const double> t_sequence, double c_sud) {
  if (!(c_sud > 0.0)) throw std::invalid_argument("sudakov_bound: c_sud must be positive");
  check_sequence(K, t_sequence);
  const std::int64_t m = static_cast<std::int64_t>(t_sequence.size());
  if (m < 2) throw std::invalid_argument("sudakov_bound: need at least two points");
  double min_dist_sq = kInf;
  for (std::int64_t a = 0; a < m; ++a) {
    for (std::int64_t b = a + 1; b < m; ++b) {
      min_dist_sq = std::min(min_dist_sq, increment_variance(K, t_sequence[a], t_sequence[b]));
    }
  }
  return c_sud * std::sqrt(std::log(static_cast<double>(m))) * std::sqrt(min_dist_sq);
}

McEstimate mc_sup_xk(const ShiftSet& K, int points_per_unit, std::int64_t replicas,
                     std::uint64_t master_seed, int workers) {
  if (points_per_unit < 8) {
    throw std::invalid_argument("mc_sup_xk: need at least 8 grid points per unit length");
  }
  if (replicas < 2) throw std::invalid_argument("mc_sup_xk: replicas must be >= 2");
  if (K.shifts.empty()) return McEstimate{0.0, 0.0, replicas, master_seed};

  const int j = K.level;
  const std::int64_t domain = std::int64_t{1} << (j + 1);
  const std::int64_t n = domain * points_per_unit + 1;

  Eigen::VectorXd table(n);
  const double step = 1.0 / static_cast<double>(points_per_unit);
  for (std::int64_t g = 0; g < n; ++g) table[g] = eval_H(static_cast<double>(g) * step);
  const std::int64_t extent = n - 1;

  std::vector<synthesis::ShiftTerm> terms(K.shifts.size());
  for (std::size_t i = 0; i < K.shifts.size(); ++i) {
    terms[i] = {2 * K.shifts[i] * points_per_unit, 0.0};
  }
  const std::int64_t max_offset = terms.back().offset;
  const std::int64_t fft_size =
      static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(max_offset + n)));
  std::vector<std::complex<double>> spectrum;
  if (synthesis::direct_cost(terms, extent, n) > synthesis::fft_cost(fft_size)) {
    spectrum = synthesis::kernel_spectrum(table, fft_size);
  }

  const GaussianStream stream(master_seed);
  const Eigen::MatrixXd sups = run_replicas(
      replicas, 1, workers, [&](std::uint64_t replica, Eigen::Ref<Eigen::RowVectorXd> row) {
        thread_local Eigen::VectorXd path;
        thread_local synthesis::ConvWorkspace workspace;
        path.setZero(n);
        std::vector<synthesis::ShiftTerm> local = terms;
        for (std::size_t i = 0; i < K.shifts.size(); ++i) {
          local[i].coeff = stream.normal_for(replica, BasisIndex::haar(j, K.shifts[i]));
        }
        synthesis::add_shifted_kernels(path, local, table, extent,
                                       spectrum.empty() ? nullptr : &spectrum, fft_size,
                                       workspace);
        row[0] = path.cwiseAbs().maxCoeff();
      });
  return reduce_column(sups, 0, master_seed);
}

ShiftSet tail_level_set(const TruncationPlan& plan, int level, std::int64_t cut) {
  if (level < 1 || level > plan.max_level()) {
    throw std::invalid_argument("tail_level_set: level must lie in [1, plan max level]");
  }
  if (cut < 1 || cut > plan.num_terms() + 1) {
    throw std::invalid_argument("tail_level_set: cut must lie in [1, num_terms + 1]");
  }
  std::vector<std::int64_t> shifts;
  for (std::int64_t k = 0; k < (std::int64_t{1} << level); ++k) {
    if (plan.position_of(BasisIndex::haar(level, k)) >= cut) shifts.push_back(k);
  }
  return ShiftSet::make(level, std::move(shifts));
}

}  // namespace rlhaar
