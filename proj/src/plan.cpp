#include "rlhaar/plan.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rlhaar {

namespace {

constexpr int kMaxPlanLevel = 24;

std::vector<BasisIndex> natural_order(int max_level) {
  if (max_level < 0 || max_level > kMaxPlanLevel) {
    throw std::invalid_argument("TruncationPlan: max_level must lie in [0, 24]");
  }
  std::vector<BasisIndex> order;
  order.reserve(std::size_t{2} << max_level);
  order.push_back(BasisIndex::drift());
  for (int j = 0; j <= max_level; ++j) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      order.push_back(BasisIndex::haar(j, k));
    }
  }
  return order;
}

}  // namespace

TruncationPlan::TruncationPlan(std::vector<BasisIndex> order) {
  if (order.empty()) throw std::invalid_argument("TruncationPlan: empty order");
  int max_level = -1;
  for (const auto& idx : order) {
    if (!idx.is_drift()) max_level = std::max(max_level, idx.level());
  }
  if (max_level < 0 || max_level > kMaxPlanLevel) {
    throw std::invalid_argument("TruncationPlan: order must contain Haar terms up to some level <= 24");
  }
  const std::size_t expected = std::size_t{2} << max_level;
  if (order.size() != expected) {
    throw std::invalid_argument("TruncationPlan: order must contain exactly 2^{J+1} terms");
  }
  max_level_ = max_level;
  order_ = std::move(order);
  index_positions();
}

void TruncationPlan::index_positions() {
  position_by_key_.assign(order_.size(), 0);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const std::uint64_t key = order_[i].key();
    if (key >= position_by_key_.size()) {
      throw std::invalid_argument("TruncationPlan: term outside the level range");
    }
    if (position_by_key_[key] != 0) {
      throw std::invalid_argument("TruncationPlan: duplicate term in order");
    }
    position_by_key_[key] = static_cast<std::int64_t>(i) + 1;
  }
  // Every key filled exactly once <=> a permutation of the full term set.
  for (std::int64_t pos : position_by_key_) {
    if (pos == 0) throw std::invalid_argument("TruncationPlan: missing term in order");
  }
}

std::int64_t TruncationPlan::position_of(const BasisIndex& index) const {
  const std::uint64_t key = index.key();
  if (key >= position_by_key_.size()) {
    throw std::invalid_argument("TruncationPlan: index beyond plan's max level");
  }
  return position_by_key_[key];
}

TruncationPlan TruncationPlan::natural(int max_level) {
  TruncationPlan plan;
  plan.order_ = natural_order(max_level);
  plan.max_level_ = max_level;
  plan.index_positions();
  return plan;
}

TruncationPlan TruncationPlan::reversed_levels(int max_level) {
  TruncationPlan plan;
  plan.order_ = natural_order(max_level);
  std::reverse(plan.order_.begin(), plan.order_.end());
  plan.max_level_ = max_level;
  plan.index_positions();
  return plan;
}

TruncationPlan TruncationPlan::random(int max_level, std::uint64_t seed) {
  TruncationPlan plan;
  plan.order_ = natural_order(max_level);
  std::mt19937_64 rng(seed);
  // Fisher-Yates with modulo draws: the mt19937_64 sequence is fixed by the
  // standard, so the permutation depends on the seed only.
  for (std::size_t i = plan.order_.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(plan.order_[i], plan.order_[j]);
  }
  plan.max_level_ = max_level;
  plan.index_positions();
  return plan;
}

TruncationPlan TruncationPlan::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("TruncationPlan: cannot open plan file " + path);
  std::vector<BasisIndex> order;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;  // blank line
    if (first == "drift") {
      order.push_back(BasisIndex::drift());
    } else {
      std::int64_t level = 0, shift = 0;
      try {
        level = std::stoll(first);
      } catch (const std::exception&) {
        throw std::invalid_argument("TruncationPlan: bad token at line " + std::to_string(line_no));
      }
      if (!(ss >> shift)) {
        throw std::invalid_argument("TruncationPlan: missing shift at line " + std::to_string(line_no));
      }
      order.push_back(BasisIndex::haar(static_cast<int>(level), shift));
    }
    std::string extra;
    if (ss >> extra) {
      throw std::invalid_argument("TruncationPlan: trailing junk at line " + std::to_string(line_no));
    }
  }
  return TruncationPlan(std::move(order));
}

}  // namespace rlhaar
