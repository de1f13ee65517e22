#include "rlhaar/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace rlhaar {

DyadicGrid::DyadicGrid(int level) : level_(level) {
  if (level < 1 || level > 26) {
    throw std::invalid_argument("DyadicGrid: level must lie in [1, 26]");
  }
  const Eigen::Index n = (Eigen::Index{1} << level) + 1;
  points_.resize(n);
  const double step = std::ldexp(1.0, -level);
  for (Eigen::Index i = 0; i < n; ++i) points_[i] = static_cast<double>(i) * step;
}

}  // namespace rlhaar
