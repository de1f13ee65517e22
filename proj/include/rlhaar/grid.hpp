#pragma once

#include <Eigen/Core>

namespace rlhaar {

/// Uniform dyadic evaluation grid on [0,1]: the 2^L + 1 points i / 2^L.
class DyadicGrid {
 public:
  explicit DyadicGrid(int level);

  int level() const { return level_; }
  Eigen::Index num_points() const { return points_.size(); }
  const Eigen::VectorXd& points() const { return points_; }

 private:
  int level_;
  Eigen::VectorXd points_;
};

}  // namespace rlhaar
