#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kgeom/errors.hpp"

namespace kgeom {

/// A finite set of pairwise distinct points in R^d, stored one point per
/// row (m x d). Validated at construction: coordinates finite, at least
/// one point, and strictly positive pairwise separation.
class PointCloud {
public:
  explicit PointCloud(Eigen::MatrixXd points) : points_(std::move(points)) {
    if (points_.rows() < 1 || points_.cols() < 1) {
      throw std::invalid_argument("point cloud needs at least one point");
    }
    if (!points_.allFinite()) {
      throw std::invalid_argument("point cloud has non-finite coordinates");
    }
    // Exact-coincidence check via a lexicographic sort: strictly positive
    // pairwise separation is exactly the absence of duplicate rows.
    std::vector<Eigen::Index> order(points_.rows());
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const auto less = [this](Eigen::Index a, Eigen::Index b) {
      for (Eigen::Index c = 0; c < points_.cols(); ++c) {
        if (points_(a, c) != points_(b, c)) {
          return points_(a, c) < points_(b, c);
        }
      }
      return false;
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (points_.row(order[i - 1]) == points_.row(order[i])) {
        throw DuplicatePoints("points " + std::to_string(order[i - 1]) +
                              " and " + std::to_string(order[i]) +
                              " coincide");
      }
    }
  }

  /// Zero-point cloud of the given ambient dimension. Only meaningful as
  /// the prior case of gpr_variance; every other operation rejects it.
  static PointCloud empty(int dim) {
    PointCloud c;
    c.points_.resize(0, dim);
    return c;
  }

  int dim() const { return static_cast<int>(points_.cols()); }
  Eigen::Index size() const { return points_.rows(); }

  const Eigen::MatrixXd& points() const { return points_; }

  Eigen::VectorXd point(Eigen::Index i) const {
    return points_.row(i).transpose();
  }

  double min_separation() const {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < points_.rows(); ++j) {
      for (Eigen::Index k = j + 1; k < points_.rows(); ++k) {
        best = std::min(best, (points_.row(j) - points_.row(k)).norm());
      }
    }
    return best;
  }

  bool operator==(const PointCloud& other) const {
    return points_.rows() == other.points_.rows() &&
           points_.cols() == other.points_.cols() && points_ == other.points_;
  }

private:
  PointCloud() = default;

  Eigen::MatrixXd points_;
};

}  // namespace kgeom
