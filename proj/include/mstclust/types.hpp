#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace mstclust {

/// Row-major so that a point is a contiguous span of doubles.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using IndexMatrix =
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n points in R^d. Coordinates must be finite.
struct PointSet {
  Matrix points;  // n x d

  PointSet() = default;
  explicit PointSet(Matrix pts) : points(std::move(pts)) {}

  int n() const { return static_cast<int>(points.rows()); }
  int d() const { return static_cast<int>(points.cols()); }

  const double* row(int i) const { return points.row(i).data(); }

  /// Throws std::invalid_argument on empty data or non-finite coordinates.
  void validate() const;
};

/// Cluster labels for the points of a PointSet. Label 0 is reserved for
/// noise; the nonzero labels form the contiguous set {1, ..., k}.
struct Partition {
  std::vector<int> labels;
  int k = 0;  // number of distinct nonzero labels

  Partition() = default;

  /// Renumbers arbitrary nonnegative labels so that the nonzero ones become
  /// 1..k in order of first occurrence; 0 stays 0.
  static Partition from_raw(const std::vector<int>& raw);

  int n() const { return static_cast<int>(labels.size()); }
};

/// True if the two labelings induce the same grouping, treating labels as
/// opaque ids except for 0, which must match exactly (noise is not a group).
bool same_partition(const Partition& a, const Partition& b);

inline double sq_dist(const double* a, const double* b, int d) {
  // Plain scalar loop: every distance in the library goes through here so
  // that independently computed values compare bit-identically.
  double acc = 0.0;
  for (int t = 0; t < d; ++t) {
    const double diff = a[t] - b[t];
    acc += diff * diff;
  }
  return acc;
}

inline double sq_dist(const PointSet& ps, int i, int j) {
  return sq_dist(ps.row(i), ps.row(j), ps.d());
}

inline double euclid_dist(const PointSet& ps, int i, int j) {
  return std::sqrt(sq_dist(ps, i, j));
}

}  // namespace mstclust
