#pragma once

#include <limits>
#include <vector>

#include "mstclust/types.hpp"

namespace mstclust {

/// Static k-d tree over a fixed point set; median splits on the widest box
/// side, leaves hold small contiguous ranges.  Serves exact nearest-
/// neighbour queries and the component-aware edge queries of the spatial
/// Boruvka minimum-spanning-tree construction.
///
/// All point-to-point distances go through the shared scalar kernel, so
/// query results are bit-identical to a brute-force scan with the same tie
/// rule (ascending point index).
class KdTree {
 public:
  explicit KdTree(const PointSet& ps, int leaf_size = 16);

  /// Exact M nearest neighbours of the indexed point qi, excluding qi
  /// itself, nearest first; equal distances break by ascending index.
  void knn(int qi, int M, int* out_idx, double* out_dist) const;

  /// Recompute per-node component tags from per-point component labels
  /// (called once per Boruvka round).
  void retag(const std::vector<int>& comp);

  /// Store per-point core distances and per-subtree minima; these
  /// lower-bound mutual-reachability weights during find_edge.
  void set_cores(const std::vector<double>& core);

  struct EdgeCandidate {
    int j = -1;
    double primary = std::numeric_limits<double>::infinity();
    double tiebreak = std::numeric_limits<double>::infinity();
  };

  /// Best edge, in the (weight, distance, index-pair) order, from point qi
  /// to any point outside qi's component; j stays -1 when no such point
  /// exists.  Requires retag() and set_cores() beforehand.
  EdgeCandidate find_edge(int qi, const std::vector<int>& comp) const;

  int n() const { return n_; }

 private:
  struct Node {
    int left = -1;   ///< child node id, -1 in leaves
    int right = -1;
    int begin = 0;   ///< subtree's range in perm_
    int end = 0;
  };

  int build(int begin, int end);
  double box_sq_dist(int node, const double* q) const;

  struct KnnQuery;
  void knn_node(int node, KnnQuery& q) const;
  struct EdgeQuery;
  void edge_node(int node, EdgeQuery& q) const;

  const PointSet* ps_ = nullptr;
  int n_ = 0;
  int d_ = 0;
  int leaf_size_ = 16;
  std::vector<Node> nodes_;
  std::vector<int> perm_;          ///< point indices, grouped by leaf
  std::vector<double> box_lo_;     ///< nodes_ x d bounding boxes
  std::vector<double> box_hi_;
  std::vector<int> tag_;           ///< per node: common component or -1
  std::vector<double> core_;      ///< per point
  std::vector<double> min_core_;  ///< per node: min core in subtree
};

}  // namespace mstclust
