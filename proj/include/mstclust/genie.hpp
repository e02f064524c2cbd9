#pragma once

#include <vector>

#include "mstclust/mst.hpp"
#include "mstclust/types.hpp"

namespace mstclust {

/// Parameters of the Gini-constrained agglomerative algorithm.
struct GenieParams {
  int k = 1;        ///< requested number of clusters
  double G = 0.3;   ///< Gini-index threshold in [0, 1]
  int M = 3;        ///< smoothing parameter the tree was built with
};

/// Gini index of a sequence of cluster sizes: the normalised mean absolute
/// difference sum_{i<j} |c_i - c_j| / ((k-1) * sum_i c_i), and 0 for a
/// single cluster.  Throws std::invalid_argument on empty input or a
/// non-positive size.
double gini_index(const std::vector<int>& sizes);

/// One agglomeration step, recorded when a trace is requested.
struct GenieStep {
  double gini_before = 0.0;  ///< Gini of the sizes before this merge
  bool gate_taken = false;   ///< true when the imbalance branch fired
  int edge_index = -1;       ///< id (into tree.edges) of the consumed edge
};

/// Gini-constrained agglomeration over the tree's edges.
///
/// Starting from n singletons, n-k merges are performed.  While the Gini
/// index of the current cluster sizes is <= G, the smallest unused tree
/// edge joining two distinct clusters is consumed (ascending adjusted
/// order).  Otherwise the minimal-size cluster must take part: the merge
/// consumes the smallest-order unused tree edge incident to any cluster of
/// minimal size.  Labels 1..k by ascending smallest member; no noise.
Partition genie(const SpanningTree& tree, const GenieParams& p,
                std::vector<GenieStep>* trace = nullptr);

}  // namespace mstclust
