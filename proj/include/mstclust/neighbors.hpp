#pragma once

#include <utility>

#include "mstclust/types.hpp"

namespace mstclust {

/// Exact k-nearest-neighbour graph: for each point, its M nearest other
/// points by Euclidean distance, ties broken by ascending point index.
struct NeighborGraph {
  int M = 0;
  IndexMatrix nn_index;  ///< n x M, neighbour indices, nearest first.
  Matrix nn_dist;        ///< n x M, matching Euclidean distances.

  int n() const { return static_cast<int>(nn_index.rows()); }

  /// Core distance of point i: the distance to its M-th nearest neighbour
  /// (the last column), i.e. the smallest radius containing M other points.
  double core(int i) const { return nn_dist(i, M - 1); }
};

/// Mutual-reachability weight of an edge, carried together with the plain
/// Euclidean distance that breaks ties between equal weights.  The final
/// tie-break, the edge's (min index, max index) pair, is supplied by
/// edge_value_less below; together these make the ordering of the edges of
/// a finite point set strictly total, so the minimum spanning tree under
/// it is unique.
struct MutReachValue {
  double primary = 0.0;   ///< max(d(i,j), core(i), core(j))
  double tiebreak = 0.0;  ///< d(i,j)

  friend bool operator<(const MutReachValue& a, const MutReachValue& b) {
    if (a.primary != b.primary) return a.primary < b.primary;
    return a.tiebreak < b.tiebreak;
  }
  friend bool operator==(const MutReachValue& a, const MutReachValue& b) {
    return a.primary == b.primary && a.tiebreak == b.tiebreak;
  }
};

/// Strict total order on edges: by weight, then Euclidean distance, then
/// the (min endpoint, max endpoint) index pair.
inline bool edge_value_less(const MutReachValue& a, int au, int av,
                            const MutReachValue& b, int bu, int bv) {
  if (a.primary != b.primary) return a.primary < b.primary;
  if (a.tiebreak != b.tiebreak) return a.tiebreak < b.tiebreak;
  const std::pair<int, int> ka{std::min(au, av), std::max(au, av)};
  const std::pair<int, int> kb{std::min(bu, bv), std::max(bu, bv)};
  return ka < kb;
}

/// Exact M-nearest-neighbour graph by brute force, O(n^2 d).
/// Throws std::invalid_argument if M < 1 or M >= n
/// ("M too large for sample size").
NeighborGraph knn_bruteforce(const PointSet& ps, int M);

/// Exact M-nearest-neighbour graph via a k-d tree.  Produces element-wise
/// identical output to knn_bruteforce (same kernel, same tie rule).
NeighborGraph knn_spatial(const PointSet& ps, int M);

/// Mutual-reachability weight of the pair {i, j} given the core distances
/// in ng: (max(d, core_i, core_j), d) with d the Euclidean distance.
/// Symmetric in (i, j); mutreach(ng, ps, i, i) is the zero value.
MutReachValue mutreach(const NeighborGraph& ng, const PointSet& ps, int i,
                       int j);

}  // namespace mstclust
