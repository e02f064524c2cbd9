#pragma once

#include "mstclust/mst.hpp"
#include "mstclust/neighbors.hpp"
#include "mstclust/types.hpp"

namespace mstclust {

/// Single-linkage clustering: components of the tree after removing its
/// k-1 largest edges under the (weight, distance, index-pair) order.
/// Labels 1..k by ascending smallest member; no noise.
Partition single_linkage_cut(const SpanningTree& tree, int k);

/// Density-based clustering: components of the subgraph keeping tree edges
/// with raw mutual-reachability weight <= eps.  Singleton components are
/// noise (label 0); the rest are labelled 1..k by ascending smallest
/// member.  The threshold applies to w_mutreach, never the adjusted order.
Partition dbscan_star_cut(const SpanningTree& tree, double eps);

/// Brute-force reference: connected components of the complete graph with
/// an edge wherever the mutual-reachability distance is <= eps, singletons
/// as noise.  O(n^2); exists to validate dbscan_star_cut, which must agree
/// with it on every input for any exact spanning tree.
Partition dbscan_star_oracle(const PointSet& ps, const NeighborGraph& ng,
                             double eps);

}  // namespace mstclust
