#pragma once

#include <vector>

#include "mstclust/neighbors.hpp"
#include "mstclust/types.hpp"

namespace mstclust {

/// One edge of a mutual-reachability minimum spanning tree.
struct TreeEdge {
  int u = 0;  ///< smaller endpoint index
  int v = 0;  ///< larger endpoint index (u < v)
  double w_mutreach = 0.0;  ///< max(w_euclid, core[u], core[v])
  double w_euclid = 0.0;    ///< plain Euclidean distance

  MutReachValue value() const { return {w_mutreach, w_euclid}; }
};

/// Ascending comparison of tree edges under the strict total order
/// (w_mutreach, w_euclid, index pair).
inline bool tree_edge_less(const TreeEdge& a, const TreeEdge& b) {
  return edge_value_less(a.value(), a.u, a.v, b.value(), b.u, b.v);
}

/// The minimum spanning tree of the complete mutual-reachability graph.
/// Because the edge order is strictly total, this tree is unique: all
/// constructors below return the identical edge set, listed ascending.
struct SpanningTree {
  int n = 0;
  int M = 0;                    ///< smoothing parameter of the weights
  std::vector<TreeEdge> edges;  ///< n-1 edges, sorted ascending

  bool same_edges(const SpanningTree& other) const;
  double total_weight() const;
};

/// Reference constructor: Prim's method over the complete graph, O(n^2).
/// Distance scans may run in parallel; the result never depends on the
/// thread count.  Throws std::invalid_argument when n < 2.
SpanningTree mst_prim(const PointSet& ps, const NeighborGraph& ng);

/// Cross-validation oracle: Kruskal over all n(n-1)/2 explicitly sorted
/// pairs, O(n^2 log n).  Same edge set as mst_prim by uniqueness.
SpanningTree mst_kruskal_oracle(const PointSet& ps, const NeighborGraph& ng);

/// Fast path for low dimensions: single-tree Boruvka with k-d-tree edge
/// queries.  Same edge set as mst_prim by uniqueness.
SpanningTree mst_boruvka_spatial(const PointSet& ps, const NeighborGraph& ng);

/// Writes the tree as text, one edge per line: "u v w_mutreach w_euclid"
/// at full round-trip precision.
void write_tree(std::ostream& out, const SpanningTree& tree);

}  // namespace mstclust
