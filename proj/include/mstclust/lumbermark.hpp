#pragma once

#include <vector>

#include "mstclust/mst.hpp"
#include "mstclust/types.hpp"

namespace mstclust {

/// Parameters of the divisive tree-cutting algorithm.
struct LumbermarkParams {
  int k = 1;                 ///< requested number of clusters, 1 <= k <= n
  double f = 0.25;           ///< min-cluster-size factor in [0, 1]
  int M = 5;                 ///< smoothing parameter the tree was built with
  bool leaf_removal = true;  ///< exclude degree-1 vertices from cutting
};

/// Working state of one completed cut pass, exposed for inspection.
struct CutState {
  std::vector<bool> leaf_mask;       ///< degree-1 vertices of T (all false
                                     ///< when leaf removal is off)
  int t_prime_size = 0;              ///< |T'|: vertices surviving leaf removal
  double s = 0.0;                    ///< min cluster size f * |T'| / k
  std::vector<int> cut_edges;        ///< accepted edges (ids into tree.edges),
                                     ///< in acceptance order
  std::vector<int> component_sizes;  ///< final component sizes within T'
};

/// Instrumentation of the cut stage.
struct CutStats {
  long long relabel_ops = 0;  ///< vertices touched by component relabelling
  int restarts = 0;           ///< cut-loop restarts (factor halvings and the
                              ///< leaf-removal retry)
  double f_used = 0.0;        ///< factor in effect on the successful pass
  bool leaf_removal_used = true;  ///< leaf removal on the successful pass
};

struct LumbermarkResult {
  Partition partition;
  CutState state;
  CutStats stats;
};

/// Degree-1 vertices of the tree.
std::vector<bool> leaves(const SpanningTree& tree);

/// Divisive clustering by cutting k-1 tree edges.
///
/// T' is the tree with its leaves removed (kept whole when leaf_removal is
/// off).  With s = f * |T'| / k, the edges of T' are scanned once in
/// decreasing (weight, distance, index-pair) order; an edge is accepted
/// when every component it would create within T' keeps at least s
/// vertices.  The k clusters are the components of the full tree minus the
/// accepted edges, labelled 1..k by ascending smallest member; leaves
/// inherit membership through their tree neighbour.  No noise label is
/// ever produced.
///
/// If a pass ends with fewer than k-1 accepted edges, the factor is halved
/// and the pass restarted on the same tree; once f sinks below 1/n, leaf
/// removal is disabled for one final retry, and failure after that raises
/// std::runtime_error("cannot produce k clusters").
LumbermarkResult lumbermark_full(const SpanningTree& tree,
                                 const LumbermarkParams& p);

inline Partition lumbermark(const SpanningTree& tree,
                            const LumbermarkParams& p) {
  return lumbermark_full(tree, p).partition;
}

/// The nested partitions after 0, 1, ..., k-1 accepted cuts of the
/// successful pass; entry j+1 refines entry j, and the last entry equals
/// lumbermark's output.
std::vector<Partition> lumbermark_trace(const SpanningTree& tree,
                                        const LumbermarkParams& p);

}  // namespace mstclust
