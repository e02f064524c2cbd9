#include "mstclust/linkage.hpp"

#include <stdexcept>
#include <vector>

#include "mstclust/disjoint_set.hpp"

namespace mstclust {

namespace {

/// Labels the union-find components: clusters 1..k by ascending smallest
/// member; components of size 1 become noise (label 0) when
/// singletons_are_noise is set.
Partition label_components(DisjointSet& dsu, int n,
                           bool singletons_are_noise) {
  Partition part;
  part.labels.assign(n, 0);
  std::vector<int> label_of_root(n, -1);
  for (int v = 0; v < n; ++v) {
    const int r = dsu.find(v);
    if (singletons_are_noise && dsu.size(r) == 1) continue;
    if (label_of_root[r] < 0) label_of_root[r] = ++part.k;
    part.labels[v] = label_of_root[r];
  }
  return part;
}

}  // namespace

Partition single_linkage_cut(const SpanningTree& tree, int k) {
  if (k < 1 || k > tree.n) {
    throw std::invalid_argument("k must be in [1, n]");
  }
  // Edges are sorted ascending, so dropping the k-1 largest means keeping
  // the first n-k.
  DisjointSet dsu(tree.n);
  const int keep = tree.n - k;
  for (int eid = 0; eid < keep; ++eid) {
    dsu.unite(tree.edges[eid].u, tree.edges[eid].v);
  }
  return label_components(dsu, tree.n, /*singletons_are_noise=*/false);
}

Partition dbscan_star_cut(const SpanningTree& tree, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  DisjointSet dsu(tree.n);
  for (const auto& e : tree.edges) {
    if (e.w_mutreach <= eps) dsu.unite(e.u, e.v);
  }
  return label_components(dsu, tree.n, /*singletons_are_noise=*/true);
}

Partition dbscan_star_oracle(const PointSet& ps, const NeighborGraph& ng,
                             double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  ps.validate();
  const int n = ps.n();
  DisjointSet dsu(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (mutreach(ng, ps, i, j).primary <= eps) dsu.unite(i, j);
    }
  }
  return label_components(dsu, n, /*singletons_are_noise=*/true);
}

}  // namespace mstclust
