#include "mstclust/mst.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <vector>

#include "mstclust/disjoint_set.hpp"
#include "mstclust/kdtree.hpp"

namespace mstclust {

bool SpanningTree::same_edges(const SpanningTree& other) const {
  if (n != other.n || edges.size() != other.edges.size()) return false;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].u != other.edges[i].u || edges[i].v != other.edges[i].v) {
      return false;
    }
  }
  return true;
}

double SpanningTree::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.w_mutreach;
  return total;
}

namespace {

void check_mst_args(const PointSet& ps, const NeighborGraph& ng) {
  ps.validate();
  if (ps.n() < 2) throw std::invalid_argument("n must be >= 2");
  if (ng.n() != ps.n()) {
    throw std::invalid_argument(
        "neighbor graph was built from a different point set");
  }
}

/// Builds the canonical edge for the pair {i, j}: endpoints ordered, both
/// weights recomputed from scratch so that every constructor stores
/// bit-identical values for identical pairs.
TreeEdge make_edge(const PointSet& ps, const std::vector<double>& core, int i,
                   int j) {
  TreeEdge e;
  e.u = std::min(i, j);
  e.v = std::max(i, j);
  e.w_euclid = std::sqrt(sq_dist(ps, e.u, e.v));
  e.w_mutreach = e.w_euclid;
  if (core[e.u] > e.w_mutreach) e.w_mutreach = core[e.u];
  if (core[e.v] > e.w_mutreach) e.w_mutreach = core[e.v];
  return e;
}

std::vector<double> core_vector(const NeighborGraph& ng) {
  std::vector<double> core(ng.n());
  for (int i = 0; i < ng.n(); ++i) core[i] = ng.core(i);
  return core;
}

SpanningTree finish(const PointSet& ps, const NeighborGraph& ng,
                    std::vector<TreeEdge> edges) {
  SpanningTree tree;
  tree.n = ps.n();
  tree.M = ng.M;
  tree.edges = std::move(edges);
  std::sort(tree.edges.begin(), tree.edges.end(), tree_edge_less);
  return tree;
}

}  // namespace

SpanningTree mst_prim(const PointSet& ps, const NeighborGraph& ng) {
  check_mst_args(ps, ng);
  const int n = ps.n();
  const std::vector<double> core = core_vector(ng);
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<char> in_tree(n, 0);
  std::vector<double> best_primary(n, inf);
  std::vector<double> best_tie(n, inf);
  std::vector<int> best_from(n, -1);
  std::vector<TreeEdge> edges;
  edges.reserve(n - 1);

  int cur = 0;
  in_tree[0] = 1;
  for (int step = 1; step < n; ++step) {
    // Offer the edge (cur, j) to every vertex outside the tree.  Each j is
    // owned by one thread, so the update is race-free and the outcome does
    // not depend on the thread count.
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double dd = std::sqrt(sq_dist(ps, cur, j));
      double primary = dd;
      if (core[cur] > primary) primary = core[cur];
      if (core[j] > primary) primary = core[j];
      if (best_from[j] < 0 ||
          edge_value_less({primary, dd}, cur, j,
                          {best_primary[j], best_tie[j]}, best_from[j], j)) {
        best_primary[j] = primary;
        best_tie[j] = dd;
        best_from[j] = cur;
      }
    }
    int pick = -1;
    for (int j = 0; j < n; ++j) {
      if (in_tree[j] || best_from[j] < 0) continue;
      if (pick < 0 ||
          edge_value_less({best_primary[j], best_tie[j]}, best_from[j], j,
                          {best_primary[pick], best_tie[pick]},
                          best_from[pick], pick)) {
        pick = j;
      }
    }
    edges.push_back(make_edge(ps, core, best_from[pick], pick));
    in_tree[pick] = 1;
    cur = pick;
  }
  return finish(ps, ng, std::move(edges));
}

SpanningTree mst_kruskal_oracle(const PointSet& ps, const NeighborGraph& ng) {
  check_mst_args(ps, ng);
  const int n = ps.n();
  const std::vector<double> core = core_vector(ng);

  std::vector<TreeEdge> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      pairs.push_back(make_edge(ps, core, i, j));
    }
  }
  std::sort(pairs.begin(), pairs.end(), tree_edge_less);

  DisjointSet dsu(n);
  std::vector<TreeEdge> edges;
  edges.reserve(n - 1);
  for (const auto& e : pairs) {
    if (dsu.unite(e.u, e.v)) {
      edges.push_back(e);
      if (static_cast<int>(edges.size()) == n - 1) break;
    }
  }
  return finish(ps, ng, std::move(edges));
}

SpanningTree mst_boruvka_spatial(const PointSet& ps, const NeighborGraph& ng) {
  check_mst_args(ps, ng);
  const int n = ps.n();
  const std::vector<double> core = core_vector(ng);

  KdTree tree(ps);
  tree.set_cores(core);

  DisjointSet dsu(n);
  std::vector<int> comp(n);
  std::vector<KdTree::EdgeCandidate> cand(n);
  std::vector<TreeEdge> edges;
  edges.reserve(n - 1);

  while (static_cast<int>(edges.size()) < n - 1) {
    for (int i = 0; i < n; ++i) comp[i] = dsu.find(i);
    tree.retag(comp);
#pragma omp parallel for schedule(dynamic, 64)
    for (int i = 0; i < n; ++i) {
      cand[i] = tree.find_edge(i, comp);
    }
    // Minimum outgoing edge per component, reduced serially so the result
    // is independent of the thread count above.
    std::vector<int> best_of(n, -1);  // indexed by component root
    for (int i = 0; i < n; ++i) {
      if (cand[i].j < 0) continue;
      const int c = comp[i];
      const int b = best_of[c];
      if (b < 0 ||
          edge_value_less({cand[i].primary, cand[i].tiebreak}, i, cand[i].j,
                          {cand[b].primary, cand[b].tiebreak}, b, cand[b].j)) {
        best_of[c] = i;
      }
    }
    bool grew = false;
    for (int c = 0; c < n; ++c) {
      const int i = best_of[c];
      if (i < 0) continue;
      if (dsu.unite(i, cand[i].j)) {
        edges.push_back(make_edge(ps, core, i, cand[i].j));
        grew = true;
      }
    }
    if (!grew) {
      throw std::logic_error("spanning tree construction stalled");
    }
  }
  return finish(ps, ng, std::move(edges));
}

void write_tree(std::ostream& out, const SpanningTree& tree) {
  char buf[128];
  for (const auto& e : tree.edges) {
    std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g", e.u, e.v,
                  e.w_mutreach, e.w_euclid);
    out << buf << '\n';
  }
}

}  // namespace mstclust
