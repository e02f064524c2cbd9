#include "mstclust/lumbermark.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mstclust {

namespace {

/// Compressed adjacency of the tree: nbr[head[v] .. head[v+1]) lists
/// (neighbour, edge id) pairs of vertex v.
struct Adjacency {
  std::vector<int> head;
  std::vector<std::pair<int, int>> nbr;
};

Adjacency build_adjacency(const SpanningTree& tree) {
  const int n = tree.n;
  Adjacency adj;
  adj.head.assign(n + 1, 0);
  for (const auto& e : tree.edges) {
    ++adj.head[e.u + 1];
    ++adj.head[e.v + 1];
  }
  for (int v = 0; v < n; ++v) adj.head[v + 1] += adj.head[v];
  adj.nbr.resize(2 * tree.edges.size());
  std::vector<int> fill(adj.head.begin(), adj.head.end() - 1);
  for (int eid = 0; eid < static_cast<int>(tree.edges.size()); ++eid) {
    const auto& e = tree.edges[eid];
    adj.nbr[fill[e.u]++] = {e.v, eid};
    adj.nbr[fill[e.v]++] = {e.u, eid};
  }
  return adj;
}

/// Scratch shared by the passes of one lumbermark run.
struct CutWorkspace {
  std::vector<int> comp;        ///< per vertex: component id within T', -1 off T'
  std::vector<int> comp_size;   ///< per component id
  std::vector<int> side_u;      ///< per edge: size of u's side of its component
  std::vector<char> cut;        ///< per edge: accepted flag
  std::vector<int> order;       ///< DFS visit order scratch
  std::vector<int> parent_edge; ///< DFS scratch, parallel to order
  std::vector<int> sub;         ///< subtree sizes scratch, per vertex
};

/// Relabels the T'-component reachable from start (ignoring cut edges and
/// off-T' vertices) with component id cid, recomputing its size and the
/// side sizes of all its uncut edges.  Returns the number of vertices
/// touched, which is the unit the relabelling instrumentation counts.
int relabel_component(const SpanningTree& tree, const Adjacency& adj,
                      CutWorkspace& ws, int start, int cid) {
  ws.order.clear();
  ws.order.push_back(start);
  ws.parent_edge.clear();
  ws.parent_edge.push_back(-1);
  ws.comp[start] = cid;
  // Iterative DFS; ws.order doubles as the stack because each vertex is
  // pushed exactly once.
  for (std::size_t t = 0; t < ws.order.size(); ++t) {
    const int v = ws.order[t];
    for (int a = adj.head[v]; a < adj.head[v + 1]; ++a) {
      const auto [w, eid] = adj.nbr[a];
      // Off-T' vertices carry -1; everything else reachable through uncut
      // edges belongs to the component being relabelled.
      if (ws.cut[eid] || ws.comp[w] == cid || ws.comp[w] < 0) continue;
      ws.comp[w] = cid;
      ws.order.push_back(w);
      ws.parent_edge.push_back(eid);
    }
  }
  const int total = static_cast<int>(ws.order.size());
  if (cid >= static_cast<int>(ws.comp_size.size())) {
    ws.comp_size.resize(cid + 1, 0);
  }
  ws.comp_size[cid] = total;
  // Subtree sizes in reverse visit order give, per uncut edge, the size of
  // the side away from the root; the root side is the complement.
  for (int t = total - 1; t >= 0; --t) ws.sub[ws.order[t]] = 1;
  for (int t = total - 1; t >= 1; --t) {
    const int v = ws.order[t];
    const int eid = ws.parent_edge[t];
    const auto& e = tree.edges[eid];
    const int parent = (v == e.u) ? e.v : e.u;
    ws.sub[parent] += ws.sub[v];
    ws.side_u[eid] = (v == e.u) ? ws.sub[v] : total - ws.sub[v];
  }
  return total;
}

struct PassResult {
  bool ok = false;
  std::vector<int> cuts;  ///< accepted edge ids, in acceptance order
};

/// One scan of the T' edges in decreasing (weight, distance, index-pair)
/// order, accepting an edge whenever both fragments it creates within its
/// component hold at least s vertices.
PassResult cut_pass(const SpanningTree& tree, const Adjacency& adj,
                    const std::vector<bool>& excluded, double s, int k,
                    CutWorkspace& ws, long long& relabel_ops) {
  const int n = tree.n;
  const int m = static_cast<int>(tree.edges.size());
  ws.comp.assign(n, -1);
  ws.comp_size.clear();
  ws.side_u.assign(m, 0);
  ws.cut.assign(m, 0);
  ws.sub.assign(n, 0);

  PassResult res;
  int start = -1;
  for (int v = 0; v < n && start < 0; ++v) {
    if (!excluded[v]) start = v;
  }
  // Mark T' membership with a sentinel that relabelling treats as "not yet
  // labelled", then label all of T' as component 0 (removing the leaves of
  // a tree leaves a tree, so T' is connected).
  const int unlabeled = std::numeric_limits<int>::max();
  for (int v = 0; v < n; ++v) ws.comp[v] = excluded[v] ? -1 : unlabeled;
  int next_comp = 0;
  if (start >= 0) {
    relabel_ops += relabel_component(tree, adj, ws, start, next_comp++);
  }
  if (k - 1 == 0) {
    res.ok = true;
    return res;
  }
  if (start < 0) return res;  // T' is empty, no candidates at all

  for (int eid = m - 1; eid >= 0; --eid) {
    const auto& e = tree.edges[eid];
    if (excluded[e.u] || excluded[e.v] || ws.cut[eid]) continue;
    const int c = ws.comp[e.u];
    const int a = ws.side_u[eid];
    const int b = ws.comp_size[c] - a;
    if (a >= s && b >= s) {
      ws.cut[eid] = 1;
      res.cuts.push_back(eid);
      relabel_ops += relabel_component(tree, adj, ws, e.u, next_comp++);
      relabel_ops += relabel_component(tree, adj, ws, e.v, next_comp++);
      if (static_cast<int>(res.cuts.size()) == k - 1) {
        res.ok = true;
        return res;
      }
    }
  }
  return res;
}

/// Components of the full tree minus the cut edges, labelled 1..k by
/// ascending smallest member.
Partition components_partition(const SpanningTree& tree, const Adjacency& adj,
                               const std::vector<char>& cut) {
  const int n = tree.n;
  Partition part;
  part.labels.assign(n, 0);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (part.labels[v] != 0) continue;
    const int label = ++part.k;
    part.labels[v] = label;
    stack.assign(1, v);
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int a = adj.head[x]; a < adj.head[x + 1]; ++a) {
        const auto [w, eid] = adj.nbr[a];
        if (cut[eid] || part.labels[w] != 0) continue;
        part.labels[w] = label;
        stack.push_back(w);
      }
    }
  }
  return part;
}

void check_lumbermark_args(const SpanningTree& tree, const LumbermarkParams& p) {
  if (tree.n < 2 || static_cast<int>(tree.edges.size()) != tree.n - 1) {
    throw std::invalid_argument("tree must span n >= 2 vertices");
  }
  if (p.k < 1 || p.k > tree.n) {
    throw std::invalid_argument("k must be in [1, n]");
  }
  if (!(p.f >= 0.0 && p.f <= 1.0)) {
    throw std::invalid_argument("min cluster factor must be in [0, 1]");
  }
}

}  // namespace

std::vector<bool> leaves(const SpanningTree& tree) {
  std::vector<int> degree(tree.n, 0);
  for (const auto& e : tree.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<bool> mask(tree.n);
  for (int v = 0; v < tree.n; ++v) mask[v] = degree[v] == 1;
  return mask;
}

LumbermarkResult lumbermark_full(const SpanningTree& tree,
                                 const LumbermarkParams& p) {
  check_lumbermark_args(tree, p);
  const int n = tree.n;
  const Adjacency adj = build_adjacency(tree);
  const std::vector<bool> leaf_mask = leaves(tree);
  const std::vector<bool> no_mask(n, false);

  LumbermarkResult res;
  CutWorkspace ws;
  double f_cur = p.f;
  bool leaf_rem = p.leaf_removal;
  PassResult pass;
  int t_prime = 0;
  double s = 0.0;
  while (true) {
    const std::vector<bool>& excluded = leaf_rem ? leaf_mask : no_mask;
    t_prime = n;
    for (int v = 0; v < n; ++v) t_prime -= excluded[v] ? 1 : 0;
    s = f_cur * t_prime / p.k;
    pass = cut_pass(tree, adj, excluded, s, p.k, ws, res.stats.relabel_ops);
    if (pass.ok) break;
    ++res.stats.restarts;
    if (f_cur >= 1.0 / n) {
      f_cur *= 0.5;
    } else if (leaf_rem) {
      leaf_rem = false;
    } else {
      throw std::runtime_error("cannot produce k clusters");
    }
  }

  res.stats.f_used = f_cur;
  res.stats.leaf_removal_used = leaf_rem;
  res.state.leaf_mask = leaf_rem ? leaf_mask : no_mask;
  res.state.t_prime_size = t_prime;
  res.state.s = s;
  res.state.cut_edges = pass.cuts;
  // Final component sizes within T', listed by ascending smallest member.
  std::vector<char> seen;
  for (int v = 0; v < n; ++v) {
    const int c = ws.comp[v];
    if (c < 0) continue;
    if (c >= static_cast<int>(seen.size())) seen.resize(c + 1, 0);
    if (!seen[c]) {
      seen[c] = 1;
      res.state.component_sizes.push_back(ws.comp_size[c]);
    }
  }
  res.partition = components_partition(tree, adj, ws.cut);
  return res;
}

std::vector<Partition> lumbermark_trace(const SpanningTree& tree,
                                        const LumbermarkParams& p) {
  const LumbermarkResult res = lumbermark_full(tree, p);
  const Adjacency adj = build_adjacency(tree);
  std::vector<char> cut(tree.edges.size(), 0);
  std::vector<Partition> trace;
  trace.reserve(res.state.cut_edges.size() + 1);
  trace.push_back(components_partition(tree, adj, cut));
  for (const int eid : res.state.cut_edges) {
    cut[eid] = 1;
    trace.push_back(components_partition(tree, adj, cut));
  }
  return trace;
}

}  // namespace mstclust
