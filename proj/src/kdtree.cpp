#include "mstclust/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace mstclust {

KdTree::KdTree(const PointSet& ps, int leaf_size)
    : ps_(&ps), n_(ps.n()), d_(ps.d()), leaf_size_(std::max(1, leaf_size)) {
  ps.validate();
  perm_.resize(n_);
  for (int i = 0; i < n_; ++i) perm_[i] = i;
  nodes_.reserve(2 * (n_ / leaf_size_ + 2));
  build(0, n_);
}

int KdTree::build(int begin, int end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{});
  nodes_[id].begin = begin;
  nodes_[id].end = end;

  box_lo_.resize((id + 1) * d_);
  box_hi_.resize((id + 1) * d_);
  double* lo = &box_lo_[id * d_];
  double* hi = &box_hi_[id * d_];
  for (int t = 0; t < d_; ++t) {
    lo[t] = std::numeric_limits<double>::infinity();
    hi[t] = -std::numeric_limits<double>::infinity();
  }
  for (int p = begin; p < end; ++p) {
    const double* x = ps_->row(perm_[p]);
    for (int t = 0; t < d_; ++t) {
      lo[t] = std::min(lo[t], x[t]);
      hi[t] = std::max(hi[t], x[t]);
    }
  }
  if (end - begin <= leaf_size_) return id;

  int dim = 0;
  double width = hi[0] - lo[0];
  for (int t = 1; t < d_; ++t) {
    if (hi[t] - lo[t] > width) {
      width = hi[t] - lo[t];
      dim = t;
    }
  }
  // All points coincide: splitting cannot help, keep an oversized leaf.
  if (!(width > 0.0)) return id;

  const int mid = begin + (end - begin) / 2;
  std::nth_element(perm_.begin() + begin, perm_.begin() + mid,
                   perm_.begin() + end, [this, dim](int a, int b) {
                     const double xa = ps_->points(a, dim);
                     const double xb = ps_->points(b, dim);
                     if (xa != xb) return xa < xb;
                     return a < b;
                   });
  // lo/hi dangle once the children resize the box arrays; only node ids
  // are used from here on.
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double KdTree::box_sq_dist(int node, const double* q) const {
  const double* lo = &box_lo_[node * d_];
  const double* hi = &box_hi_[node * d_];
  // Same accumulation order as the point-to-point kernel, so the bound
  // never exceeds any in-box distance even after rounding.
  double acc = 0.0;
  for (int t = 0; t < d_; ++t) {
    double gap = 0.0;
    if (q[t] < lo[t]) {
      gap = lo[t] - q[t];
    } else if (q[t] > hi[t]) {
      gap = q[t] - hi[t];
    }
    acc += gap * gap;
  }
  return acc;
}

struct KdTree::KnnQuery {
  const double* q = nullptr;
  int qi = -1;
  int M = 0;
  std::vector<std::pair<double, int>> heap;  ///< worst candidate on top
};

void KdTree::knn_node(int node, KnnQuery& q) const {
  const Node& nd = nodes_[node];
  if (nd.left < 0) {
    for (int p = nd.begin; p < nd.end; ++p) {
      const int j = perm_[p];
      if (j == q.qi) continue;
      const std::pair<double, int> cand{sq_dist(q.q, ps_->row(j), d_), j};
      if (static_cast<int>(q.heap.size()) < q.M) {
        q.heap.push_back(cand);
        std::push_heap(q.heap.begin(), q.heap.end());
      } else if (cand < q.heap.front()) {
        std::pop_heap(q.heap.begin(), q.heap.end());
        q.heap.back() = cand;
        std::push_heap(q.heap.begin(), q.heap.end());
      }
    }
    return;
  }
  const double dl = box_sq_dist(nd.left, q.q);
  const double dr = box_sq_dist(nd.right, q.q);
  const int first = dl <= dr ? nd.left : nd.right;
  const int second = dl <= dr ? nd.right : nd.left;
  const double dfirst = std::min(dl, dr);
  const double dsecond = std::max(dl, dr);
  // Descend unless the box is strictly farther than the current worst
  // neighbour; an equal bound can still win on the index tie-break.
  if (static_cast<int>(q.heap.size()) < q.M || dfirst <= q.heap.front().first) {
    knn_node(first, q);
  }
  if (static_cast<int>(q.heap.size()) < q.M ||
      dsecond <= q.heap.front().first) {
    knn_node(second, q);
  }
}

void KdTree::knn(int qi, int M, int* out_idx, double* out_dist) const {
  KnnQuery q;
  q.q = ps_->row(qi);
  q.qi = qi;
  q.M = M;
  q.heap.reserve(M);
  knn_node(0, q);
  std::sort(q.heap.begin(), q.heap.end());
  for (int m = 0; m < M; ++m) {
    out_idx[m] = q.heap[m].second;
    out_dist[m] = std::sqrt(q.heap[m].first);
  }
}

void KdTree::retag(const std::vector<int>& comp) {
  tag_.assign(nodes_.size(), -1);
  // Children always carry larger ids than their parent, so a descending
  // sweep visits every node after both of its children.
  for (int id = static_cast<int>(nodes_.size()) - 1; id >= 0; --id) {
    const Node& nd = nodes_[id];
    if (nd.left < 0) {
      int t = comp[perm_[nd.begin]];
      for (int p = nd.begin + 1; p < nd.end && t >= 0; ++p) {
        if (comp[perm_[p]] != t) t = -1;
      }
      tag_[id] = t;
    } else {
      const int a = tag_[nd.left];
      const int b = tag_[nd.right];
      tag_[id] = (a >= 0 && a == b) ? a : -1;
    }
  }
}

void KdTree::set_cores(const std::vector<double>& core) {
  core_ = core;
  min_core_.assign(nodes_.size(), 0.0);
  for (int id = static_cast<int>(nodes_.size()) - 1; id >= 0; --id) {
    const Node& nd = nodes_[id];
    if (nd.left < 0) {
      double m = core_[perm_[nd.begin]];
      for (int p = nd.begin + 1; p < nd.end; ++p) {
        m = std::min(m, core_[perm_[p]]);
      }
      min_core_[id] = m;
    } else {
      min_core_[id] = std::min(min_core_[nd.left], min_core_[nd.right]);
    }
  }
}

struct KdTree::EdgeQuery {
  const double* q = nullptr;
  int qi = -1;
  int qcomp = -1;
  double qcore = 0.0;
  const std::vector<int>* comp = nullptr;
  double best_primary = std::numeric_limits<double>::infinity();
  double best_tie = std::numeric_limits<double>::infinity();
  int best_j = -1;
};

void KdTree::edge_node(int node, EdgeQuery& q) const {
  if (tag_[node] == q.qcomp) return;  // subtree lies in the query component

  const double box_sqd = box_sq_dist(node, q.q);
  const double box_d = std::sqrt(box_sqd);
  double lb = box_d;
  if (q.qcore > lb) lb = q.qcore;
  if (min_core_[node] > lb) lb = min_core_[node];
  // Prune only when the bound is strictly worse lexicographically: an
  // exact tie can still be beaten through the index-pair rule.
  if (lb > q.best_primary || (lb == q.best_primary && box_d > q.best_tie)) {
    return;
  }

  const Node& nd = nodes_[node];
  if (nd.left < 0) {
    for (int p = nd.begin; p < nd.end; ++p) {
      const int j = perm_[p];
      if ((*q.comp)[j] == q.qcomp) continue;
      const double dd = std::sqrt(sq_dist(q.q, ps_->row(j), d_));
      double primary = dd;
      if (q.qcore > primary) primary = q.qcore;
      if (core_[j] > primary) primary = core_[j];

      bool better;
      if (primary != q.best_primary) {
        better = primary < q.best_primary;
      } else if (dd != q.best_tie) {
        better = dd < q.best_tie;
      } else if (q.best_j < 0) {
        better = true;
      } else {
        const std::pair<int, int> ka{std::min(q.qi, j), std::max(q.qi, j)};
        const std::pair<int, int> kb{std::min(q.qi, q.best_j),
                                     std::max(q.qi, q.best_j)};
        better = ka < kb;
      }
      if (better) {
        q.best_primary = primary;
        q.best_tie = dd;
        q.best_j = j;
      }
    }
    return;
  }
  const double dl = box_sq_dist(nd.left, q.q);
  const double dr = box_sq_dist(nd.right, q.q);
  if (dl <= dr) {
    edge_node(nd.left, q);
    edge_node(nd.right, q);
  } else {
    edge_node(nd.right, q);
    edge_node(nd.left, q);
  }
}

KdTree::EdgeCandidate KdTree::find_edge(int qi,
                                        const std::vector<int>& comp) const {
  EdgeQuery q;
  q.q = ps_->row(qi);
  q.qi = qi;
  q.qcomp = comp[qi];
  q.qcore = core_[qi];
  q.comp = &comp;
  edge_node(0, q);
  EdgeCandidate out;
  out.j = q.best_j;
  out.primary = q.best_primary;
  out.tiebreak = q.best_tie;
  return out;
}

}  // namespace mstclust
