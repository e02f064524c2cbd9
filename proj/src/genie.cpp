#include "mstclust/genie.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mstclust/disjoint_set.hpp"

namespace mstclust {

double gini_index(const std::vector<int>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("sizes must be nonempty");
  for (const int c : sizes) {
    if (c < 1) throw std::invalid_argument("sizes must be >= 1");
  }
  const int k = static_cast<int>(sizes.size());
  if (k == 1) return 0.0;
  std::vector<long long> s(sizes.begin(), sizes.end());
  std::sort(s.begin(), s.end());
  // Sorted ascending, sum_{i<j} |c_i - c_j| = sum_i c_(i) * (2i - k + 1).
  long long pair_diff = 0;
  long long total = 0;
  for (int i = 0; i < k; ++i) {
    pair_diff += s[i] * (2LL * i - k + 1);
    total += s[i];
  }
  return static_cast<double>(pair_diff) /
         (static_cast<double>(k - 1) * static_cast<double>(total));
}

namespace {

/// Fenwick tree over values 1..n.
class Fenwick {
 public:
  explicit Fenwick(int n) : n_(n), tree_(n + 1, 0) {}

  void add(int i, long long delta) {
    for (; i <= n_; i += i & -i) tree_[i] += delta;
  }

  long long prefix(int i) const {
    long long s = 0;
    for (; i > 0; i -= i & -i) s += tree_[i];
    return s;
  }

  /// Smallest index whose prefix sum reaches target (target >= 1).
  int lower_bound(long long target) const {
    int pos = 0;
    int step = 1;
    while (2 * step <= n_) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step <= n_ && tree_[pos + step] < target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos + 1;
  }

 private:
  int n_;
  std::vector<long long> tree_;
};

/// Multiset of cluster sizes maintaining the pairwise absolute-difference
/// sum (the Gini numerator) under O(log n) inserts and erases.
class SizeLedger {
 public:
  explicit SizeLedger(int max_value) : cnt_(max_value), sum_(max_value) {}

  void insert(int x) {
    pair_diff_ += contribution(x);
    cnt_.add(x, 1);
    sum_.add(x, x);
    ++count_;
    total_ += x;
  }

  void erase(int x) {
    cnt_.add(x, -1);
    sum_.add(x, -x);
    --count_;
    total_ -= x;
    pair_diff_ -= contribution(x);
  }

  double gini() const {
    if (count_ <= 1) return 0.0;
    return static_cast<double>(pair_diff_) /
           (static_cast<double>(count_ - 1) * static_cast<double>(total_));
  }

  int min_size() const { return cnt_.lower_bound(1); }

 private:
  /// Sum of |x - y| over all elements y currently stored (copies of x
  /// contribute zero, so this is order-independent around an update of x).
  long long contribution(int x) const {
    const long long cnt_less = cnt_.prefix(x - 1);
    const long long sum_less = sum_.prefix(x - 1);
    const long long cnt_greater = count_ - cnt_.prefix(x);
    const long long sum_greater = total_ - sum_.prefix(x);
    return static_cast<long long>(x) * cnt_less - sum_less + sum_greater -
           static_cast<long long>(x) * cnt_greater;
  }

  Fenwick cnt_;
  Fenwick sum_;
  long long pair_diff_ = 0;
  long long count_ = 0;
  long long total_ = 0;
};

using MinEdgeHeap =
    std::priority_queue<int, std::vector<int>, std::greater<int>>;

}  // namespace

Partition genie(const SpanningTree& tree, const GenieParams& p,
                std::vector<GenieStep>* trace) {
  const int n = tree.n;
  if (n < 2 || static_cast<int>(tree.edges.size()) != n - 1) {
    throw std::invalid_argument("tree must span n >= 2 vertices");
  }
  if (p.k < 1 || p.k > n) throw std::invalid_argument("k must be in [1, n]");
  if (!(p.G >= 0.0 && p.G <= 1.0)) {
    throw std::invalid_argument("Gini threshold must be in [0, 1]");
  }
  if (trace) trace->clear();

  const int m = n - 1;
  DisjointSet dsu(n);
  // Each cluster root owns a lazy min-heap of the ids of tree edges
  // incident to its members; ids ascend with the adjusted edge order.
  std::vector<MinEdgeHeap> heap(n);
  for (int eid = 0; eid < m; ++eid) {
    heap[tree.edges[eid].u].push(eid);
    heap[tree.edges[eid].v].push(eid);
  }
  SizeLedger ledger(n);
  std::set<std::pair<int, int>> by_size;  // (cluster size, root)
  for (int v = 0; v < n; ++v) {
    ledger.insert(1);
    by_size.insert({1, v});
  }
  std::vector<char> used(m, 0);
  int next_edge = 0;

  for (int step = 0; step < n - p.k; ++step) {
    const double g = ledger.gini();
    const bool gate = g > p.G;
    int eid;
    if (!gate) {
      // Balanced enough: consume the smallest unused edge.  Every unused
      // tree edge joins two distinct clusters, because clusters are
      // connected subtrees whose internal edges are all consumed.
      while (used[next_edge]) ++next_edge;
      eid = next_edge++;
    } else {
      // Too imbalanced: the merge must involve a minimal-size cluster;
      // take the smallest-order unused edge incident to any of them.
      const int smin = ledger.min_size();
      eid = -1;
      for (auto it = by_size.lower_bound({smin, -1});
           it != by_size.end() && it->first == smin; ++it) {
        MinEdgeHeap& h = heap[it->second];
        while (!h.empty() && used[h.top()]) h.pop();
        if (!h.empty() && (eid < 0 || h.top() < eid)) eid = h.top();
      }
    }
    used[eid] = 1;
    if (trace) trace->push_back({g, gate, eid});

    const auto& e = tree.edges[eid];
    const int ra = dsu.find(e.u);
    const int rb = dsu.find(e.v);
    const int sa = dsu.size(ra);
    const int sb = dsu.size(rb);
    dsu.unite(ra, rb);
    const int r = dsu.find(ra);
    const int other = r == ra ? rb : ra;
    if (heap[r].size() < heap[other].size()) std::swap(heap[r], heap[other]);
    while (!heap[other].empty()) {
      heap[r].push(heap[other].top());
      heap[other].pop();
    }
    ledger.erase(sa);
    ledger.erase(sb);
    ledger.insert(sa + sb);
    by_size.erase({sa, ra});
    by_size.erase({sb, rb});
    by_size.insert({sa + sb, r});
  }

  Partition part;
  part.labels.assign(n, 0);
  std::vector<int> label_of_root(n, -1);
  for (int v = 0; v < n; ++v) {
    const int r = dsu.find(v);
    if (label_of_root[r] < 0) label_of_root[r] = ++part.k;
    part.labels[v] = label_of_root[r];
  }
  return part;
}

}  // namespace mstclust
