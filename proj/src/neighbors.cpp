#include "mstclust/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "mstclust/kdtree.hpp"

namespace mstclust {

namespace {

void check_knn_args(const PointSet& ps, int M) {
  ps.validate();
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  if (M >= ps.n()) throw std::invalid_argument("M too large for sample size");
}

}  // namespace

NeighborGraph knn_bruteforce(const PointSet& ps, int M) {
  check_knn_args(ps, M);
  const int n = ps.n();
  NeighborGraph g;
  g.M = M;
  g.nn_index.resize(n, M);
  g.nn_dist.resize(n, M);
#pragma omp parallel
  {
    std::vector<std::pair<double, int>> cand(n - 1);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      int c = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        cand[c++] = {sq_dist(ps, i, j), j};
      }
      // (squared distance, index) pairs: ties resolve by ascending index.
      std::partial_sort(cand.begin(), cand.begin() + M, cand.end());
      for (int m = 0; m < M; ++m) {
        g.nn_index(i, m) = cand[m].second;
        g.nn_dist(i, m) = std::sqrt(cand[m].first);
      }
    }
  }
  return g;
}

NeighborGraph knn_spatial(const PointSet& ps, int M) {
  check_knn_args(ps, M);
  const int n = ps.n();
  const KdTree tree(ps);
  NeighborGraph g;
  g.M = M;
  g.nn_index.resize(n, M);
  g.nn_dist.resize(n, M);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    tree.knn(i, M, &g.nn_index(i, 0), &g.nn_dist(i, 0));
  }
  return g;
}

MutReachValue mutreach(const NeighborGraph& ng, const PointSet& ps, int i,
                       int j) {
  if (i == j) return {0.0, 0.0};
  const double dd = euclid_dist(ps, i, j);
  double primary = dd;
  if (ng.core(i) > primary) primary = ng.core(i);
  if (ng.core(j) > primary) primary = ng.core(j);
  return {primary, dd};
}

}  // namespace mstclust
