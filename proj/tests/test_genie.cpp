#include <doctest.h>

#include <algorithm>
#include <vector>

#include "mstclust/disjoint_set.hpp"
#include "mstclust/genie.hpp"
#include "mstclust/linkage.hpp"
#include "mstclust/mst.hpp"
#include "test_util.hpp"

using namespace mstclust;

TEST_CASE("gini index of cluster sizes") {
  CHECK(gini_index({2, 2, 2}) == 0.0);
  CHECK(gini_index({1, 3}) == 0.5);
  CHECK(gini_index({1, 1, 1, 97}) == 0.96);
  CHECK(gini_index({5}) == 0.0);
  CHECK(gini_index({7, 1}) == 0.75);
  CHECK_THROWS_AS(gini_index({}), std::invalid_argument);
  CHECK_THROWS_AS(gini_index({3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(gini_index({-1}), std::invalid_argument);
}

TEST_CASE("threshold 1 never fires the gate: plain single linkage") {
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 15 + 12 * rep;
    const PointSet ps = testutil::random_points(n, 2, 700 + rep);
    const SpanningTree t = mst_prim(ps, knn_bruteforce(ps, 2));
    for (int k = 1; k <= 6; ++k) {
      REQUIRE(same_partition(genie(t, {k, 1.0, 2}),
                             single_linkage_cut(t, k)));
    }
  }
}

TEST_CASE("8-point golden case with the gate engaged") {
  const PointSet ps = testutil::points_1d({0, 1, 2, 3, 10, 11, 12, 13});
  const SpanningTree t = mst_prim(ps, knn_bruteforce(ps, 1));
  std::vector<GenieStep> steps;
  const Partition p = genie(t, {2, 0.3, 1}, &steps);
  CHECK(p.labels == std::vector<int>{1, 1, 1, 1, 2, 2, 2, 2});

  // Without the gate, single linkage at k=2 would instead grow one run of
  // four and then eat across the gap; here imbalance forces the right half
  // to assemble first.
  REQUIRE(steps.size() == 6);
  const std::vector<bool> gates = {false, false, false, true, true, true};
  for (int i = 0; i < 6; ++i) CHECK(steps[i].gate_taken == gates[i]);
  CHECK(steps[0].gini_before == 0.0);
  CHECK(steps[1].gini_before == 0.125);
  CHECK(steps[2].gini_before == 0.25);
  CHECK(steps[3].gini_before == 0.375);
  CHECK(steps[4].gini_before == 10.0 / 24.0);
  CHECK(steps[5].gini_before == 0.375);
}

TEST_CASE("k extremes") {
  const PointSet ps = testutil::random_points(11, 2, 44);
  const SpanningTree t = mst_prim(ps, knn_bruteforce(ps, 2));
  const Partition one = genie(t, {1, 0.3, 2});
  for (const int l : one.labels) CHECK(l == 1);
  const Partition all = genie(t, {11, 0.3, 2});
  for (int v = 0; v < 11; ++v) CHECK(all.labels[v] == v + 1);
}

TEST_CASE("invalid parameters are rejected") {
  const PointSet ps = testutil::points_1d({0, 1, 2});
  const SpanningTree t = mst_prim(ps, knn_bruteforce(ps, 1));
  CHECK_THROWS_AS(genie(t, {0, 0.3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(genie(t, {4, 0.3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(genie(t, {2, -0.1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(genie(t, {2, 1.0001, 1}), std::invalid_argument);
}

namespace {

/// Replays a recorded agglomeration from scratch with naive bookkeeping
/// and confirms every recorded step was legal: the Gini value matches, the
/// gate fired exactly when it exceeded the threshold, the consumed edge is
/// the smallest admissible one for the branch taken, and the final labels
/// match the returned partition.
void verify_steps(const SpanningTree& t, const GenieParams& gp,
                  const Partition& got, const std::vector<GenieStep>& steps) {
  const int n = t.n;
  REQUIRE(static_cast<int>(steps.size()) == n - gp.k);
  DisjointSet dsu(n);
  std::vector<char> used(t.edges.size(), 0);

  for (const GenieStep& st : steps) {
    std::vector<int> size_of_root(n, 0);
    for (int v = 0; v < n; ++v) ++size_of_root[dsu.find(v)];
    std::vector<int> sizes;
    for (int v = 0; v < n; ++v) {
      if (size_of_root[v] > 0) sizes.push_back(size_of_root[v]);
    }
    REQUIRE(st.gini_before == gini_index(sizes));
    REQUIRE(st.gate_taken == (st.gini_before > gp.G));

    REQUIRE(st.edge_index >= 0);
    REQUIRE(st.edge_index < static_cast<int>(t.edges.size()));
    REQUIRE_FALSE(used[st.edge_index]);
    const auto& e = t.edges[st.edge_index];
    REQUIRE(dsu.find(e.u) != dsu.find(e.v));

    const int smin = *std::min_element(sizes.begin(), sizes.end());
    if (st.gate_taken) {
      REQUIRE((size_of_root[dsu.find(e.u)] == smin ||
               size_of_root[dsu.find(e.v)] == smin));
    }
    // Minimality of the choice: every unused edge of smaller order must be
    // inadmissible for the branch taken.  (Unused tree edges always join
    // distinct clusters, so in the unconstrained branch none may precede.)
    for (int eid = 0; eid < st.edge_index; ++eid) {
      if (used[eid]) continue;
      if (!st.gate_taken) {
        FAIL("unconstrained merge skipped the smaller unused edge ", eid);
      } else {
        const auto& o = t.edges[eid];
        REQUIRE(size_of_root[dsu.find(o.u)] != smin);
        REQUIRE(size_of_root[dsu.find(o.v)] != smin);
      }
    }
    used[st.edge_index] = 1;
    dsu.unite(e.u, e.v);
  }

  Partition replay;
  replay.labels.assign(n, 0);
  std::vector<int> label_of_root(n, -1);
  for (int v = 0; v < n; ++v) {
    const int r = dsu.find(v);
    if (label_of_root[r] < 0) label_of_root[r] = ++replay.k;
    replay.labels[v] = label_of_root[r];
  }
  REQUIRE(replay.labels == got.labels);
}

}  // namespace

TEST_CASE("recorded traces replay as legal greedy agglomerations") {
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 20 + 14 * rep;
    const int d = 1 + rep % 3;
    const PointSet ps = testutil::random_points(n, d, 900 + rep);
    const SpanningTree t = mst_prim(ps, knn_bruteforce(ps, 3));
    for (const double G : {0.1, 0.3, 0.7}) {
      for (const int k : {1, 2, 5}) {
        const GenieParams gp{k, G, 3};
        std::vector<GenieStep> steps;
        const Partition p = genie(t, gp, &steps);
        verify_steps(t, gp, p, steps);
      }
    }
  }
}

TEST_CASE("clustered blobs of unequal mass still come out intact") {
  // Size-skewed runs keep the gate firing through most of the merge
  // sequence; both groups must still come out whole.  The 0.125 spacing is
  // exactly representable, so every intra-run edge weighs the same and the
  // merge order follows the index-pair tiebreak.
  std::vector<double> xs;
  for (int i = 0; i < 40; ++i) xs.push_back(0.125 * i);          // dense run
  for (int i = 0; i < 5; ++i) xs.push_back(100.0 + 0.125 * i);   // small run
  const PointSet ps = testutil::points_1d(xs);
  const SpanningTree t = mst_prim(ps, knn_bruteforce(ps, 1));
  const Partition p = genie(t, {2, 0.3, 1});
  for (int i = 0; i < 40; ++i) CHECK(p.labels[i] == 1);
  for (int i = 40; i < 45; ++i) CHECK(p.labels[i] == 2);
}
