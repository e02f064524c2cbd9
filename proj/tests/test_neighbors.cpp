#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mstclust/neighbors.hpp"
#include "test_util.hpp"

using namespace mstclust;

TEST_CASE("core distances on the 1-D quartet") {
  const PointSet ps = testutil::points_1d({0, 1, 3, 7});
  SUBCASE("M=2") {
    const NeighborGraph g = knn_bruteforce(ps, 2);
    CHECK(g.core(0) == 3.0);
    CHECK(g.core(1) == 2.0);
    CHECK(g.core(2) == 3.0);
    CHECK(g.core(3) == 6.0);
  }
  SUBCASE("M=1") {
    const NeighborGraph g = knn_bruteforce(ps, 1);
    CHECK(g.core(0) == 1.0);
    CHECK(g.core(1) == 1.0);
    CHECK(g.core(2) == 2.0);
    CHECK(g.core(3) == 4.0);
  }
}

TEST_CASE("knn rejects M out of range") {
  const PointSet ps = testutil::points_1d({0, 1, 3, 7});
  CHECK_THROWS_WITH_AS(knn_bruteforce(ps, 4),
                       "M too large for sample size", std::invalid_argument);
  CHECK_THROWS_AS(knn_bruteforce(ps, 0), std::invalid_argument);
  CHECK_THROWS_AS(knn_spatial(ps, 4), std::invalid_argument);
}

TEST_CASE("n=2 M=1: each point's neighbour is the other") {
  const PointSet ps = testutil::points_1d({0, 5});
  const NeighborGraph g = knn_spatial(ps, 1);
  CHECK(g.nn_index(0, 0) == 1);
  CHECK(g.nn_index(1, 0) == 0);
  CHECK(g.nn_dist(0, 0) == 5.0);
}

TEST_CASE("knn distance ties break by ascending index") {
  // Point 0 at the origin; 1, 2, 3 all at distance 1.
  Matrix m(4, 2);
  m << 0, 0, 1, 0, 0, 1, -1, 0;
  const PointSet ps(std::move(m));
  const NeighborGraph bf = knn_bruteforce(ps, 3);
  CHECK(bf.nn_index(0, 0) == 1);
  CHECK(bf.nn_index(0, 1) == 2);
  CHECK(bf.nn_index(0, 2) == 3);
  const NeighborGraph sp = knn_spatial(ps, 3);
  CHECK(sp.nn_index == bf.nn_index);
}

TEST_CASE("knn_spatial equals knn_bruteforce element-wise") {
  int checked = 0;
  for (const std::uint64_t seed : {1000, 2000}) {
    for (const int n : {5, 23, 60, 120, 200}) {
      for (const int d : {1, 2, 3, 4, 5}) {
        for (const int M : {1, 2, 5, 10}) {
          if (M >= n) continue;
          const PointSet ps = testutil::random_points(n, d, seed + checked);
          const NeighborGraph bf = knn_bruteforce(ps, M);
          const NeighborGraph sp = knn_spatial(ps, M);
          REQUIRE(bf.nn_index == sp.nn_index);
          // Bit-identical distances, not merely close.
          REQUIRE(bf.nn_dist == sp.nn_dist);
          ++checked;
        }
      }
    }
  }
  CHECK(checked >= 100);

  // Duplicate coordinates exercise the tie rule inside the spatial tree.
  PointSet dup = testutil::random_points(40, 2, 7);
  for (int i = 0; i < 20; ++i) dup.points.row(i + 20) = dup.points.row(i);
  const NeighborGraph bf = knn_bruteforce(dup, 3);
  const NeighborGraph sp = knn_spatial(dup, 3);
  CHECK(bf.nn_index == sp.nn_index);
  CHECK(bf.nn_dist == sp.nn_dist);
}

TEST_CASE("neighbor graph invariants") {
  const PointSet ps = testutil::random_points(80, 3, 5);
  const NeighborGraph g = knn_spatial(ps, 7);
  for (int i = 0; i < ps.n(); ++i) {
    for (int m = 0; m < g.M; ++m) {
      CHECK(g.nn_index(i, m) != i);
      CHECK(g.nn_dist(i, m) == euclid_dist(ps, i, g.nn_index(i, m)));
      if (m > 0) CHECK(g.nn_dist(i, m) >= g.nn_dist(i, m - 1));
    }
    CHECK(g.core(i) == g.nn_dist(i, g.M - 1));
  }
}

TEST_CASE("mutreach on the 1-D quartet") {
  const PointSet ps = testutil::points_1d({0, 1, 3, 7});
  const NeighborGraph g = knn_bruteforce(ps, 2);
  const MutReachValue v = mutreach(g, ps, 0, 1);
  CHECK(v.primary == 3.0);
  CHECK(v.tiebreak == 1.0);
  SUBCASE("symmetry") {
    const MutReachValue w = mutreach(g, ps, 1, 0);
    CHECK(w.primary == v.primary);
    CHECK(w.tiebreak == v.tiebreak);
  }
  SUBCASE("identity pair is the zero value") {
    const MutReachValue z = mutreach(g, ps, 2, 2);
    CHECK(z.primary == 0.0);
    CHECK(z.tiebreak == 0.0);
  }
}

TEST_CASE("M=1 mutual reachability coincides with Euclidean distance") {
  const PointSet ps = testutil::random_points(30, 2, 21);
  const NeighborGraph g = knn_bruteforce(ps, 1);
  for (int i = 0; i < ps.n(); ++i) {
    for (int j = i + 1; j < ps.n(); ++j) {
      const MutReachValue v = mutreach(g, ps, i, j);
      CHECK(v.primary == euclid_dist(ps, i, j));
      CHECK(v.primary == v.tiebreak);
    }
  }
}

TEST_CASE("mutual reachability satisfies the metric axioms") {
  for (int inst = 0; inst < 25; ++inst) {
    const int n = 5 + inst;  // up to 29
    const int d = 1 + inst % 3;
    const PointSet ps = testutil::random_points(n, d, 300 + inst);
    for (const int M : {1, 2, 5}) {
      if (M >= n) continue;
      const NeighborGraph g = knn_bruteforce(ps, M);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const MutReachValue vij = mutreach(g, ps, i, j);
          if (i == j) {
            REQUIRE(vij.primary == 0.0);
            continue;
          }
          REQUIRE(vij.primary > 0.0);
          REQUIRE(vij.primary >= euclid_dist(ps, i, j));
          const MutReachValue vji = mutreach(g, ps, j, i);
          REQUIRE(vij.primary == vji.primary);
          for (int l = 0; l < n; ++l) {
            const double via = mutreach(g, ps, i, l).primary +
                               mutreach(g, ps, l, j).primary;
            REQUIRE(vij.primary <= via + 1e-12 * via);
          }
        }
      }
    }
  }
}

TEST_CASE("mutual reachability is nondecreasing in M") {
  const PointSet ps = testutil::random_points(25, 2, 77);
  std::vector<NeighborGraph> graphs;
  for (int M = 1; M <= 10; ++M) graphs.push_back(knn_bruteforce(ps, M));
  for (int i = 0; i < ps.n(); ++i) {
    for (int j = i + 1; j < ps.n(); ++j) {
      for (std::size_t m = 1; m < graphs.size(); ++m) {
        CHECK(mutreach(graphs[m], ps, i, j).primary >=
              mutreach(graphs[m - 1], ps, i, j).primary);
      }
    }
  }
}

TEST_CASE("the edge order is strictly total over all pairs") {
  const PointSet ps = testutil::random_points(40, 2, 13);
  const NeighborGraph g = knn_bruteforce(ps, 3);
  struct Pair {
    MutReachValue v;
    int i, j;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < ps.n(); ++i) {
    for (int j = i + 1; j < ps.n(); ++j) {
      pairs.push_back({mutreach(g, ps, i, j), i, j});
    }
  }
  auto less = [](const Pair& a, const Pair& b) {
    return edge_value_less(a.v, a.i, a.j, b.v, b.i, b.j);
  };
  std::sort(pairs.begin(), pairs.end(), less);
  for (std::size_t t = 1; t < pairs.size(); ++t) {
    // Strict: consecutive sorted pairs never compare equal.
    CHECK(less(pairs[t - 1], pairs[t]));
    CHECK_FALSE(less(pairs[t], pairs[t - 1]));
  }
}
