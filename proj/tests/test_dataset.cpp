#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mstclust/dataset.hpp"
#include "test_util.hpp"

using namespace mstclust;

TEST_CASE("load_points parses whitespace-separated rows") {
  std::istringstream in("0 0\n1 0\n");
  const PointSet ps = read_points(in, std::nullopt, "test");
  CHECK(ps.n() == 2);
  CHECK(ps.d() == 2);
  CHECK(ps.points(1, 0) == 1.0);
}

TEST_CASE("load_points auto-detects comma delimiter") {
  std::istringstream in("1,2\n3,4\n5,6\n");
  const PointSet ps = read_points(in, std::nullopt, "test");
  CHECK(ps.n() == 3);
  CHECK(ps.d() == 2);
  CHECK(ps.points(2, 1) == 6.0);
}

TEST_CASE("load_points skips comments and blank lines") {
  std::istringstream in("# header\n\n1 2\n  \n3 4\n");
  const PointSet ps = read_points(in, std::nullopt, "test");
  CHECK(ps.n() == 2);
}

TEST_CASE("load_points rejects ragged rows with the line number") {
  std::istringstream in("1 2\n3\n");
  CHECK_THROWS_WITH_AS(read_points(in, std::nullopt, "test"),
                       doctest::Contains("line 2"), ParseError);
}

TEST_CASE("load_points rejects non-numeric tokens and empty input") {
  std::istringstream bad("1 x\n");
  CHECK_THROWS_AS(read_points(bad, std::nullopt, "test"), ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_points(empty, std::nullopt, "test"), ParseError);
}

TEST_CASE("load_labels renumbers to contiguous 1..k keeping noise") {
  std::istringstream in("0\n3\n3\n7\n");
  const Partition p = read_labels(in, "test");
  CHECK(p.labels == std::vector<int>{0, 1, 1, 2});
  CHECK(p.k == 2);
}

TEST_CASE("load_labels is the identity on contiguous labellings") {
  std::istringstream in("1\n1\n2\n");
  const Partition p = read_labels(in, "test");
  CHECK(p.labels == std::vector<int>{1, 1, 2});
  CHECK(p.k == 2);
}

TEST_CASE("load_labels rejects negatives and non-integers") {
  std::istringstream neg("-1\n");
  CHECK_THROWS_AS(read_labels(neg, "test"), ParseError);
  std::istringstream word("abc\n");
  CHECK_THROWS_AS(read_labels(word, "test"), ParseError);
}

TEST_CASE("point round-trip preserves values exactly") {
  const PointSet ps = testutil::random_points(37, 3, 99, 1000.0);
  std::ostringstream out;
  write_points(out, ps);
  std::istringstream in(out.str());
  const PointSet back = read_points(in, std::nullopt, "roundtrip");
  REQUIRE(back.n() == ps.n());
  REQUIRE(back.d() == ps.d());
  for (int i = 0; i < ps.n(); ++i) {
    for (int j = 0; j < ps.d(); ++j) {
      // 17 significant digits round-trip doubles bit-exactly.
      CHECK(back.points(i, j) == ps.points(i, j));
    }
  }
}

TEST_CASE("label round-trip is exact") {
  Partition p = Partition::from_raw({0, 2, 2, 1, 0, 3});
  std::ostringstream out;
  write_labels(out, p);
  std::istringstream in(out.str());
  const Partition back = read_labels(in, "roundtrip");
  CHECK(back.labels == p.labels);
}

TEST_CASE("same_partition ignores label names but not grouping") {
  const Partition a = Partition::from_raw({1, 1, 2, 2});
  const Partition b = Partition::from_raw({2, 2, 1, 1});
  const Partition c = Partition::from_raw({1, 2, 2, 1});
  CHECK(same_partition(a, b));
  CHECK_FALSE(same_partition(a, c));
  const Partition noise_a = Partition::from_raw({0, 1, 1});
  const Partition noise_b = Partition::from_raw({1, 1, 1});
  CHECK_FALSE(same_partition(noise_a, noise_b));
}

TEST_CASE("make_blobs is deterministic and near its centers") {
  const auto [ps, ref] = make_blobs(1, {3}, {{0.0, 0.0}}, 0.1, 7);
  CHECK(ps.n() == 3);
  CHECK(ps.d() == 2);
  CHECK(ref.labels == std::vector<int>{1, 1, 1});
  for (int i = 0; i < 3; ++i) {
    CHECK(std::hypot(ps.points(i, 0), ps.points(i, 1)) < 1.0);
  }
  const auto [ps2, ref2] = make_blobs(1, {3}, {{0.0, 0.0}}, 0.1, 7);
  CHECK(ps.points == ps2.points);
  const auto [ps3, ref3] = make_blobs(1, {3}, {{0.0, 0.0}}, 0.1, 8);
  CHECK(ps.points != ps3.points);
}

TEST_CASE("make_blobs keeps far-apart blobs separated") {
  const auto [ps, ref] =
      make_blobs(3, {500, 500, 500}, {{0, 0}, {5, 0}, {0, 5}}, 0.1, 42);
  REQUIRE(ps.n() == 1500);
  double min_cross = 1e300;
  for (int i = 0; i < ps.n(); ++i) {
    for (int j = i + 1; j < ps.n(); ++j) {
      if (ref.labels[i] == ref.labels[j]) continue;
      min_cross = std::min(min_cross, euclid_dist(ps, i, j));
    }
  }
  CHECK(min_cross > 10 * 0.1);
}

TEST_CASE("make_blobs validates its arguments") {
  CHECK_THROWS_AS(make_blobs(2, {3}, {{0.0}, {1.0}}, 0.1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_blobs(1, {3}, {{0.0}}, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_blobs(2, {3, 3}, {{0.0}, {1.0, 2.0}}, 0.1, 1),
                  std::invalid_argument);
}

TEST_CASE("jitter moves every coordinate by at most eps") {
  const PointSet ps = testutil::random_points(50, 2, 11);
  const PointSet out = jitter(ps, 1e-6, 3);
  bool moved = false;
  for (int i = 0; i < ps.n(); ++i) {
    for (int j = 0; j < 2; ++j) {
      const double delta = std::abs(out.points(i, j) - ps.points(i, j));
      CHECK(delta <= 1e-6);
      moved = moved || delta > 0.0;
    }
  }
  CHECK(moved);
}

TEST_CASE("jitter default amplitude scales with the data range") {
  const PointSet ps = testutil::random_points(20, 2, 11, 1000.0);
  const PointSet out = jitter(ps, 0.0, 3);
  const double range =
      ps.points.maxCoeff() - ps.points.minCoeff();
  for (int i = 0; i < ps.n(); ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(out.points(i, j) - ps.points(i, j)) <= 1e-9 * range);
    }
  }
}

TEST_CASE("validate rejects non-finite coordinates") {
  Matrix m(1, 2);
  m << 1.0, std::nan("");
  CHECK_THROWS_AS(PointSet(std::move(m)).validate(), std::invalid_argument);
}
