#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mstclust/types.hpp"

namespace testutil {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

/// Uniform points in [0, scale]^d, deterministic per seed.
inline mstclust::PointSet random_points(int n, int d, std::uint64_t seed,
                                        double scale = 1.0) {
  std::mt19937_64 rng(seed);
  mstclust::Matrix m(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = scale * uniform01(rng);
  }
  return mstclust::PointSet(std::move(m));
}

/// 1-D point set from a plain list of coordinates.
inline mstclust::PointSet points_1d(const std::vector<double>& xs) {
  mstclust::Matrix m(static_cast<int>(xs.size()), 1);
  for (int i = 0; i < static_cast<int>(xs.size()); ++i) m(i, 0) = xs[i];
  return mstclust::PointSet(std::move(m));
}

/// Random label vector over {1..kmax}, optionally with some zeros (noise).
inline std::vector<int> random_labels(int n, int kmax, std::uint64_t seed,
                                      double noise_prob = 0.0) {
  std::mt19937_64 rng(seed);
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    if (noise_prob > 0.0 && uniform01(rng) < noise_prob) {
      out[i] = 0;
    } else {
      out[i] = 1 + static_cast<int>(uniform01(rng) * kmax) % kmax;
    }
  }
  return out;
}

}  // namespace testutil
