#pragma once

#include <map>
#include <string>
#include <vector>

#include "mstclust/types.hpp"

namespace mstclust {

/// Adjusted Rand index (Hubert-Arabie) between a reference partition `a`
/// and a prediction `b`.  Points whose *reference* label is 0 (noise) are
/// excluded from the contingency table; predicted noise among the
/// remaining points counts as an ordinary label.  When both partitions are
/// trivial on the scorable points (degenerate denominator), returns 1 if
/// they are equal as set partitions and 0 otherwise.
///
/// Throws std::invalid_argument on length mismatch or when fewer than two
/// scorable points remain.
double adjusted_rand(const Partition& a, const Partition& b);

/// Maximal adjusted_rand(ref, pred) over the given reference partitions.
/// Throws std::invalid_argument when refs is empty.
double best_ar(const Partition& pred, const std::vector<Partition>& refs);

/// Aggregate of per-dataset best-AR scores.
struct ScoreReport {
  std::map<std::string, double> per_dataset;
  int n_bad = 0;   ///< count of datasets with AR < 0.8 (strict)
  int n_good = 0;  ///< count of datasets with AR >= 0.95
  double median = 0.0;
  double mean = 0.0;
};

/// Counts, median (midpoint of the two central values for even counts) and
/// arithmetic mean of the given scores.  Throws std::invalid_argument on
/// empty input.
ScoreReport aggregate(const std::map<std::string, double>& per_dataset);

}  // namespace mstclust
