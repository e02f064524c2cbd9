#include "mstclust/eval.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace mstclust {

namespace {

/// First-occurrence renumbering of a label sequence, treating every value
/// (including 0) as an ordinary label.
std::vector<int> canonical_grouping(const std::vector<int>& labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  std::unordered_map<int, int> remap;
  for (const int v : labels) {
    auto [it, inserted] = remap.emplace(v, static_cast<int>(remap.size()));
    out.push_back(it->second);
  }
  return out;
}

inline long long choose2(long long x) { return x * (x - 1) / 2; }

}  // namespace

double adjusted_rand(const Partition& a, const Partition& b) {
  if (a.labels.size() != b.labels.size()) {
    throw std::invalid_argument("partitions must have equal length");
  }
  // Reference noise is excluded; predicted labels (including 0) among the
  // remaining points are all ordinary.
  std::vector<int> ra, rb;
  ra.reserve(a.labels.size());
  rb.reserve(b.labels.size());
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    if (a.labels[i] == 0) continue;
    ra.push_back(a.labels[i]);
    rb.push_back(b.labels[i]);
  }
  const long long n = static_cast<long long>(ra.size());
  if (n < 2) {
    throw std::invalid_argument("fewer than 2 scorable points");
  }
  const std::vector<int> ca = canonical_grouping(ra);
  const std::vector<int> cb = canonical_grouping(rb);
  const int ka = *std::max_element(ca.begin(), ca.end()) + 1;
  const int kb = *std::max_element(cb.begin(), cb.end()) + 1;

  std::vector<long long> table(static_cast<std::size_t>(ka) * kb, 0);
  std::vector<long long> row(ka, 0);
  std::vector<long long> col(kb, 0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    ++table[static_cast<std::size_t>(ca[i]) * kb + cb[i]];
    ++row[ca[i]];
    ++col[cb[i]];
  }
  long long sum_cells = 0;
  for (const long long c : table) sum_cells += choose2(c);
  long long sum_rows = 0;
  for (const long long c : row) sum_rows += choose2(c);
  long long sum_cols = 0;
  for (const long long c : col) sum_cols += choose2(c);

  const long double expected =
      static_cast<long double>(sum_rows) * static_cast<long double>(sum_cols) /
      static_cast<long double>(choose2(n));
  const long double maximum = 0.5L * (sum_rows + sum_cols);
  const long double denom = maximum - expected;
  if (denom == 0.0L) {
    // Both partitions are trivial (all-singletons or all-one-cluster):
    // score 1 when they group identically, 0 otherwise.
    return ca == cb ? 1.0 : 0.0;
  }
  return static_cast<double>((sum_cells - expected) / denom);
}

double best_ar(const Partition& pred, const std::vector<Partition>& refs) {
  if (refs.empty()) throw std::invalid_argument("no reference partitions");
  double best = -1.0;
  for (const auto& ref : refs) {
    best = std::max(best, adjusted_rand(ref, pred));
  }
  return best;
}

ScoreReport aggregate(const std::map<std::string, double>& per_dataset) {
  if (per_dataset.empty()) {
    throw std::invalid_argument("no datasets to aggregate");
  }
  ScoreReport report;
  report.per_dataset = per_dataset;
  std::vector<double> values;
  values.reserve(per_dataset.size());
  double total = 0.0;
  for (const auto& [name, ar] : per_dataset) {
    values.push_back(ar);
    total += ar;
    if (ar < 0.8) ++report.n_bad;
    if (ar >= 0.95) ++report.n_good;
  }
  std::sort(values.begin(), values.end());
  const std::size_t half = values.size() / 2;
  report.median = values.size() % 2 == 1
                      ? values[half]
                      : 0.5 * (values[half - 1] + values[half]);
  report.mean = total / static_cast<double>(values.size());
  return report;
}

}  // namespace mstclust
