#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mstclust/types.hpp"

namespace mstclust {

/// Thrown on malformed input files; the message names the offending line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a delimited text file of points, one row per line. Lines that are
/// empty or start with '#' are skipped. If no delimiter is given, ',' is
/// used when the first data line contains one, otherwise whitespace.
PointSet load_points(const std::string& path,
                     std::optional<char> delimiter = std::nullopt);
PointSet read_points(std::istream& in, std::optional<char> delimiter,
                     const std::string& name);

/// Reads one integer label (>= 0) per line and renumbers nonzero labels to
/// the contiguous range 1..k preserving first-occurrence order.
Partition load_labels(const std::string& path);
Partition read_labels(std::istream& in, const std::string& name);

/// One row per line, space separated, 17 significant digits.
void write_points(const std::string& path, const PointSet& ps);
void write_points(std::ostream& out, const PointSet& ps);

/// One label per line.
void write_labels(const std::string& path, const Partition& p);
void write_labels(std::ostream& out, const Partition& p);

/// Isotropic Gaussian blobs: sizes[j] points around centers[j] with
/// standard deviation sigma. Reference labels are 1..k in blob order.
/// Output is bit-reproducible for a fixed seed.
std::pair<PointSet, Partition> make_blobs(
    int k, const std::vector<int>& sizes,
    const std::vector<std::vector<double>>& centers, double sigma,
    std::uint64_t seed);

/// Adds independent uniform noise in [-eps, eps] to every coordinate.
/// eps <= 0 selects the default 1e-9 * (global coordinate range).
PointSet jitter(const PointSet& ps, double eps, std::uint64_t seed);

}  // namespace mstclust
