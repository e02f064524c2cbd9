#include "mstclust/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

namespace mstclust {

void PointSet::validate() const {
  if (points.rows() < 1 || points.cols() < 1) {
    throw std::invalid_argument("point set must have n >= 1 and d >= 1");
  }
  if (!points.allFinite()) {
    throw std::invalid_argument("point set contains non-finite coordinates");
  }
}

Partition Partition::from_raw(const std::vector<int>& raw) {
  Partition p;
  p.labels.reserve(raw.size());
  std::unordered_map<int, int> remap;
  for (const int v : raw) {
    if (v < 0) {
      throw std::invalid_argument("labels must be >= 0");
    }
    if (v == 0) {
      p.labels.push_back(0);
      continue;
    }
    auto [it, inserted] = remap.emplace(v, p.k + 1);
    if (inserted) ++p.k;
    p.labels.push_back(it->second);
  }
  return p;
}

bool same_partition(const Partition& a, const Partition& b) {
  if (a.labels.size() != b.labels.size()) return false;
  const int n = a.n();
  std::unordered_map<int, int> fwd, bwd;
  for (int i = 0; i < n; ++i) {
    const int la = a.labels[i], lb = b.labels[i];
    if ((la == 0) != (lb == 0)) return false;
    if (la == 0) continue;
    auto [itf, newf] = fwd.emplace(la, lb);
    if (!newf && itf->second != lb) return false;
    auto [itb, newb] = bwd.emplace(lb, la);
    if (!newb && itb->second != la) return false;
  }
  return true;
}

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (const char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  if (delim == ' ') {
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
  }
  std::string cur;
  for (const char c : line) {
    if (c == delim) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& tok, const std::string& name,
                    std::size_t lineno) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(name + ": non-numeric token '" + tok + "' at line " +
                     std::to_string(lineno));
  }
  if (pos != tok.size()) {
    throw ParseError(name + ": non-numeric token '" + tok + "' at line " +
                     std::to_string(lineno));
  }
  return v;
}

}  // namespace

PointSet read_points(std::istream& in, std::optional<char> delimiter,
                     const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  char delim = delimiter.value_or(' ');
  bool delim_decided = delimiter.has_value();
  std::size_t d = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    if (!delim_decided) {
      delim = line.find(',') != std::string::npos ? ',' : ' ';
      delim_decided = true;
    }
    const auto toks = split_line(line, delim);
    std::vector<double> row;
    row.reserve(toks.size());
    for (const auto& tok : toks) row.push_back(parse_double(tok, name, lineno));
    if (rows.empty()) {
      d = row.size();
    } else if (row.size() != d) {
      throw ParseError(name + ": expected " + std::to_string(d) +
                       " values but got " + std::to_string(row.size()) +
                       " at line " + std::to_string(lineno));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError(name + ": no data rows");
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  PointSet ps(std::move(m));
  ps.validate();
  return ps;
}

PointSet load_points(const std::string& path, std::optional<char> delimiter) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open file: " + path);
  }
  return read_points(in, delimiter, path);
}

Partition read_labels(std::istream& in, const std::string& name) {
  std::vector<int> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) {
      std::size_t pos = 0;
      long v = 0;
      try {
        v = std::stol(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size()) {
        throw ParseError(name + ": non-integer label '" + tok + "' at line " +
                         std::to_string(lineno));
      }
      if (v < 0) {
        throw ParseError(name + ": negative label at line " +
                         std::to_string(lineno));
      }
      raw.push_back(static_cast<int>(v));
    }
  }
  if (raw.empty()) {
    throw ParseError(name + ": no labels");
  }
  return Partition::from_raw(raw);
}

Partition load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open file: " + path);
  }
  return read_labels(in, path);
}

void write_points(std::ostream& out, const PointSet& ps) {
  char buf[64];
  for (int i = 0; i < ps.n(); ++i) {
    for (int j = 0; j < ps.d(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", ps.points(i, j));
      if (j > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

void write_points(const std::string& path, const PointSet& ps) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  write_points(out, ps);
}

void write_labels(std::ostream& out, const Partition& p) {
  for (const int v : p.labels) out << v << '\n';
}

void write_labels(const std::string& path, const Partition& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  write_labels(out, p);
}

namespace {

// mt19937_64 output is fully specified by the standard; the transforms
// below avoid std::*_distribution, whose streams are not.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
}

// Box-Muller; one pair of uniforms per pair of normals.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01(rng_);
    const double u2 = uniform01(rng_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

std::pair<PointSet, Partition> make_blobs(
    int k, const std::vector<int>& sizes,
    const std::vector<std::vector<double>>& centers, double sigma,
    std::uint64_t seed) {
  if (k < 1 || sizes.size() != static_cast<std::size_t>(k) ||
      centers.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument(
        "make_blobs: sizes and centers must both have length k");
  }
  const std::size_t d = centers.front().size();
  for (const auto& c : centers) {
    if (c.size() != d) {
      throw std::invalid_argument(
          "make_blobs: all centers must have equal dimensionality");
    }
  }
  if (d == 0) throw std::invalid_argument("make_blobs: centers are empty");
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("make_blobs: sigma must be > 0");
  }
  long total = 0;
  for (const int s : sizes) {
    if (s < 1) throw std::invalid_argument("make_blobs: sizes must be >= 1");
    total += s;
  }

  Matrix m(total, static_cast<Eigen::Index>(d));
  Partition part;
  part.labels.reserve(static_cast<std::size_t>(total));
  part.k = k;
  GaussianSource gauss(seed);
  Eigen::Index row = 0;
  for (int j = 0; j < k; ++j) {
    for (int t = 0; t < sizes[static_cast<std::size_t>(j)]; ++t, ++row) {
      for (std::size_t c = 0; c < d; ++c) {
        m(row, static_cast<Eigen::Index>(c)) =
            centers[static_cast<std::size_t>(j)][c] + sigma * gauss.next();
      }
      part.labels.push_back(j + 1);
    }
  }
  return {PointSet(std::move(m)), std::move(part)};
}

PointSet jitter(const PointSet& ps, double eps, std::uint64_t seed) {
  ps.validate();
  if (eps <= 0.0) {
    const double range = ps.points.maxCoeff() - ps.points.minCoeff();
    eps = 1e-9 * (range > 0.0 ? range : 1.0);
  }
  std::mt19937_64 rng(seed);
  Matrix m = ps.points;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) += eps * (2.0 * uniform01(rng) - 1.0);
    }
  }
  return PointSet(std::move(m));
}

}  // namespace mstclust
