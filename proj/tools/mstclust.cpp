// Command-line surface of the clustering toolkit: single-dataset
// clustering, spanning-tree dumps, partition evaluation, and benchmark /
// parameter-sweep harnesses over dataset directories.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mstclust/dataset.hpp"
#include "mstclust/eval.hpp"
#include "mstclust/genie.hpp"
#include "mstclust/linkage.hpp"
#include "mstclust/lumbermark.hpp"
#include "mstclust/mst.hpp"
#include "mstclust/neighbors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mstclust;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void apply_threads(int threads) {
  if (threads == 0) {
    if (const char* env = std::getenv("MSTCLUST_THREADS")) {
      threads = std::atoi(env);
    }
  }
#ifdef _OPENMP
  if (threads >= 1) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

struct PipelineOpts {
  int M = 1;
  std::string mst_algo = "auto";
  bool jitter = false;
  double jitter_eps = 0.0;
  std::uint64_t seed = 0;
};

struct Timings {
  double knn_s = 0.0;
  double mst_s = 0.0;
  double cut_s = 0.0;
};

PointSet prepare_points(PointSet ps, const PipelineOpts& opt) {
  if (opt.jitter) return jitter(ps, opt.jitter_eps, opt.seed);
  return ps;
}

SpanningTree build_tree(const PointSet& ps, const PipelineOpts& opt,
                        Timings* tm) {
  const double t0 = now_s();
  const NeighborGraph ng = knn_spatial(ps, opt.M);
  const double t1 = now_s();
  SpanningTree tree;
  std::string algo = opt.mst_algo;
  if (algo == "auto") {
    algo = (ps.n() <= 128 || ps.d() > 6) ? "prim" : "boruvka";
  }
  if (algo == "prim") {
    tree = mst_prim(ps, ng);
  } else if (algo == "boruvka") {
    tree = mst_boruvka_spatial(ps, ng);
  } else if (algo == "kruskal") {
    tree = mst_kruskal_oracle(ps, ng);
  } else {
    throw UsageError("unknown --mst-algo: " + algo);
  }
  const double t2 = now_s();
  if (tm) {
    tm->knn_s = t1 - t0;
    tm->mst_s = t2 - t1;
  }
  return tree;
}

std::string default_out_path(const std::string& in, const char* ext) {
  fs::path p(in);
  p.replace_extension(ext);
  return p.string();
}

/// Formats a metric with at least one decimal so 1 prints as "1.0".
std::string format_metric(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  std::string s(buf);
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  return s;
}

// ---------------------------------------------------------------------------
// cluster

struct ClusterOpts {
  std::string in;
  std::string delimiter;
  std::string alg = "lumbermark";
  int k = 0;
  int M = -1;  // -1: per-algorithm default
  double f = 0.25;
  double G = 0.3;
  double eps = 0.0;
  bool leaf_removal = true;
  std::string out;
  int threads = 0;
  PipelineOpts pipe;
};

int default_m_for(const std::string& alg) {
  if (alg == "lumbermark") return 5;
  if (alg == "genie") return 3;
  return 1;
}

std::optional<char> delimiter_of(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s.size() != 1) throw UsageError("--delimiter must be a single character");
  return s[0];
}

int cmd_cluster(ClusterOpts& o) {
  if (o.alg == "dbscan-star") {
    if (!(o.eps > 0.0)) {
      throw UsageError("--eps > 0 is required for --alg dbscan-star");
    }
  } else if (o.k < 1) {
    throw UsageError("--k >= 1 is required for --alg " + o.alg);
  }
  if (!(o.f >= 0.0 && o.f <= 1.0)) throw UsageError("--f must be in [0, 1]");
  if (!(o.G >= 0.0 && o.G <= 1.0)) throw UsageError("--G must be in [0, 1]");
  if (o.M == 0 || o.M < -1) throw UsageError("--M must be >= 1");
  o.pipe.M = o.M >= 1 ? o.M : default_m_for(o.alg);
  apply_threads(o.threads);

  const PointSet ps =
      prepare_points(load_points(o.in, delimiter_of(o.delimiter)), o.pipe);
  Timings tm;
  const SpanningTree tree = build_tree(ps, o.pipe, &tm);

  const double t0 = now_s();
  Partition part;
  json extra;
  if (o.alg == "lumbermark") {
    const LumbermarkResult res =
        lumbermark_full(tree, {o.k, o.f, o.pipe.M, o.leaf_removal});
    part = std::move(res.partition);
    extra["f_used"] = res.stats.f_used;
    extra["leaf_removal_used"] = res.stats.leaf_removal_used;
    extra["restarts"] = res.stats.restarts;
  } else if (o.alg == "genie") {
    part = genie(tree, {o.k, o.G, o.pipe.M});
  } else if (o.alg == "single") {
    part = single_linkage_cut(tree, o.k);
  } else if (o.alg == "dbscan-star") {
    part = dbscan_star_cut(tree, o.eps);
  } else {
    throw UsageError("unknown --alg: " + o.alg);
  }
  tm.cut_s = now_s() - t0;

  const std::string out =
      o.out.empty() ? default_out_path(o.in, ".labels") : o.out;
  if (out == "-") {
    write_labels(std::cout, part);  // labels own stdout; no summary
    return 0;
  }
  write_labels(out, part);

  json summary;
  summary["command"] = "cluster";
  summary["algorithm"] = o.alg;
  summary["n"] = ps.n();
  summary["d"] = ps.d();
  summary["k_found"] = part.k;
  summary["params"]["M"] = o.pipe.M;
  if (o.alg == "dbscan-star") {
    summary["params"]["eps"] = o.eps;
  } else {
    summary["params"]["k"] = o.k;
  }
  if (o.alg == "lumbermark") {
    summary["params"]["f"] = o.f;
    summary["params"]["leaf_removal"] = o.leaf_removal;
    summary["lumbermark"] = extra;
  }
  if (o.alg == "genie") summary["params"]["G"] = o.G;
  summary["timings"] = {
      {"knn_s", tm.knn_s}, {"mst_s", tm.mst_s}, {"cut_s", tm.cut_s}};
  summary["out"] = out;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// mst

struct MstOpts {
  std::string in;
  std::string delimiter;
  int M = 1;
  std::string out;
  int threads = 0;
  PipelineOpts pipe;
};

int cmd_mst(MstOpts& o) {
  o.pipe.M = o.M;
  apply_threads(o.threads);
  const PointSet ps =
      prepare_points(load_points(o.in, delimiter_of(o.delimiter)), o.pipe);
  Timings tm;
  const SpanningTree tree = build_tree(ps, o.pipe, &tm);

  const std::string out = o.out.empty() ? default_out_path(o.in, ".mst") : o.out;
  if (out == "-") {
    write_tree(std::cout, tree);
    return 0;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write file: " + out);
  write_tree(f, tree);

  json summary;
  summary["command"] = "mst";
  summary["n"] = ps.n();
  summary["d"] = ps.d();
  summary["M"] = o.M;
  summary["total_weight"] = tree.total_weight();
  summary["timings"] = {{"knn_s", tm.knn_s}, {"mst_s", tm.mst_s}};
  summary["out"] = out;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalOpts {
  std::string pred;
  std::vector<std::string> refs;
};

int cmd_eval(EvalOpts& o) {
  const Partition pred = load_labels(o.pred);
  json per_ref = json::array();
  double best = -1.0;
  for (const auto& path : o.refs) {
    const Partition ref = load_labels(path);
    const double ar = adjusted_rand(ref, pred);
    per_ref.push_back({{"ref", path}, {"ar", ar}});
    best = std::max(best, ar);
  }
  json summary;
  summary["command"] = "eval";
  summary["best_ar"] = best;
  summary["per_ref"] = per_ref;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bench / sweep shared dataset handling

struct Dataset {
  std::string name;
  fs::path data;
  std::vector<fs::path> label_files;
};

std::vector<Dataset> discover_datasets(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw std::runtime_error("not a directory: " + dir);
  }
  std::map<std::string, Dataset> found;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string fname = entry.path().filename().string();
    const std::string suffix = ".data.csv";
    if (fname.size() > suffix.size() &&
        fname.compare(fname.size() - suffix.size(), suffix.size(), suffix) ==
            0) {
      const std::string name = fname.substr(0, fname.size() - suffix.size());
      found[name].name = name;
      found[name].data = entry.path();
    }
  }
  for (auto& [name, ds] : found) {
    for (int i = 0;; ++i) {
      fs::path lp = fs::path(dir) / (name + ".labels" + std::to_string(i) +
                                     std::string(".csv"));
      if (!fs::is_regular_file(lp)) {
        // labels files are numbered from 0, but tolerate starting at 1
        if (i == 0) continue;
        break;
      }
      ds.label_files.push_back(lp);
    }
  }
  std::vector<Dataset> out;
  for (auto& [name, ds] : found) {
    if (!ds.data.empty() && !ds.label_files.empty()) out.push_back(ds);
  }
  return out;
}

struct LoadedDataset {
  std::string name;
  PointSet points;
  std::vector<Partition> refs;
};

std::vector<LoadedDataset> load_datasets(const std::string& dir,
                                         const PipelineOpts& pipe) {
  std::vector<LoadedDataset> out;
  for (const auto& ds : discover_datasets(dir)) {
    try {
      LoadedDataset ld;
      ld.name = ds.name;
      ld.points = prepare_points(load_points(ds.data.string()), pipe);
      for (const auto& lp : ds.label_files) {
        Partition ref = load_labels(lp.string());
        if (ref.n() != ld.points.n()) {
          throw ParseError(lp.string() + ": label count " +
                           std::to_string(ref.n()) + " != point count " +
                           std::to_string(ld.points.n()));
        }
        if (ref.k < 1) {
          throw ParseError(lp.string() + ": no nonzero labels");
        }
        ld.refs.push_back(std::move(ref));
      }
      out.push_back(std::move(ld));
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping dataset " << ds.name << ": " << e.what()
                << "\n";
    }
  }
  return out;
}

struct AlgOpts {
  std::string alg = "lumbermark";
  double f = 0.25;
  double G = 0.3;
  bool leaf_removal = true;
};

Partition run_alg(const SpanningTree& tree, const AlgOpts& o, int k, int M) {
  if (o.alg == "lumbermark") return lumbermark(tree, {k, o.f, M, o.leaf_removal});
  if (o.alg == "genie") return genie(tree, {k, o.G, M});
  if (o.alg == "single") return single_linkage_cut(tree, k);
  throw UsageError("unsupported algorithm for benchmark runs: " + o.alg);
}

/// Best AR over the reference labellings, clustering at each reference's
/// own cluster count.
double score_dataset(const LoadedDataset& ld, const SpanningTree& tree,
                     const AlgOpts& alg, int M) {
  double best = -1.0;
  for (const auto& ref : ld.refs) {
    const int k = std::min(ref.k, ld.points.n());
    const Partition pred = run_alg(tree, alg, k, M);
    best = std::max(best, adjusted_rand(ref, pred));
  }
  return best;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOpts {
  std::string dir;
  AlgOpts alg;
  int M = -1;
  int threads = 0;
  PipelineOpts pipe;
};

int cmd_bench(BenchOpts& o) {
  apply_threads(o.threads);
  o.pipe.M = o.M >= 1 ? o.M : default_m_for(o.alg.alg);
  const std::vector<LoadedDataset> datasets = load_datasets(o.dir, o.pipe);
  if (datasets.empty()) {
    std::cerr << "error: no usable datasets in " << o.dir << "\n";
    return 1;
  }

  std::map<std::string, double> per_dataset;
  for (const auto& ld : datasets) {
    try {
      PipelineOpts pipe = o.pipe;
      pipe.M = std::min(pipe.M, ld.points.n() - 1);
      pipe.jitter = false;  // already applied on load
      const SpanningTree tree = build_tree(ld.points, pipe, nullptr);
      per_dataset[ld.name] = score_dataset(ld, tree, o.alg, pipe.M);
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping dataset " << ld.name << ": " << e.what()
                << "\n";
    }
  }
  if (per_dataset.empty()) {
    std::cerr << "error: all datasets failed\n";
    return 1;
  }
  const ScoreReport report = aggregate(per_dataset);

  std::cerr << "dataset                          best_AR\n";
  for (const auto& [name, ar] : report.per_dataset) {
    std::fprintf(stderr, "%-32s %7.4f\n", name.c_str(), ar);
  }
  std::fprintf(stderr, "n=%zu n_bad=%d n_good=%d median=%.4f mean=%.4f\n",
               report.per_dataset.size(), report.n_bad, report.n_good,
               report.median, report.mean);

  json summary;
  summary["command"] = "bench";
  summary["algorithm"] = o.alg.alg;
  summary["M"] = o.pipe.M;
  summary["datasets"] = report.per_dataset;
  summary["count"] = report.per_dataset.size();
  summary["n_bad"] = report.n_bad;
  summary["n_good"] = report.n_good;
  summary["median"] = report.median;
  summary["mean"] = report.mean;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
  std::string dir;
  AlgOpts alg;
  std::vector<int> m_grid{5};
  std::vector<double> f_grid{0.25};
  std::vector<double> g_grid;
  bool split_balance = false;
  std::string out;
  int threads = 0;
  PipelineOpts pipe;
};

struct SweepRow {
  double prop_good = 0.0;
  double prop_bad = 0.0;
  double mean = 0.0;
  int count = 0;
};

SweepRow summarize(const std::vector<double>& ars) {
  SweepRow row;
  row.count = static_cast<int>(ars.size());
  for (const double ar : ars) {
    if (ar >= 0.95) row.prop_good += 1.0;
    if (ar < 0.8) row.prop_bad += 1.0;
    row.mean += ar;
  }
  if (row.count > 0) {
    row.prop_good /= row.count;
    row.prop_bad /= row.count;
    row.mean /= row.count;
  }
  return row;
}

int cmd_sweep(SweepOpts& o) {
  apply_threads(o.threads);
  const bool use_g = o.alg.alg == "genie";
  const std::vector<double>& param_grid = use_g ? o.g_grid : o.f_grid;
  if (o.m_grid.empty() || param_grid.empty()) {
    throw UsageError(use_g ? "sweep needs nonempty --M-grid and --G-grid"
                           : "sweep needs nonempty --M-grid and --f-grid");
  }
  const std::vector<LoadedDataset> datasets = load_datasets(o.dir, o.pipe);
  if (datasets.empty()) {
    std::cerr << "error: no usable datasets in " << o.dir << "\n";
    return 1;
  }
  // Balance split: a dataset is imbalanced when the Gini index of its
  // first reference's cluster sizes exceeds 0.2.
  std::vector<bool> imbalanced(datasets.size(), false);
  if (o.split_balance) {
    for (std::size_t i = 0; i < datasets.size(); ++i) {
      const Partition& ref = datasets[i].refs.front();
      std::vector<int> sizes(ref.k, 0);
      for (const int lbl : ref.labels) {
        if (lbl > 0) ++sizes[lbl - 1];
      }
      imbalanced[i] = gini_index(sizes) > 0.2;
    }
  }

  std::ostream* outp = &std::cout;
  std::ofstream file;
  if (!o.out.empty() && o.out != "-") {
    file.open(o.out);
    if (!file) throw std::runtime_error("cannot write file: " + o.out);
    outp = &file;
  }
  std::ostream& out = *outp;

  const char* param_name = use_g ? "G" : "f";
  out << "M," << param_name << ",prop_ge_095,prop_lt_080,mean_ar";
  if (o.split_balance) out << ",subset";
  out << "\n";

  for (const int M : o.m_grid) {
    // One tree per (dataset, M) serves all parameter cells.
    std::vector<SpanningTree> trees(datasets.size());
    for (std::size_t i = 0; i < datasets.size(); ++i) {
      PipelineOpts pipe = o.pipe;
      pipe.M = std::min(M, datasets[i].points.n() - 1);
      pipe.jitter = false;  // already applied on load
      trees[i] = build_tree(datasets[i].points, pipe, nullptr);
    }
    for (const double param : param_grid) {
      AlgOpts alg = o.alg;
      if (use_g) {
        alg.G = param;
      } else {
        alg.f = param;
      }
      std::vector<double> all, balanced, imbal;
      for (std::size_t i = 0; i < datasets.size(); ++i) {
        const int m_eff = std::min(M, datasets[i].points.n() - 1);
        const double ar = score_dataset(datasets[i], trees[i], alg, m_eff);
        all.push_back(ar);
        (imbalanced[i] ? imbal : balanced).push_back(ar);
      }
      const auto emit = [&](const std::vector<double>& ars,
                            const char* subset) {
        if (o.split_balance && ars.empty()) return;
        const SweepRow row = summarize(ars);
        out << M << "," << format_metric(param) << ","
            << format_metric(row.prop_good) << "," << format_metric(row.prop_bad)
            << "," << format_metric(row.mean);
        if (o.split_balance) out << "," << subset;
        out << "\n";
      };
      if (o.split_balance) {
        emit(all, "all");
        emit(balanced, "balanced");
        emit(imbal, "imbalanced");
      } else {
        emit(all, "all");
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MST-based clustering toolkit"};
  app.require_subcommand(1);

  ClusterOpts co;
  CLI::App* cluster = app.add_subcommand("cluster", "Cluster one dataset");
  cluster->add_option("--in", co.in, "points file")->required();
  cluster->add_option("--delimiter", co.delimiter, "field delimiter (auto)");
  cluster->add_option("--alg", co.alg,
                      "lumbermark|genie|single|dbscan-star (lumbermark)");
  cluster->add_option("--k", co.k, "number of clusters");
  cluster->add_option("--M", co.M, "smoothing parameter (per-algorithm default)");
  cluster->add_option("--f", co.f, "min cluster factor (0.25)");
  cluster->add_option("--G", co.G, "Gini threshold (0.3)");
  cluster->add_option("--eps", co.eps, "dbscan-star radius");
  cluster->add_flag("--leaf-removal,!--no-leaf-removal", co.leaf_removal,
                    "exclude tree leaves from cutting (on)");
  cluster->add_option("--out", co.out, "labels output path, '-' for stdout");
  cluster->add_option("--threads", co.threads, "thread count (0 = auto)");
  cluster->add_flag("--jitter", co.pipe.jitter, "perturb points before use");
  cluster->add_option("--jitter-eps", co.pipe.jitter_eps,
                      "jitter amplitude (0 = auto)");
  cluster->add_option("--seed", co.pipe.seed, "jitter seed");
  cluster->add_option("--mst-algo", co.pipe.mst_algo,
                      "auto|prim|boruvka|kruskal");

  MstOpts mo;
  CLI::App* mst = app.add_subcommand("mst", "Dump the spanning tree");
  mst->add_option("--in", mo.in, "points file")->required();
  mst->add_option("--delimiter", mo.delimiter, "field delimiter (auto)");
  mst->add_option("--M", mo.M, "smoothing parameter (1)");
  mst->add_option("--out", mo.out, "tree output path, '-' for stdout");
  mst->add_option("--threads", mo.threads, "thread count (0 = auto)");
  mst->add_flag("--jitter", mo.pipe.jitter, "perturb points before use");
  mst->add_option("--jitter-eps", mo.pipe.jitter_eps,
                  "jitter amplitude (0 = auto)");
  mst->add_option("--seed", mo.pipe.seed, "jitter seed");
  mst->add_option("--mst-algo", mo.pipe.mst_algo, "auto|prim|boruvka|kruskal");

  EvalOpts eo;
  CLI::App* eval = app.add_subcommand("eval", "Score predicted labels");
  eval->add_option("--pred", eo.pred, "predicted labels file")->required();
  eval->add_option("--ref", eo.refs, "reference labels file (repeatable)")
      ->required();

  BenchOpts bo;
  CLI::App* bench =
      app.add_subcommand("bench", "Score a directory of datasets");
  bench->add_option("--dir", bo.dir, "dataset directory")->required();
  bench->add_option("--alg", bo.alg.alg, "lumbermark|genie|single (lumbermark)");
  bench->add_option("--M", bo.M, "smoothing parameter (per-algorithm default)");
  bench->add_option("--f", bo.alg.f, "min cluster factor (0.25)");
  bench->add_option("--G", bo.alg.G, "Gini threshold (0.3)");
  bench->add_flag("--leaf-removal,!--no-leaf-removal", bo.alg.leaf_removal,
                  "exclude tree leaves from cutting (on)");
  bench->add_option("--threads", bo.threads, "thread count (0 = auto)");
  bench->add_flag("--jitter", bo.pipe.jitter, "perturb points before use");
  bench->add_option("--jitter-eps", bo.pipe.jitter_eps,
                    "jitter amplitude (0 = auto)");
  bench->add_option("--seed", bo.pipe.seed, "jitter seed");
  bench->add_option("--mst-algo", bo.pipe.mst_algo, "auto|prim|boruvka|kruskal");

  SweepOpts so;
  CLI::App* sweep = app.add_subcommand("sweep", "Parameter grid over datasets");
  sweep->add_option("--dir", so.dir, "dataset directory")->required();
  sweep->add_option("--alg", so.alg.alg, "lumbermark|genie (lumbermark)");
  sweep->add_option("--M-grid", so.m_grid, "smoothing parameters (5)")
      ->delimiter(',');
  sweep->add_option("--f-grid", so.f_grid, "min cluster factors (0.25)")
      ->delimiter(',');
  sweep->add_option("--G-grid", so.g_grid, "Gini thresholds")->delimiter(',');
  sweep->add_flag("--split-balance", so.split_balance,
                  "also report balanced/imbalanced subsets");
  sweep->add_option("--out", so.out, "CSV output path, '-' for stdout");
  sweep->add_option("--threads", so.threads, "thread count (0 = auto)");
  sweep->add_flag("--jitter", so.pipe.jitter, "perturb points before use");
  sweep->add_option("--jitter-eps", so.pipe.jitter_eps,
                    "jitter amplitude (0 = auto)");
  sweep->add_option("--seed", so.pipe.seed, "jitter seed");
  sweep->add_option("--mst-algo", so.pipe.mst_algo, "auto|prim|boruvka|kruskal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(cluster)) return cmd_cluster(co);
    if (app.got_subcommand(mst)) return cmd_mst(mo);
    if (app.got_subcommand(eval)) return cmd_eval(eo);
    if (app.got_subcommand(bench)) return cmd_bench(bo);
    if (app.got_subcommand(sweep)) return cmd_sweep(so);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
