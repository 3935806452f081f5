// mer: solve, generate and benchmark minimum-area enclosing rectangles with outliers.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mer/mer.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

// Writes to a file, or to standard output when the path is empty or "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw mer::Error(mer::ErrorCode::InvalidParameter, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct SolveOptions {
  std::string input;
  long long t = 0;
  std::string mode = "exact";
  double epsilon = 0.1;
  double c = 1.0;
  std::uint64_t seed = 0;
  bool general_position = false;
  std::string output;
  std::string svg;
  bool timings = false;
};

struct GenOptions {
  std::string dist;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t outliers = 0;
  std::string output;
};

struct BenchOptions {
  std::vector<std::size_t> sizes{500, 1000, 2000};
  std::vector<long long> ts{5};
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  std::string dist = "uniform-square";
  std::string report = "-";
  std::string medians;
};

int run_solve(const SolveOptions& o) {
  const mer::PointSet ps(mer::load_points(o.input));
  const bool robust = !o.general_position;
  mer::SolveReport rep;
  if (o.mode == "exact") {
    rep = mer::solve_exact(ps, o.t, robust);
  } else if (o.mode == "oracle") {
    rep = mer::solve_oracle(ps, o.t);
  } else {
    const auto params = mer::SampleParams::make(ps.size(), o.t, o.epsilon, o.c, o.seed);
    rep = mer::solve_sampled(ps, o.t, params, robust);
  }
  Sink out(o.output);
  out.stream() << mer::result_document(rep, ps.size(), o.t, o.timings).dump(2) << '\n';
  if (!o.svg.empty()) {
    Sink svg(o.svg);
    mer::write_svg(svg.stream(), ps, rep);
  }
  return 0;
}

int run_gen(const GenOptions& o) {
  const auto dist = mer::parse_distribution(o.dist);
  if (!dist) throw mer::Error(mer::ErrorCode::InvalidParameter, "unknown distribution " + o.dist);
  const auto pts = mer::generate(*dist, o.n, o.seed, o.outliers);
  Sink out(o.output);
  mer::write_points_csv(out.stream(), pts);
  return 0;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

template <class T>
T median(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  if (v.size() % 2) return v[m];
  return (v[m - 1] + v[m]) / 2;
}

int run_bench(const BenchOptions& o) {
  const auto dist = mer::parse_distribution(o.dist);
  if (!dist) throw mer::Error(mer::ErrorCode::InvalidParameter, "unknown distribution " + o.dist);
  if (o.trials == 0) throw mer::Error(mer::ErrorCode::InvalidParameter, "trials must be positive");
  Sink report(o.report);
  std::unique_ptr<Sink> medians;
  if (!o.medians.empty()) medians = std::make_unique<Sink>(o.medians);

  report.stream() << "n,t,trial,k,valid_pairs,time_valid_pairs,time_enclose,time_total,area\n";
  if (medians) medians->stream() << "n,t,trials,k,valid_pairs,time_valid_pairs,time_enclose,time_total\n";
  for (std::size_t n : o.sizes) {
    for (long long t : o.ts) {
      std::vector<double> k, vp, tv, te, tt;
      for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const std::uint64_t seed = mer::derive_seed(o.seed, n * 1000003ULL + trial);
        const mer::PointSet ps(mer::generate(*dist, n, seed));
        const mer::SolveReport rep = mer::solve_exact(ps, t, false);
        const auto& s = rep.stats;
        report.stream() << n << ',' << t << ',' << trial << ',' << s.k << ',' << s.valid_pair_count << ','
                        << fixed(s.time_valid_pairs) << ',' << fixed(s.time_enclose) << ',' << fixed(s.time_total)
                        << ',' << mer::format_coordinate(rep.rectangle.area.value) << '\n';
        k.push_back(static_cast<double>(s.k));
        vp.push_back(static_cast<double>(s.valid_pair_count));
        tv.push_back(s.time_valid_pairs);
        te.push_back(s.time_enclose);
        tt.push_back(s.time_total);
      }
      if (medians) {
        medians->stream() << n << ',' << t << ',' << o.trials << ',' << median(k) << ',' << median(vp) << ','
                          << fixed(median(tv)) << ',' << fixed(median(te)) << ',' << fixed(median(tt)) << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-area enclosing rectangle with outliers"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Solve an instance read from CSV");
  solve->add_option("input", so.input, "CSV file with x,y rows, or - for standard input")->required();
  solve->add_option("--t", so.t, "Number of points that may be left out")->required();
  solve->add_option("--mode", so.mode, "exact, oracle or sample")
      ->check(CLI::IsMember({"exact", "oracle", "sample"}));
  solve->add_option("--epsilon", so.epsilon, "Sampling accuracy in (0, 1)");
  solve->add_option("--c", so.c, "Sample size constant");
  solve->add_option("--seed", so.seed, "Sampling seed");
  auto* robust_flag = solve->add_flag("--collinear-robust", "Accept collinear points (default)");
  solve->add_flag("--general-position", so.general_position, "Reject collinear input")->excludes(robust_flag);
  solve->add_option("--output", so.output, "Result document path (default: standard output)");
  solve->add_option("--svg", so.svg, "Write an SVG plot to this path");
  solve->add_flag("--timings", so.timings, "Include phase timings in the result document");

  GenOptions go;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  gen->add_option("dist", go.dist, "uniform-square, gaussian, convex-position or grid-collinear")->required();
  gen->add_option("--n", go.n, "Number of points")->required();
  gen->add_option("--seed", go.seed, "Generator seed");
  gen->add_option("--outliers", go.outliers, "Extra far-away points");
  gen->add_option("--output", go.output, "CSV path (default: standard output)");

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "Time the exact solver on generated instances");
  bench->add_option("--sizes", bo.sizes, "Instance sizes")->delimiter(',');
  bench->add_option("--t", bo.ts, "Outlier budgets")->delimiter(',');
  bench->add_option("--trials", bo.trials, "Trials per (n, t)");
  bench->add_option("--seed", bo.seed, "Base seed");
  bench->add_option("--dist", bo.dist, "Point distribution");
  bench->add_option("--report", bo.report, "Per-trial CSV path (default: standard output)");
  bench->add_option("--medians", bo.medians, "Per-(n, t) median CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve) return run_solve(so);
    if (*gen) return run_gen(go);
    return run_bench(bo);
  } catch (const mer::Error& e) {
    std::cerr << "mer: " << e.what() << '\n';
    return e.code() == mer::ErrorCode::InvalidParameter ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "mer: " << e.what() << '\n';
    return kExitFailure;
  }
}
